"""Closure operations checked against brute-force languages on short words."""

import pytest

from src.domain.alphabet import make_partitioned_alphabet
from src.domain.automata import BOTTOM, Dfa, Renaming, Vpa
from src.domain.enums import QuotientSide
from src.domain.errors import PartitionMismatch, PartitionViolation
from src.service import catalog
from tests.mocks.reference_oracles import all_words, language, simulate

MAX = 8


@pytest.fixture
def alphabet():
    return make_partitioned_alphabet(["a"], ["c"], ["b"])


@pytest.fixture
def anbn_cstar():
    return catalog.anbn_cstar_vpa()


@pytest.fixture
def pending(alphabet):
    """c then any number of pending calls, or a single return read on the bottom."""
    return Vpa(
        alphabet=alphabet,
        states=frozenset(["0", "1", "2"]),
        initials=frozenset(["0"]),
        accepts=frozenset(["1", "2"]),
        stack_symbols=frozenset(["g"]),
        call_transitions=frozenset([("1", "a", "1", "g")]),
        internal_transitions=frozenset([("0", "c", "1")]),
        return_transitions=frozenset([("0", "b", BOTTOM, "2")]),
    )


def _universe(alphabet):
    return set(all_words(alphabet.letters, MAX))


def test_union(engine, closure, anbn_cstar, pending):
    result = closure.union(anbn_cstar, pending)
    assert language(result, MAX) == language(anbn_cstar, MAX) | language(pending, MAX)


def test_intersection(engine, closure, anbn_cstar):
    plus_c = catalog.anbn_cstar_vpa()
    result = closure.intersection(anbn_cstar, closure.complement(plus_c))
    assert language(result, MAX) == set()
    both = closure.intersection(anbn_cstar, closure.union(anbn_cstar, plus_c))
    assert language(both, MAX) == language(anbn_cstar, MAX)


def test_intersection_with_pending_calls(closure, anbn_cstar, pending):
    result = closure.intersection(closure.star(pending), anbn_cstar)
    expected = language(closure.star(pending), MAX) & language(anbn_cstar, MAX)
    assert language(result, MAX) == expected


def test_intersection_with_an_embedded_regular_language(closure, padded):
    # a* A* b*, read with the stack ignored
    regular = Dfa(
        letters=padded.alphabet.letters,
        states=("0", "1", "2"),
        start="0",
        accepts=frozenset(["0", "1", "2"]),
        delta={("0", "a"): "0", ("0", "A"): "1", ("1", "A"): "1", ("0", "b"): "2", ("1", "b"): "2", ("2", "b"): "2"},
    )
    embedded = regular.to_vpa(padded.alphabet)
    assert language(embedded, 5) == {w for w in all_words(padded.alphabet.letters, 5) if regular.accepts_word(w)}
    assert language(closure.intersection(padded, embedded), 9) == {(), ("a", "a", "A", "b", "b")}


def test_complement(closure, alphabet, anbn_cstar, pending):
    for v in (anbn_cstar, pending):
        assert language(closure.complement(v), MAX) == _universe(alphabet) - language(v, MAX)


def test_concat(closure, anbn_cstar, pending):
    for first, second in ((anbn_cstar, pending), (pending, anbn_cstar), (anbn_cstar, anbn_cstar)):
        left, right = language(first, MAX), language(second, MAX)
        expected = {u + v for u in left for v in right if len(u + v) <= MAX}
        assert language(closure.concat(first, second), MAX) == expected


def test_concat_matches_second_returns_against_first_calls(engine, closure, alphabet):
    calls_only = Vpa(
        alphabet=alphabet,
        states=frozenset(["0"]),
        initials=frozenset(["0"]),
        accepts=frozenset(["0"]),
        stack_symbols=frozenset(["g"]),
        call_transitions=frozenset([("0", "a", "0", "g")]),
    )
    returns_only = Vpa(
        alphabet=alphabet,
        states=frozenset(["0"]),
        initials=frozenset(["0"]),
        accepts=frozenset(["0"]),
        stack_symbols=frozenset(),
        return_transitions=frozenset([("0", "b", BOTTOM, "0")]),
    )
    result = closure.concat(calls_only, returns_only)
    assert engine.accepts(result, ("a", "a", "b", "b", "b"))
    assert not engine.accepts(result, ("b", "a"))


def _in_star(accepted, word):
    splits = [True] + [False] * len(word)
    for end in range(1, len(word) + 1):
        splits[end] = any(splits[cut] and word[cut:end] in accepted for cut in range(end))
    return splits[-1]


def test_star(closure, alphabet, anbn_cstar, pending):
    for v in (anbn_cstar, pending):
        accepted = language(v, MAX)
        expected = {w for w in _universe(alphabet) if _in_star(accepted, w)}
        assert language(closure.star(v), MAX) == expected


def test_rename(engine, closure, anbn_cstar):
    target = make_partitioned_alphabet(["x"], ["z"], ["y"])
    renaming = Renaming(anbn_cstar.alphabet, target, {"a": "x", "b": "y", "c": "z"})
    result = closure.rename(anbn_cstar, renaming)
    assert engine.accepted_words(result, 5) == [renaming.image(w) for w in engine.accepted_words(anbn_cstar, 5)]


def test_rename_may_merge_letters(engine, closure):
    source = make_partitioned_alphabet(["a"], ["c", "d"], ["b"])
    v = Vpa(
        alphabet=source,
        states=frozenset(["0", "1"]),
        initials=frozenset(["0"]),
        accepts=frozenset(["1"]),
        stack_symbols=frozenset(),
        internal_transitions=frozenset([("0", "c", "1"), ("1", "d", "1")]),
    )
    target = make_partitioned_alphabet(["a"], ["c"], ["b"])
    result = closure.rename(v, Renaming(source, target, {"a": "a", "b": "b", "c": "c", "d": "c"}))
    assert engine.accepted_words(result, 3) == [("c",), ("c", "c"), ("c", "c", "c")]


def test_rename_must_respect_parts(closure, anbn_cstar):
    target = make_partitioned_alphabet(["x"], ["z"], ["y"])
    with pytest.raises(PartitionViolation):
        closure.rename(anbn_cstar, Renaming(anbn_cstar.alphabet, target, {"a": "z", "b": "y", "c": "x"}))
    with pytest.raises(PartitionViolation):
        closure.rename(anbn_cstar, Renaming(anbn_cstar.alphabet, target, {"a": "x", "b": "y"}))


def test_right_quotient(closure, alphabet, anbn_cstar):
    words = [("b",), ("b", "c")]
    result = closure.quotient_finite(anbn_cstar, words, QuotientSide.RIGHT)
    expected = {u for u in _universe(alphabet) if any(simulate(anbn_cstar, u + w) for w in words)}
    assert language(result, MAX) == expected


def test_left_quotient(closure, alphabet, anbn_cstar):
    words = [("a",), ("a", "a")]
    result = closure.quotient_finite(anbn_cstar, words, QuotientSide.LEFT)
    expected = {u for u in _universe(alphabet) if any(simulate(anbn_cstar, w + u) for w in words)}
    assert language(result, MAX) == expected


def test_left_quotient_by_rejected_prefixes_is_empty(engine, closure, anbn_cstar):
    result = closure.quotient_finite(anbn_cstar, [("b",)], QuotientSide.LEFT)
    assert engine.is_empty(result).empty


def test_equivalent(engine, closure, anbn):
    assert closure.equivalent(anbn, engine.determinize(anbn)).equivalent


def test_inequivalent_gives_shortest_counterexample(closure, anbn):
    verdict = closure.equivalent(anbn, catalog.anbn_bounded_vpa(3))
    assert not verdict.equivalent
    assert verdict.counterexample == ("a",) * 4 + ("b",) * 4
    assert verdict.in_first


def test_mixed_partitions_are_refused(closure):
    first, second = catalog.anbn_cstar_vpa(), catalog.astar_bncn_vpa()
    for operation in (closure.union, closure.intersection, closure.concat, closure.equivalent):
        with pytest.raises(PartitionMismatch):
            operation(first, second)


def _nothing(alphabet):
    return Vpa(
        alphabet=alphabet,
        states=frozenset(["0"]),
        initials=frozenset(["0"]),
        accepts=frozenset(),
        stack_symbols=frozenset(),
    )


def test_de_morgan(closure, anbn_cstar, pending):
    union_complement = closure.complement(closure.union(anbn_cstar, pending))
    both_complements = closure.intersection(closure.complement(anbn_cstar), closure.complement(pending))
    assert language(union_complement, MAX) == language(both_complements, MAX)
    intersection_complement = closure.complement(closure.intersection(anbn_cstar, pending))
    either_complement = closure.union(closure.complement(anbn_cstar), closure.complement(pending))
    assert language(intersection_complement, MAX) == language(either_complement, MAX)


def test_empty_and_universal_units(closure, alphabet, anbn_cstar, pending):
    nothing = _nothing(alphabet)
    everything = closure.complement(nothing)
    assert language(everything, MAX) == _universe(alphabet)
    for v in (anbn_cstar, pending):
        assert language(closure.union(v, nothing), MAX) == language(v, MAX)
        assert language(closure.intersection(v, everything), MAX) == language(v, MAX)
        assert language(closure.intersection(v, closure.complement(v)), MAX) == set()


def test_closure_outputs_validate_over_the_input_partition(engine, closure, alphabet, anbn_cstar, pending):
    outputs = [
        closure.union(anbn_cstar, pending),
        closure.intersection(anbn_cstar, pending),
        closure.complement(pending),
        closure.concat(pending, anbn_cstar),
        closure.star(anbn_cstar),
        closure.quotient_finite(anbn_cstar, [("b",), ("c",)], QuotientSide.RIGHT),
        closure.quotient_finite(anbn_cstar, [("a",)], QuotientSide.LEFT),
    ]
    for result in outputs:
        assert engine.validate(result).valid
        assert result.alphabet == alphabet
    target = make_partitioned_alphabet(["x"], ["z"], ["y"])
    renamed = closure.rename(anbn_cstar, Renaming(alphabet, target, {"a": "x", "b": "y", "c": "z"}))
    assert engine.validate(renamed).valid
    assert renamed.alphabet == target
