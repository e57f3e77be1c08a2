"""Tests for runs, validation, enumeration, determinization and emptiness."""

from dataclasses import replace

import pytest

from src.domain.alphabet import make_partitioned_alphabet
from src.domain.automata import BOTTOM, Vpa
from src.domain.enums import IssueKind
from src.domain.errors import InvalidAutomaton, UnknownLetter
from src.service import catalog
from tests.mocks.reference_oracles import (
    accepts_within,
    all_words,
    language,
    pumping_bound,
    same_language_up_to,
    simulate,
)


def _padded_family(max_length):
    words = []
    n = 0
    while 5 * n <= max_length:
        words.append(("a", "a", "A") * n + ("b",) * (2 * n))
        n += 1
    return words


@pytest.fixture
def contains_c():
    """Words with at least one c; the guess of which c is nondeterministic."""
    alphabet = make_partitioned_alphabet(["a"], ["c"], ["b"])
    return Vpa(
        alphabet=alphabet,
        states=frozenset(["0", "1"]),
        initials=frozenset(["0"]),
        accepts=frozenset(["1"]),
        stack_symbols=frozenset(["g"]),
        call_transitions=frozenset([("0", "a", "0", "g"), ("1", "a", "1", "g")]),
        internal_transitions=frozenset([("0", "c", "0"), ("0", "c", "1"), ("1", "c", "1")]),
        return_transitions=frozenset([
            ("0", "b", "g", "0"),
            ("1", "b", "g", "1"),
            ("0", "b", BOTTOM, "0"),
            ("1", "b", BOTTOM, "1"),
        ]),
    )


def test_padded_is_valid_and_deterministic(engine, padded):
    assert engine.validate(padded).valid
    assert engine.is_deterministic(padded)


def test_padded_language(engine, padded):
    assert engine.accepted_words(padded, 10) == _padded_family(10)


def test_padded_agrees_with_reference_simulation(engine, padded):
    for word in all_words(padded.alphabet.letters, 6):
        assert engine.accepts(padded, word) == simulate(padded, word)


def test_run_trace_follows_the_stack(engine, padded):
    result = engine.run(padded, ("a", "a", "A", "b", "b"), with_trace=True)
    assert result.accepted
    heights = [config.height for config in result.trace]
    assert heights == [0, 1, 2, 2, 1, 0]
    assert result.trace[-1].state == "p7"


def test_return_on_bottom_reads_without_popping(engine):
    alphabet = make_partitioned_alphabet([], [], ["b"])
    v = Vpa(
        alphabet=alphabet,
        states=frozenset(["q"]),
        initials=frozenset(["q"]),
        accepts=frozenset(["q"]),
        stack_symbols=frozenset(),
        return_transitions=frozenset([("q", "b", BOTTOM, "q")]),
    )
    result = engine.run(v, ("b", "b", "b"))
    assert result.accepted
    assert {config.stack for config in result.final_configs} == {(BOTTOM,)}


def test_missing_transitions_block(engine, anbn):
    assert not engine.accepts(anbn, ("b", "a"))
    assert not engine.accepts(anbn, ("a", "b", "b"))
    assert engine.run(anbn, ("b", "a")).final_configs == frozenset()


def test_run_rejects_foreign_letters(engine, anbn):
    with pytest.raises(UnknownLetter):
        engine.run(anbn, ("a", "z"))


def test_validate_reports_every_problem(engine, anbn):
    broken = replace(
        anbn,
        call_transitions=anbn.call_transitions | {("s0", "a", "s9", BOTTOM), ("s0", "b", "s1", "#")},
    )
    kinds = engine.validate(broken).kinds()
    assert IssueKind.BOTTOM_PUSHED in kinds
    assert IssueKind.UNKNOWN_STATE in kinds
    assert IssueKind.VISIBILITY_BROKEN in kinds
    with pytest.raises(InvalidAutomaton):
        engine.ensure_valid(broken)


def test_validate_reports_missing_initial_state(engine, anbn):
    assert IssueKind.NO_INITIAL_STATE in engine.validate(replace(anbn, initials=frozenset())).kinds()


def test_determinize_preserves_language(engine, contains_c):
    assert not engine.is_deterministic(contains_c)
    det = engine.determinize(contains_c)
    assert engine.is_deterministic(det)
    assert engine.is_complete(det)
    assert same_language_up_to(det, contains_c, 12)


def test_determinize_of_nondeterministic_union(engine, closure, anbn):
    union = closure.union(anbn, catalog.anbn_bounded_vpa(2))
    det = engine.determinize(union)
    assert engine.is_deterministic(det)
    assert same_language_up_to(det, anbn, 12)


def test_complete_adds_rejecting_sink(engine, anbn):
    completed = engine.complete(anbn)
    assert engine.is_complete(completed)
    assert engine.is_deterministic(completed)
    assert "sink" in completed.states
    assert "sink" not in completed.accepts
    assert language(completed, 6) == language(anbn, 6)


def test_emptiness_finds_shortest_witness(engine, anbn):
    assert engine.is_empty(anbn).witness == ()
    assert engine.is_empty(replace(anbn, accepts=frozenset(["s3"]))).witness == ("a", "b")


def test_emptiness_witness_may_leave_calls_pending(engine, anbn):
    verdict = engine.is_empty(replace(anbn, accepts=frozenset(["s1"])))
    assert not verdict.empty
    assert verdict.witness == ("a",)


def test_emptiness_through_bottom_returns(engine):
    alphabet = make_partitioned_alphabet(["a"], [], ["b"])
    v = Vpa(
        alphabet=alphabet,
        states=frozenset(["0", "1", "2"]),
        initials=frozenset(["0"]),
        accepts=frozenset(["2"]),
        stack_symbols=frozenset(["g"]),
        call_transitions=frozenset([("1", "a", "2", "g")]),
        return_transitions=frozenset([("0", "b", BOTTOM, "1")]),
    )
    assert engine.is_empty(v).witness == ("b", "a")


def test_empty_language(engine, anbn):
    assert engine.is_empty(replace(anbn, accepts=frozenset())).empty
    unreachable = replace(anbn, accepts=frozenset(["s9"]), states=anbn.states | {"s9"})
    assert engine.is_empty(unreachable).empty
    assert language(unreachable, 6) == set()


def test_padded_witness_is_epsilon(engine, padded):
    assert engine.is_empty(padded).witness == ()
    shifted = replace(padded, accepts=frozenset(["p7"]))
    assert engine.is_empty(shifted).witness == ("a", "a", "A", "b", "b")


@pytest.mark.parametrize("depth", [0, 1, 2, 3])
def test_track_stack_top_keeps_language(engine, padded, depth):
    tracked = engine.track_stack_top(padded, depth)
    assert engine.accepted_words(tracked, 10) == engine.accepted_words(padded, 10)


def test_track_stack_top_records_symbols(engine, anbn):
    tracked = engine.track_stack_top(anbn, 2)
    tops = {state[1] for state in tracked.states}
    assert (BOTTOM,) in tops
    assert ("$", "#") in tops


def test_normalize_gives_short_names(engine, padded):
    normal = engine.normalize(engine.determinize(padded))
    assert all(isinstance(q, str) and q.startswith("q") for q in normal.states)
    assert all(isinstance(g, str) and g.startswith("s") for g in normal.stack_symbols)
    assert engine.accepted_words(normal, 10) == engine.accepted_words(padded, 10)


def _suite(closure):
    anbn = catalog.anbn_vpa()
    return {
        "padded": catalog.padded_vpa(),
        "anbn": anbn,
        "anbn-le3": catalog.anbn_bounded_vpa(3),
        "anbn-cstar": catalog.anbn_cstar_vpa(),
        "astar-bncn": catalog.astar_bncn_vpa(),
        "anbn-union": closure.union(anbn, catalog.anbn_bounded_vpa(2)),
    }


@pytest.mark.parametrize("name", ["padded", "anbn", "anbn-le3", "anbn-cstar", "astar-bncn", "anbn-union"])
def test_determinize_agrees_up_to_twelve(engine, closure, name):
    v = _suite(closure)[name]
    det = engine.determinize(v)
    assert engine.is_deterministic(det)
    assert same_language_up_to(det, v, 12)


@pytest.mark.parametrize("name", ["padded", "anbn", "anbn-cstar", "anbn-union"])
def test_stack_height_follows_unmatched_calls(engine, closure, name):
    v = _suite(closure)[name]
    for word in engine.accepted_words(v, 10):
        trace = engine.run(v, word, with_trace=True).trace
        for cut, config in enumerate(trace):
            assert config.height == v.alphabet.classify(word[:cut]).unmatched_calls


@pytest.mark.parametrize("name", ["padded", "anbn", "anbn-cstar", "anbn-union"])
def test_well_matched_factors_restore_the_stack(engine, closure, name):
    v = _suite(closure)[name]
    for word in engine.accepted_words(v, 10):
        trace = engine.run(v, word, with_trace=True).trace
        for start in range(len(word) + 1):
            for end in range(start, len(word) + 1):
                if v.alphabet.classify(word[start:end]).is_wm:
                    assert trace[start].stack == trace[end].stack


def test_bottom_returns_keep_the_stack_at_bottom(engine):
    alphabet = make_partitioned_alphabet(["a"], [], ["b"])
    v = Vpa(
        alphabet=alphabet,
        states=frozenset(["q"]),
        initials=frozenset(["q"]),
        accepts=frozenset(["q"]),
        stack_symbols=frozenset(["g"]),
        call_transitions=frozenset([("q", "a", "q", "g")]),
        return_transitions=frozenset([("q", "b", "g", "q"), ("q", "b", BOTTOM, "q")]),
    )
    for word in all_words(alphabet.letters, 8):
        trace = engine.run(v, word, with_trace=True).trace
        for cut, config in enumerate(trace):
            assert config.height == alphabet.classify(word[:cut]).unmatched_calls


def _emptiness_cases(anbn, padded, contains_c):
    bottom_first = Vpa(
        alphabet=make_partitioned_alphabet(["a"], [], ["b"]),
        states=frozenset(["0", "1", "2"]),
        initials=frozenset(["0"]),
        accepts=frozenset(["2"]),
        stack_symbols=frozenset(["g"]),
        call_transitions=frozenset([("1", "a", "2", "g")]),
        return_transitions=frozenset([("0", "b", BOTTOM, "1")]),
    )
    return [
        anbn,
        replace(anbn, accepts=frozenset(["s3"])),
        replace(anbn, accepts=frozenset(["s2"])),
        replace(anbn, accepts=frozenset()),
        padded,
        replace(padded, accepts=frozenset(["p7"])),
        replace(padded, accepts=frozenset(["p5"])),
        replace(padded, accepts=frozenset(["p6"])),
        contains_c,
        replace(contains_c, accepts=frozenset()),
        bottom_first,
        replace(bottom_first, call_transitions=frozenset()),
    ]


def test_emptiness_agrees_with_search_up_to_the_pumping_bound(engine, anbn, padded, contains_c):
    for v in _emptiness_cases(anbn, padded, contains_c):
        verdict = engine.is_empty(v)
        assert verdict.empty == (not accepts_within(v, pumping_bound(v)))
        if not verdict.empty:
            assert len(verdict.witness) <= pumping_bound(v)
            assert simulate(v, verdict.witness)
