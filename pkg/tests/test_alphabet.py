"""Tests for partitions, word classification and free reduction."""

import pytest

from src.domain.alphabet import (
    free_group_alphabet,
    free_reduce,
    make_group_alphabet,
    make_partitioned_alphabet,
)
from src.domain.errors import EmptyAlphabet, InvalidAlphabet, PartitionOverlap, UnknownLetter
from src.service import catalog
from tests.mocks.reference_oracles import all_words, is_well_matched, naive_reduce


@pytest.fixture
def abc():
    return make_partitioned_alphabet(["a"], ["c"], ["b"])


def test_overlapping_parts_are_rejected():
    with pytest.raises(PartitionOverlap):
        make_partitioned_alphabet(["a"], ["a"], ["b"])


def test_empty_partition_is_rejected():
    with pytest.raises(EmptyAlphabet):
        make_partitioned_alphabet([], [], [])


def test_letter_order_is_calls_internals_returns(abc):
    assert abc.letters == ("a", "c", "b")
    assert abc.word_key(("b",)) > abc.word_key(("c",))
    assert abc.word_key(("a", "a")) > abc.word_key(("b",))


def test_check_word_rejects_foreign_letters(abc):
    with pytest.raises(UnknownLetter):
        abc.check_word(("a", "z"))


@pytest.mark.parametrize(
    "word, is_mr, is_mc",
    [
        ((), True, True),
        (("a",), True, False),
        (("b",), False, True),
        (("a", "b"), True, True),
        (("b", "a"), False, False),
        (("a", "c", "a", "b"), True, False),
        (("c", "b", "a", "b"), False, True),
    ],
)
def test_classify(abc, word, is_mr, is_mc):
    profile = abc.classify(word)
    assert profile.is_mr == is_mr
    assert profile.is_mc == is_mc
    assert profile.is_wm == (is_mr and is_mc)


def test_well_matched_agrees_with_reference():
    alphabet = make_partitioned_alphabet(["a"], ["c"], ["b", "d"])
    for word in all_words(alphabet.letters, 8):
        profile = alphabet.classify(word)
        assert profile.is_wm == is_well_matched(alphabet, word)
        assert profile.is_wm == (profile.is_mr and profile.is_mc)


def test_free_group_alphabet_orders_letter_then_inverse():
    alphabet = free_group_alphabet(["a", "b"])
    assert alphabet.letters == ("a", "A", "b", "B")
    assert alphabet.generators == ("a", "b")
    assert alphabet.inv("A") == "a"


def test_padded_partition():
    base = catalog.padded_group_alphabet().base
    assert base.calls == ("a",)
    assert base.internals == ("A", "B")
    assert base.returns == ("b",)


def test_inverse_must_stay_inside_alphabet():
    base = make_partitioned_alphabet(["a"], [], [])
    with pytest.raises(InvalidAlphabet):
        make_group_alphabet(base, {"a": "A"})


def test_order_applies_to_both_letters_of_a_pair():
    base = make_partitioned_alphabet(["x"], ["y", "Y"], ["X"])
    alphabet = make_group_alphabet(base, {"x": "X", "y": "Y"}, {"x": 3})
    assert alphabet.torsion["X"] == 3
    assert not alphabet.torsion.is_torsion("Y")


def test_reduction_matches_naive_rescan():
    alphabet = free_group_alphabet(["a", "b"])
    for word in all_words(alphabet.letters, 6):
        reduced = free_reduce(alphabet, word)
        assert reduced == naive_reduce(alphabet, word)
        assert alphabet.is_reduced(reduced)


def _random_word(rng, letters, max_length):
    return tuple(rng.choice(letters) for _ in range(rng.randint(0, max_length)))


def test_reduction_is_idempotent():
    alphabet = free_group_alphabet(["a", "b"])
    for word in all_words(alphabet.letters, 8):
        assert alphabet.reduce(alphabet.reduce(word)) == alphabet.reduce(word)


def test_reduction_is_idempotent_on_long_words(rng):
    alphabet = free_group_alphabet(["a", "b"])
    for _ in range(2000):
        word = tuple(rng.choice(alphabet.letters) for _ in range(10))
        assert alphabet.reduce(alphabet.reduce(word)) == alphabet.reduce(word)


def test_reduction_respects_products(rng):
    alphabet = free_group_alphabet(["a", "b"])
    for _ in range(3000):
        u = _random_word(rng, alphabet.letters, 6)
        v = _random_word(rng, alphabet.letters, 6)
        assert alphabet.reduce(u + v) == alphabet.reduce(alphabet.reduce(u) + alphabet.reduce(v))


def test_reduction_keeps_length_parity():
    alphabet = free_group_alphabet(["a", "b"])
    for word in all_words(alphabet.letters, 8):
        assert len(alphabet.reduce(word)) % 2 == len(word) % 2


def test_power_and_inverse_word():
    alphabet = free_group_alphabet(["a", "b"])
    assert alphabet.power(("a", "b"), 2) == ("a", "b", "a", "b")
    assert alphabet.power(("a", "b"), -1) == ("B", "A")
    assert alphabet.reduce(("a", "b") + alphabet.inverse_word(("a", "b"))) == ()
    assert alphabet.exponent_sum(("a", "A", "a", "b"), "a") == 1
