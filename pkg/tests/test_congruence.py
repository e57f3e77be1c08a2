"""Tests for bounded congruence exploration."""

import pytest

from src.domain.congruence import Context
from src.domain.enums import CongruenceKind
from src.domain.errors import InadmissibleWord
from src.service import catalog
from src.service.congruence_service import (
    CongruenceExplorer,
    admissible_words,
    contexts,
    is_admissible,
    profiles_to_csv,
)
from src.service.oracles import VpaOracle


@pytest.fixture
def anbn_oracle(engine, anbn):
    return VpaOracle(engine, anbn, name="anbn")


@pytest.fixture
def wpz():
    return catalog.wp_z_oracle()


def test_admissible_domains(anbn):
    alphabet = anbn.alphabet
    assert is_admissible(alphabet, CongruenceKind.EQUIV, ("b", "a"))
    assert is_admissible(alphabet, CongruenceKind.SIM0, ("b", "a", "b"))
    assert not is_admissible(alphabet, CongruenceKind.SIM0, ("a",))
    assert not is_admissible(alphabet, CongruenceKind.APPROX, ("b", "a", "b"))
    assert admissible_words(alphabet, CongruenceKind.APPROX, 3) == [(), ("a", "b")]


def test_equiv_contexts_are_matched_on_returns(anbn):
    for context in contexts(anbn.alphabet, CongruenceKind.EQUIV, 4):
        assert context.left == ()
        assert anbn.alphabet.classify(context.right).is_mr


def test_approx_contexts_cover_every_split(anbn):
    found = list(contexts(anbn.alphabet, CongruenceKind.APPROX, 1))
    assert found == [
        Context((), ()),
        Context((), ("a",)),
        Context(("a",), ()),
        Context((), ("b",)),
        Context(("b",), ()),
    ]


def test_wp_z_sim0_grows_linearly(explorer, wpz):
    assert explorer.growth_profile(wpz, CongruenceKind.SIM0, 6) == [2, 3, 4, 5, 6, 7]


@pytest.mark.parametrize(
    "kind, expected",
    [
        (CongruenceKind.SIM0, [2, 3, 3, 3, 3]),
        (CongruenceKind.EQUIV, [2, 3, 3, 3, 3]),
        (CongruenceKind.APPROX, [1, 2, 2, 3, 3]),
    ],
)
def test_anbn_profiles_stabilise_at_three(explorer, anbn_oracle, kind, expected):
    assert explorer.growth_profile(anbn_oracle, kind, 5) == expected


def test_witnesses_separate_representatives(explorer, anbn_oracle):
    table = explorer.explore_classes(anbn_oracle, CongruenceKind.APPROX, 4, 4)
    representatives = table.representatives
    for (i, j), context in table.witnesses.items():
        assert anbn_oracle.contains(context.apply(representatives[i])) != anbn_oracle.contains(
            context.apply(representatives[j])
        )
    assert len(table.witnesses) == table.class_count * (table.class_count - 1) // 2


def test_classes_partition_admissible_words(explorer, anbn_oracle):
    table = explorer.explore_classes(anbn_oracle, CongruenceKind.SIM0, 4, 4)
    members = [word for cls in table.classes for word in cls]
    assert sorted(members) == sorted(admissible_words(anbn_oracle.alphabet, CongruenceKind.SIM0, 4))
    assert table.class_of(("a", "b")) == table.class_of(("a", "a", "b", "b"))
    assert table.class_of(()) != table.class_of(("a", "b"))


def test_class_count_grows_with_context_bound(explorer, wpz):
    counts = [explorer.explore_classes(wpz, CongruenceKind.SIM0, 4, bound).class_count for bound in range(5)]
    assert counts == sorted(counts)
    assert counts[0] == 2


def test_parallel_exploration_matches_serial(wpz):
    serial = CongruenceExplorer(jobs=1).explore_classes(wpz, CongruenceKind.SIM0, 5, 7)
    parallel = CongruenceExplorer(jobs=4).explore_classes(wpz, CongruenceKind.SIM0, 5, 7)
    assert serial.classes == parallel.classes


def test_distinguish_needs_a_right_context_of_internals(explorer):
    oracle = catalog.anb2n_oracle()
    context = explorer.distinguish(oracle, CongruenceKind.EQUIV, ("a",), ("a", "a"), 3)
    assert context == Context((), ("b", "b"))


def test_distinguish_returns_none_for_congruent_words(explorer, anbn_oracle):
    assert explorer.distinguish(anbn_oracle, CongruenceKind.SIM0, ("a", "b"), ("a", "a", "b", "b"), 5) is None
    assert explorer.distinguish(anbn_oracle, CongruenceKind.SIM0, ("b",), ("b",), 5) is None


def test_distinguish_rejects_inadmissible_words(explorer, anbn_oracle):
    with pytest.raises(InadmissibleWord):
        explorer.distinguish(anbn_oracle, CongruenceKind.SIM0, ("a",), ("b",), 3)


def test_profiles_to_csv():
    text = profiles_to_csv({CongruenceKind.SIM0: [2, 3], CongruenceKind.APPROX: [1, 2]})
    assert text == "bound,sim0,approx\n1,2,1\n2,3,2\n"


def test_growth_profile_needs_positive_bound(explorer, wpz):
    with pytest.raises(ValueError):
        explorer.growth_profile(wpz, CongruenceKind.SIM0, 0)


@pytest.mark.parametrize("kind", list(CongruenceKind))
def test_anbn_class_counts_hold_from_six_to_ten(explorer, anbn_oracle, kind):
    counts = [explorer.explore_classes(anbn_oracle, kind, bound, 6).class_count for bound in range(6, 11)]
    assert counts == [3] * 5


def test_wp_z_sim0_keeps_growing_through_eight(explorer, wpz):
    profile = explorer.growth_profile(wpz, CongruenceKind.SIM0, 8)
    assert all(earlier < later for earlier, later in zip(profile, profile[1:]))
    for bound, count in enumerate(profile, start=1):
        assert count >= bound + 1


@pytest.mark.parametrize("i, j", [(i, j) for j in range(2, 7) for i in range(1, j)])
def test_powers_of_a_are_separated_by_b_suffixes(explorer, i, j):
    oracle = catalog.anb2n_oracle()
    context = explorer.distinguish(oracle, CongruenceKind.EQUIV, ("a",) * i, ("a",) * j, 2 * i)
    assert context == Context((), ("b",) * (2 * i))


@pytest.mark.parametrize("oracle_name", ["anbn", "wpz"])
def test_approx_refines_equiv_on_well_matched_words(explorer, anbn_oracle, wpz, oracle_name):
    oracle = anbn_oracle if oracle_name == "anbn" else wpz
    approx = explorer.explore_classes(oracle, CongruenceKind.APPROX, 6, 6)
    equiv = explorer.explore_classes(oracle, CongruenceKind.EQUIV, 6, 6)
    for cls in approx.classes:
        assert len({equiv.class_of(word) for word in cls}) == 1
