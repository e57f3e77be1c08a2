"""Membership oracles backed by automata, finite sets, groups and rules."""

import logging
import threading
from typing import Callable, Dict, Iterable, Sequence

from typing_extensions import override

from ..domain.alphabet import GroupAlphabet, Letter, PartitionedAlphabet, Word
from ..domain.automata import Dfa, Vpa
from ..domain.errors import PartitionMismatch
from ..domain.graphs import CoreGraph
from ..domain.groups import CayleyTable
from ..interfaces.oracle import ILangOracle
from ..interfaces.service import IStallingsService, IVpaEngine

logger = logging.getLogger(__name__)


class VpaOracle(ILangOracle):
    """L(v), with answers cached per word."""

    def __init__(self, engine: IVpaEngine, vpa: Vpa, name: str = "vpa"):
        self._engine = engine
        self._vpa = vpa
        self._name = name
        self._cache: Dict[Word, bool] = {}
        self._lock = threading.Lock()

    @property
    @override
    def alphabet(self) -> PartitionedAlphabet:
        return self._vpa.alphabet

    @property
    def vpa(self) -> Vpa:
        return self._vpa

    @override
    def contains(self, word: Sequence[Letter]) -> bool:
        key = tuple(word)
        with self._lock:
            cached = self._cache.get(key)
        if cached is None:
            cached = self._engine.accepts(self._vpa, key)
            with self._lock:
                self._cache[key] = cached
        return cached

    @override
    def describe(self) -> str:
        return f"L({self._name})"


class DfaOracle(ILangOracle):
    """L(d) for a plain DFA over the letters of `alphabet`."""

    def __init__(self, dfa: Dfa, alphabet: PartitionedAlphabet):
        self._dfa = dfa
        self._alphabet = alphabet

    @property
    @override
    def alphabet(self) -> PartitionedAlphabet:
        return self._alphabet

    @override
    def contains(self, word: Sequence[Letter]) -> bool:
        return self._dfa.accepts_word(word)


class FiniteOracle(ILangOracle):
    """A finite set of words."""

    def __init__(self, alphabet: PartitionedAlphabet, words: Iterable[Sequence[Letter]]):
        self._alphabet = alphabet
        self._words = frozenset(alphabet.check_word(w) for w in words)

    @property
    @override
    def alphabet(self) -> PartitionedAlphabet:
        return self._alphabet

    @override
    def contains(self, word: Sequence[Letter]) -> bool:
        return tuple(word) in self._words

    @override
    def describe(self) -> str:
        return f"finite({len(self._words)} words)"


class RuleOracle(ILangOracle):
    """A programmatic predicate, e.g. a family like {aⁿb²ⁿ}."""

    def __init__(self, alphabet: PartitionedAlphabet, predicate: Callable[[Word], bool], name: str = "rule"):
        self._alphabet = alphabet
        self._predicate = predicate
        self._name = name

    @property
    @override
    def alphabet(self) -> PartitionedAlphabet:
        return self._alphabet

    @override
    def contains(self, word: Sequence[Letter]) -> bool:
        return bool(self._predicate(tuple(word)))

    @override
    def describe(self) -> str:
        return self._name


class ExponentSumOracle(ILangOracle):
    """Word problem of the free abelian group on the generators: every exponent sum is zero.

    With a single generator this is WP(ℤ).
    """

    def __init__(self, alphabet: GroupAlphabet):
        self._group = alphabet

    @property
    @override
    def alphabet(self) -> PartitionedAlphabet:
        return self._group.base

    @override
    def contains(self, word: Sequence[Letter]) -> bool:
        return all(self._group.exponent_sum(word, x) == 0 for x in self._group.generators)

    @override
    def describe(self) -> str:
        return f"WP(Z^{len(self._group.generators)})"


class CayleyOracle(ILangOracle):
    """WP(G, X) of a finite group given by its Cayley table."""

    def __init__(self, table: CayleyTable):
        self._table = table

    @property
    @override
    def alphabet(self) -> PartitionedAlphabet:
        return self._table.alphabet.base

    @override
    def contains(self, word: Sequence[Letter]) -> bool:
        return self._table.is_identity(word)

    @override
    def describe(self) -> str:
        return f"WP(G), |G|={len(self._table.elements)}"


class SubgroupOracle(ILangOracle):
    """π⁻¹(H) for a subgroup H given by its core graph."""

    def __init__(self, stallings: IStallingsService, graph: CoreGraph):
        self._stallings = stallings
        self._graph = graph

    @property
    @override
    def alphabet(self) -> PartitionedAlphabet:
        return self._graph.alphabet.base

    @override
    def contains(self, word: Sequence[Letter]) -> bool:
        return self._stallings.subgroup_membership(self._graph, word)


class PositiveWordsOracle(ILangOracle):
    """X*: words using generators only, never inverses."""

    def __init__(self, alphabet: GroupAlphabet):
        self._group = alphabet

    @property
    @override
    def alphabet(self) -> PartitionedAlphabet:
        return self._group.base

    @override
    def contains(self, word: Sequence[Letter]) -> bool:
        return self._group.is_positive(word)

    @override
    def describe(self) -> str:
        return "positive words"


class ReducedImageOracle(ILangOracle):
    """r(L): the reduced forms of the words of L, with L enumerated up to `source_bound`.

    Exact for every word w with |w| small enough that all preimages of w in
    L are no longer than `source_bound`; callers pick the bound accordingly.
    """

    def __init__(self, engine: IVpaEngine, vpa: Vpa, alphabet: GroupAlphabet, source_bound: int):
        if not alphabet.base.same_partition(vpa.alphabet):
            raise PartitionMismatch(alphabet.base, vpa.alphabet)
        self._group = alphabet
        self._members = frozenset(alphabet.reduce(w) for w in engine.accepted_words(vpa, source_bound))
        logger.info(f"Reduced image holds {len(self._members)} words from sources up to length {source_bound}")

    @property
    @override
    def alphabet(self) -> PartitionedAlphabet:
        return self._group.base

    @property
    def members(self) -> frozenset:
        return self._members

    @override
    def contains(self, word: Sequence[Letter]) -> bool:
        return tuple(word) in self._members

    @override
    def describe(self) -> str:
        return "r(L)"


class IntersectionOracle(ILangOracle):
    """Membership in every one of several oracles over the same partition."""

    def __init__(self, *oracles: ILangOracle):
        if not oracles:
            raise ValueError("need at least one oracle")
        first = oracles[0].alphabet
        for oracle in oracles[1:]:
            if not oracle.alphabet.same_partition(first):
                raise PartitionMismatch(first, oracle.alphabet)
        self._oracles = oracles

    @property
    @override
    def alphabet(self) -> PartitionedAlphabet:
        return self._oracles[0].alphabet

    @override
    def contains(self, word: Sequence[Letter]) -> bool:
        return all(oracle.contains(word) for oracle in self._oracles)

    @override
    def describe(self) -> str:
        return " ∩ ".join(oracle.describe() for oracle in self._oracles)


class ExtendedOracle(ILangOracle):
    """An oracle read over a larger alphabet: words using foreign letters are rejected."""

    def __init__(self, oracle: ILangOracle, alphabet: PartitionedAlphabet):
        inner = oracle.alphabet
        for letter in inner.letters:
            if letter not in alphabet or alphabet.kind_of(letter) is not inner.kind_of(letter):
                raise PartitionMismatch(inner, alphabet)
        self._oracle = oracle
        self._alphabet = alphabet

    @property
    @override
    def alphabet(self) -> PartitionedAlphabet:
        return self._alphabet

    @override
    def contains(self, word: Sequence[Letter]) -> bool:
        inner = self._oracle.alphabet
        return all(letter in inner for letter in word) and self._oracle.contains(word)

    @override
    def describe(self) -> str:
        return self._oracle.describe()


def universal_oracle(alphabet: PartitionedAlphabet) -> ILangOracle:
    """Σ*."""
    return RuleOracle(alphabet, lambda word: True, name="Σ*")
