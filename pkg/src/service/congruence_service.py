"""Bounded exploration of the matched-word congruences ≡, ∼₀ and ≈.

Words are grouped by their membership signature over every admissible
context up to the context bound. Class counts are therefore lower bounds on
the true index, and they can only grow as either bound grows.
"""

import csv
import io
import itertools
import logging
from concurrent.futures import ThreadPoolExecutor
from typing import Dict, Iterator, List, Mapping, Optional, Sequence, Tuple

from typing_extensions import override

from ..config.settings import settings
from ..domain.alphabet import PartitionedAlphabet, Word
from ..domain.congruence import CongruenceTable, Context
from ..domain.enums import CongruenceKind
from ..domain.errors import InadmissibleWord
from ..interfaces.oracle import ILangOracle
from ..interfaces.service import ICongruenceExplorer

logger = logging.getLogger(__name__)


def is_admissible(alphabet: PartitionedAlphabet, kind: CongruenceKind, word: Sequence[str]) -> bool:
    """Whether `word` lies in the domain of the congruence."""
    if kind is CongruenceKind.EQUIV:
        return True
    profile = alphabet.classify(word)
    if kind is CongruenceKind.SIM0:
        return profile.is_mc
    return profile.is_wm


def admissible_words(alphabet: PartitionedAlphabet, kind: CongruenceKind, bound: int) -> List[Word]:
    return [w for w in alphabet.words(bound) if is_admissible(alphabet, kind, w)]


def contexts(alphabet: PartitionedAlphabet, kind: CongruenceKind, bound: int) -> Iterator[Context]:
    """Admissible test contexts, shortest first, then lexicographic on x·y, then by split."""
    for length in range(bound + 1):
        for letters in itertools.product(alphabet.letters, repeat=length):
            if kind is CongruenceKind.APPROX:
                for split in range(length + 1):
                    yield Context(letters[:split], letters[split:])
            elif kind is CongruenceKind.SIM0 or alphabet.classify(letters).is_mr:
                yield Context((), letters)


class CongruenceExplorer(ICongruenceExplorer):
    """Brute-force class exploration against any membership oracle."""

    def __init__(self, jobs: Optional[int] = None):
        """Initialize explorer.

        Args:
            jobs: Worker threads for signature computation; defaults to settings.jobs.
        """
        self._jobs = jobs

    def _signatures(self, oracle: ILangOracle, words: List[Word], tests: List[Context]) -> List[Tuple[bool, ...]]:
        def signature(word: Word) -> Tuple[bool, ...]:
            return tuple(oracle.contains(test.apply(word)) for test in tests)

        jobs = self._jobs or settings.jobs
        if jobs > 1 and len(words) > 1:
            with ThreadPoolExecutor(max_workers=jobs) as pool:
                return list(pool.map(signature, words))
        return [signature(word) for word in words]

    @override
    def explore_classes(
        self, oracle: ILangOracle, kind: CongruenceKind, word_bound: int, context_bound: int
    ) -> CongruenceTable:
        alphabet = oracle.alphabet
        words = admissible_words(alphabet, kind, word_bound)
        tests = list(contexts(alphabet, kind, context_bound))
        signatures = self._signatures(oracle, words, tests)

        grouped: Dict[Tuple[bool, ...], List[Word]] = {}
        for word, sig in zip(words, signatures):
            grouped.setdefault(sig, []).append(word)
        ordered = list(grouped.items())

        witnesses: Dict[Tuple[int, int], Context] = {}
        for (i, (sig_i, _)), (j, (sig_j, _)) in itertools.combinations(enumerate(ordered), 2):
            position = next(p for p, (x, y) in enumerate(zip(sig_i, sig_j)) if x != y)
            witnesses[(i, j)] = tests[position]

        table = CongruenceTable(
            kind=kind,
            word_bound=word_bound,
            context_bound=context_bound,
            classes=tuple(tuple(members) for _, members in ordered),
            witnesses=witnesses,
            contexts_tried=len(tests),
        )
        logger.info(
            f"{kind.value} on {oracle.describe()}: {table.class_count} classes "
            f"(words ≤ {word_bound}, contexts ≤ {context_bound}, {len(tests)} contexts)"
        )
        return table

    @override
    def distinguish(
        self, oracle: ILangOracle, kind: CongruenceKind, u1: Word, u2: Word, context_bound: int
    ) -> Optional[Context]:
        """First admissible context (in enumeration order) separating u1 from u2."""
        alphabet = oracle.alphabet
        u1, u2 = alphabet.check_word(u1), alphabet.check_word(u2)
        for word in (u1, u2):
            if not is_admissible(alphabet, kind, word):
                raise InadmissibleWord(word, kind)
        if u1 == u2:
            return None
        for test in contexts(alphabet, kind, context_bound):
            if oracle.contains(test.apply(u1)) != oracle.contains(test.apply(u2)):
                logger.debug(f"{test} separates {u1} and {u2}")
                return test
        return None

    @override
    def growth_profile(self, oracle: ILangOracle, kind: CongruenceKind, max_bound: int) -> List[int]:
        """Class counts for word bounds 1..max_bound, with context bound = word bound + 2."""
        if max_bound < 1:
            raise ValueError("max_bound must be at least 1")
        return [
            self.explore_classes(oracle, kind, bound, bound + 2).class_count
            for bound in range(1, max_bound + 1)
        ]


def profiles_to_csv(profiles: Mapping[CongruenceKind, Sequence[int]]) -> str:
    """Plot-ready CSV: one row per word bound, one column per congruence."""
    kinds = list(profiles)
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(["bound"] + [kind.value for kind in kinds])
    rows = max((len(p) for p in profiles.values()), default=0)
    for index in range(rows):
        writer.writerow(
            [index + 1] + [profiles[kind][index] if index < len(profiles[kind]) else "" for kind in kinds]
        )
    return buffer.getvalue()
