"""Bounded search for solutions of equations in free monoids and free groups."""

import itertools
import logging
from concurrent.futures import ThreadPoolExecutor
from typing import Dict, List, Optional, Sequence

from typing_extensions import override

from ..config.settings import settings
from ..domain.alphabet import GroupAlphabet, Word, free_group_alphabet
from ..domain.enums import EquationMode, TermKind
from ..domain.equations import Assignment, EquationSystem, SolutionSet
from ..domain.errors import PartitionMismatch, UnknownLetter
from ..interfaces.oracle import ILangOracle
from ..interfaces.service import IEquationSolver
from .oracles import ExtendedOracle, IntersectionOracle, PositiveWordsOracle

logger = logging.getLogger(__name__)


class EquationSolver(IEquationSolver):
    """Exhaustive search over all substitutions up to the system's bound."""

    def __init__(self, jobs: Optional[int] = None):
        self._jobs = jobs

    def _check(self, system: EquationSystem) -> None:
        declared = set(system.variables)
        for term in system.lhs + system.rhs:
            if term.kind is TermKind.CONSTANT:
                if term.symbol not in system.constants:
                    raise UnknownLetter(term.symbol)
            elif term.symbol not in declared:
                raise ValueError(f"undeclared variable {term.symbol!r}")
            if term.kind is TermKind.VARIABLE_INVERSE and system.mode is not EquationMode.GROUP:
                raise ValueError("variable inverses need group mode")
        for name, oracle in system.constraints.items():
            if name not in declared:
                raise ValueError(f"constraint on undeclared variable {name!r}")
            if not oracle.alphabet.same_partition(system.constants):
                raise PartitionMismatch(system.constants, oracle.alphabet)
        if system.mode is EquationMode.GROUP and system.group is None:
            raise ValueError("group mode needs a group alphabet")
        if system.bound < 0:
            raise ValueError("bound must be non-negative")

    def _candidates(self, system: EquationSystem, name: str) -> List[Word]:
        """Values for one variable, shortest first, constraint applied."""
        words = system.constants.words(system.bound)
        if system.mode is EquationMode.GROUP:
            words = (w for w in words if system.group.is_reduced(w))
        oracle: Optional[ILangOracle] = system.constraints.get(name)
        if oracle is None:
            return list(words)
        return [w for w in words if oracle.contains(w)]

    def _solves(self, system: EquationSystem, assignment: Assignment) -> bool:
        left = system.substitute(system.lhs, assignment)
        right = system.substitute(system.rhs, assignment)
        if system.mode is EquationMode.GROUP:
            return system.group.reduce(left) == system.group.reduce(right)
        return left == right

    def _search(
        self, system: EquationSystem, first: Word, rest: Sequence[List[Word]]
    ) -> List[Assignment]:
        found: List[Assignment] = []
        for values in itertools.product(*rest):
            assignment: Dict[str, Word] = dict(zip(system.variables, (first,) + values))
            if self._solves(system, assignment):
                found.append(assignment)
        return found

    @override
    def solve_bounded(self, system: EquationSystem) -> SolutionSet:
        """Every assignment with |σ(Y)| ≤ bound satisfying the equation and the constraints.

        Group mode ranges over reduced words only, so constraints are read on
        the reduced representative.
        """
        self._check(system)
        if not system.variables:
            assignments = [{}] if self._solves(system, {}) else []
            return SolutionSet((), tuple(assignments), system.bound)

        candidates = [self._candidates(system, name) for name in system.variables]
        first, rest = candidates[0], candidates[1:]
        jobs = self._jobs or settings.jobs
        if jobs > 1 and len(first) > 1:
            with ThreadPoolExecutor(max_workers=jobs) as pool:
                parts = list(pool.map(lambda w: self._search(system, w, rest), first))
        else:
            parts = [self._search(system, w, rest) for w in first]

        assignments = [a for part in parts for a in part]
        key = system.constants.word_key
        assignments.sort(key=lambda a: tuple(key(a[name]) for name in system.variables))
        solutions = SolutionSet(system.variables, tuple(assignments), system.bound)
        logger.info(f"{system}: {len(solutions)} solution(s)")
        return solutions

    def _inverse_spelling(self, system: EquationSystem) -> Dict[str, str]:
        letters = system.constants.letters
        swapped = {x: x.swapcase() for x in letters}
        if len(set(swapped.values()) | set(letters)) == 2 * len(letters):
            return swapped
        return {x: x + settings.inverse_suffix for x in letters}

    @override
    def encode_monoid_to_group(self, system: EquationSystem) -> EquationSystem:
        """The same equation over F(X), each variable constrained to X* as well.

        Inverse letters are internals, so the alphabet stays a refinement of
        the constant partition and positive-word constraints remain visibly
        pushdown.
        """
        if system.mode is not EquationMode.MONOID:
            raise ValueError("encoding expects a monoid-mode system")
        self._check(system)
        alphabet = system.constants
        group: GroupAlphabet = free_group_alphabet(
            alphabet.letters,
            calls=alphabet.calls,
            returns=alphabet.returns,
            inverse_of=self._inverse_spelling(system),
        )
        positive = PositiveWordsOracle(group)
        constraints: Dict[str, ILangOracle] = {}
        for name in system.variables:
            original = system.constraints.get(name)
            if original is None:
                constraints[name] = positive
            else:
                constraints[name] = IntersectionOracle(positive, ExtendedOracle(original, group.base))
        encoded = EquationSystem(
            mode=EquationMode.GROUP,
            constants=group.base,
            variables=system.variables,
            lhs=system.lhs,
            rhs=system.rhs,
            constraints=constraints,
            bound=system.bound,
            group=group,
        )
        logger.info(f"Encoded into the free group over {group}")
        return encoded
