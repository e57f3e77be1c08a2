"""Equations over free monoids and free groups with per-variable constraints."""

from dataclasses import dataclass, field
from typing import TYPE_CHECKING, Dict, FrozenSet, Mapping, Optional, Tuple

from .alphabet import GroupAlphabet, PartitionedAlphabet, Word, format_word
from .enums import EquationMode, TermKind

if TYPE_CHECKING:
    from ..interfaces.oracle import ILangOracle

Assignment = Dict[str, Word]


@dataclass(frozen=True)
class Term:
    """One symbol of an equation side: a constant letter, a variable or a variable inverse."""

    kind: TermKind
    symbol: str

    def __str__(self) -> str:
        if self.kind is TermKind.VARIABLE_INVERSE:
            return f"{self.symbol}^-1"
        return self.symbol


def constant(letter: str) -> Term:
    return Term(TermKind.CONSTANT, letter)


def variable(name: str) -> Term:
    return Term(TermKind.VARIABLE, name)


def variable_inverse(name: str) -> Term:
    return Term(TermKind.VARIABLE_INVERSE, name)


@dataclass(frozen=True)
class EquationSystem:
    """U = V over `constants`, with optional language constraints per variable.

    In group mode `group` supplies the inverse pairing used for reduction and
    for variable inverses; in monoid mode it is unused and may be None.
    """

    mode: EquationMode
    constants: PartitionedAlphabet
    variables: Tuple[str, ...]
    lhs: Tuple[Term, ...]
    rhs: Tuple[Term, ...]
    constraints: Mapping[str, "ILangOracle"] = field(default_factory=dict)
    bound: int = 0
    group: Optional[GroupAlphabet] = None

    def substitute(self, side: Tuple[Term, ...], assignment: Mapping[str, Word]) -> Word:
        """σ applied to one side; constants are fixed point-wise."""
        word: Tuple[str, ...] = ()
        for term in side:
            if term.kind is TermKind.CONSTANT:
                word += (term.symbol,)
            elif term.kind is TermKind.VARIABLE:
                word += tuple(assignment[term.symbol])
            else:
                if self.group is None:
                    raise ValueError("variable inverse needs a group alphabet")
                word += self.group.inverse_word(assignment[term.symbol])
        return word

    def __str__(self) -> str:
        left = " ".join(str(term) for term in self.lhs) or "ε"
        right = " ".join(str(term) for term in self.rhs) or "ε"
        return f"{left} = {right} [{self.mode.value}, bound {self.bound}]"


@dataclass(frozen=True)
class SolutionSet:
    """All solutions with every |σ(Y)| ≤ exhausted_bound, in enumeration order."""

    variables: Tuple[str, ...]
    assignments: Tuple[Assignment, ...]
    exhausted_bound: int

    def __len__(self) -> int:
        return len(self.assignments)

    def as_set(self) -> FrozenSet[Tuple[Word, ...]]:
        """Assignments as tuples in variable order, for order-free comparison."""
        return frozenset(
            tuple(tuple(a[name]) for name in self.variables) for a in self.assignments
        )

    def format_assignment(self, assignment: Assignment) -> str:
        return ", ".join(f"{name}={format_word(assignment[name])}" for name in self.variables)
