"""Automaton value types: visibly pushdown automata and plain DFAs.

Transitions are stored as the tuples the file format lists:

- call:     (state, letter, target, pushed symbol)
- internal: (state, letter, target)
- return:   (state, letter, popped symbol, target)

The popped symbol of a return may be the bottom symbol ⊥, which is read but
never removed. There is no ε key anywhere, so ε-moves cannot be expressed.
"""

from collections import defaultdict
from dataclasses import dataclass, field
from functools import cached_property
from typing import Dict, FrozenSet, Hashable, List, Mapping, Optional, Sequence, Tuple

from .alphabet import GroupAlphabet, Letter, PartitionedAlphabet, Word, format_word
from .enums import IssueKind, LetterKind
from .ordering import canonical_sorted

State = Hashable
StackSymbol = Hashable

BOTTOM = "⊥"

CallTransition = Tuple[State, Letter, State, StackSymbol]
InternalTransition = Tuple[State, Letter, State]
ReturnTransition = Tuple[State, Letter, StackSymbol, State]


@dataclass(frozen=True)
class Vpa:
    """A (possibly nondeterministic) visibly pushdown automaton.

    Acceptance is by final state only; the stack may be non-empty.
    Missing transitions block the run.
    """

    alphabet: PartitionedAlphabet
    states: FrozenSet[State]
    initials: FrozenSet[State]
    accepts: FrozenSet[State]
    stack_symbols: FrozenSet[StackSymbol]
    call_transitions: FrozenSet[CallTransition] = frozenset()
    internal_transitions: FrozenSet[InternalTransition] = frozenset()
    return_transitions: FrozenSet[ReturnTransition] = frozenset()
    bottom: StackSymbol = BOTTOM

    @cached_property
    def call_map(self) -> Dict[Tuple[State, Letter], List[Tuple[State, StackSymbol]]]:
        table: Dict[Tuple[State, Letter], List[Tuple[State, StackSymbol]]] = defaultdict(list)
        for source, letter, target, pushed in canonical_sorted(self.call_transitions):
            table[(source, letter)].append((target, pushed))
        return dict(table)

    @cached_property
    def internal_map(self) -> Dict[Tuple[State, Letter], List[State]]:
        table: Dict[Tuple[State, Letter], List[State]] = defaultdict(list)
        for source, letter, target in canonical_sorted(self.internal_transitions):
            table[(source, letter)].append(target)
        return dict(table)

    @cached_property
    def return_map(self) -> Dict[Tuple[State, Letter, StackSymbol], List[State]]:
        table: Dict[Tuple[State, Letter, StackSymbol], List[State]] = defaultdict(list)
        for source, letter, popped, target in canonical_sorted(self.return_transitions):
            table[(source, letter, popped)].append(target)
        return dict(table)

    @cached_property
    def ordered_states(self) -> List[State]:
        return canonical_sorted(self.states)

    @cached_property
    def ordered_stack_symbols(self) -> List[StackSymbol]:
        return canonical_sorted(self.stack_symbols)

    def calls_from(self, state: State, letter: Letter) -> List[Tuple[State, StackSymbol]]:
        return self.call_map.get((state, letter), [])

    def internals_from(self, state: State, letter: Letter) -> List[State]:
        return self.internal_map.get((state, letter), [])

    def returns_from(self, state: State, letter: Letter, popped: StackSymbol) -> List[State]:
        return self.return_map.get((state, letter, popped), [])

    @property
    def size(self) -> Tuple[int, int, int]:
        """(states, stack symbols, transitions) for log lines."""
        transitions = (
            len(self.call_transitions)
            + len(self.internal_transitions)
            + len(self.return_transitions)
        )
        return len(self.states), len(self.stack_symbols), transitions

    def __repr__(self) -> str:
        states, symbols, transitions = self.size
        return f"Vpa(states={states}, stack={symbols}, transitions={transitions}, {self.alphabet})"


@dataclass(frozen=True)
class Configuration:
    """A state together with the whole stack, bottom first.

    `stack[0]` is always the bottom symbol and is never removed.
    """

    state: State
    stack: Tuple[StackSymbol, ...]

    @property
    def top(self) -> StackSymbol:
        return self.stack[-1]

    @property
    def height(self) -> int:
        return len(self.stack) - 1


@dataclass(frozen=True)
class RunResult:
    """Outcome of running a word."""

    accepted: bool
    final_configs: FrozenSet[Configuration]
    trace: Optional[Tuple[Configuration, ...]] = None


@dataclass(frozen=True)
class ValidationIssue:
    """One violated condition, with the transition or item that broke it."""

    kind: IssueKind
    detail: str
    item: Optional[Tuple] = None

    def __str__(self) -> str:
        return f"{self.kind.value}: {self.detail}"


@dataclass(frozen=True)
class ValidationReport:
    """Result of `validate`; valid iff no issues were found."""

    issues: Tuple[ValidationIssue, ...] = ()

    @property
    def valid(self) -> bool:
        return not self.issues

    def kinds(self) -> FrozenSet[IssueKind]:
        return frozenset(issue.kind for issue in self.issues)


@dataclass(frozen=True)
class EmptinessVerdict:
    """Result of the emptiness check; `witness` is a shortest accepted word."""

    empty: bool
    witness: Optional[Word] = None

    def __str__(self) -> str:
        if self.empty:
            return "empty"
        return f"nonempty (witness {format_word(self.witness or ())})"


@dataclass(frozen=True)
class EquivalenceVerdict:
    """Result of language comparison; `counterexample` separates the two languages."""

    equivalent: bool
    counterexample: Optional[Word] = None
    in_first: Optional[bool] = None

    def __str__(self) -> str:
        if self.equivalent:
            return "equivalent"
        side = "first" if self.in_first else "second"
        return f"inequivalent (counterexample {format_word(self.counterexample or ())}, accepted by {side})"


@dataclass(frozen=True)
class Dfa:
    """A deterministic finite automaton over a plain letter sequence.

    `delta` may be partial; a missing entry rejects.
    `group`, when known, is the inverse-closed alphabet the letters come from.
    """

    letters: Tuple[Letter, ...]
    states: Tuple[State, ...]
    start: State
    accepts: FrozenSet[State]
    delta: Mapping[Tuple[State, Letter], State] = field(default_factory=dict)
    group: Optional[GroupAlphabet] = None

    def step(self, state: Optional[State], letter: Letter) -> Optional[State]:
        if state is None:
            return None
        return self.delta.get((state, letter))

    def final_state(self, word: Sequence[Letter]) -> Optional[State]:
        state: Optional[State] = self.start
        for letter in word:
            state = self.step(state, letter)
            if state is None:
                return None
        return state

    def accepts_word(self, word: Sequence[Letter]) -> bool:
        return self.final_state(word) in self.accepts

    def is_complete(self) -> bool:
        return all((q, a) in self.delta for q in self.states for a in self.letters)

    def to_vpa(self, alphabet: PartitionedAlphabet) -> Vpa:
        """Embed as a VPA over `alphabet` whose transitions ignore the stack.

        Calls push a single dummy symbol and returns pop any symbol (or read ⊥),
        so the stack never influences acceptance.
        """
        dummy = "•"
        calls, internals, returns = set(), set(), set()
        for (source, letter), target in self.delta.items():
            kind = alphabet.kind_of(letter)
            if kind is LetterKind.CALL:
                calls.add((source, letter, target, dummy))
            elif kind is LetterKind.INTERNAL:
                internals.add((source, letter, target))
            else:
                returns.add((source, letter, dummy, target))
                returns.add((source, letter, BOTTOM, target))
        return Vpa(
            alphabet=alphabet,
            states=frozenset(self.states),
            initials=frozenset([self.start]),
            accepts=frozenset(self.accepts),
            stack_symbols=frozenset([dummy]),
            call_transitions=frozenset(calls),
            internal_transitions=frozenset(internals),
            return_transitions=frozenset(returns),
        )

    def to_dict(self) -> dict:
        """Convert to dictionary for serialization."""
        data = {
            "letters": list(self.letters),
            "states": [str(q) for q in self.states],
            "start": str(self.start),
            "accepts": [str(q) for q in self.states if q in self.accepts],
            "delta": [
                [str(q), a, str(self.delta[(q, a)])]
                for q in self.states
                for a in self.letters
                if (q, a) in self.delta
            ],
        }
        if self.group is not None:
            data["alphabet"] = self.group.to_dict()
        return data

    @classmethod
    def from_dict(cls, data: Mapping) -> "Dfa":
        """Create a Dfa from its dictionary form."""
        return cls(
            letters=tuple(data["letters"]),
            states=tuple(data["states"]),
            start=data["start"],
            accepts=frozenset(data.get("accepts", [])),
            delta={(q, a): t for q, a, t in data.get("delta", [])},
            group=GroupAlphabet.from_dict(data["alphabet"]) if "alphabet" in data else None,
        )


@dataclass(frozen=True)
class Renaming:
    """Letter-to-letter map from `source` onto `target`, applied letter-wise to words."""

    source: PartitionedAlphabet
    target: PartitionedAlphabet
    mapping: Mapping[Letter, Letter]

    def image(self, word: Sequence[Letter]) -> Word:
        return tuple(self.mapping[letter] for letter in word)

    def __str__(self) -> str:
        pairs = " ".join(f"{a}={self.mapping[a]}" for a in self.source.letters if a in self.mapping)
        return f"Renaming({pairs})"
