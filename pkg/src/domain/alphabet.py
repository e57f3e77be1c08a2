"""Alphabets, words and the matched-word taxonomy.

A `PartitionedAlphabet` splits its letters into calls, internals and returns.
A `GroupAlphabet` adds the free-group structure Σ = X ∪ X⁻¹: a fixed-point
free involution on letters and the order of every letter in the group under
study (None meaning infinite order).
"""

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from typing import Dict, Iterable, Iterator, List, Mapping, Optional, Sequence, Tuple

from .enums import LetterKind
from .errors import EmptyAlphabet, InvalidAlphabet, PartitionOverlap, UnknownLetter

Letter = str
Word = Tuple[Letter, ...]

EPSILON: Word = ()


def format_word(word: Sequence[Letter]) -> str:
    """Human-readable spelling of a word; ε for the empty word."""
    return " ".join(word) if word else "ε"


def _ordered(letters: Iterable[Letter]) -> Tuple[Letter, ...]:
    # Sets carry no declaration order, so they are sorted; sequences keep theirs.
    if isinstance(letters, (set, frozenset)):
        return tuple(sorted(letters))
    return tuple(letters)


@dataclass(frozen=True)
class MatchProfile:
    """Where a word sits among MR, MC and WM words."""

    is_mr: bool
    is_mc: bool
    is_wm: bool
    unmatched_calls: int
    unmatched_returns: int


@dataclass(frozen=True)
class PartitionedAlphabet:
    """Finite alphabet split into call, internal and return letters.

    Letter order (used for every lexicographic tie-break) is declaration
    order: calls, then internals, then returns.
    """

    calls: Tuple[Letter, ...]
    internals: Tuple[Letter, ...]
    returns: Tuple[Letter, ...]

    def __post_init__(self) -> None:
        seen: Dict[Letter, int] = {}
        for letter in self.calls + self.internals + self.returns:
            seen[letter] = seen.get(letter, 0) + 1
        overlap = [letter for letter, count in seen.items() if count > 1]
        if overlap:
            raise PartitionOverlap(overlap)
        if not seen:
            raise EmptyAlphabet()

    @cached_property
    def letters(self) -> Tuple[Letter, ...]:
        return self.calls + self.internals + self.returns

    @cached_property
    def _kinds(self) -> Dict[Letter, LetterKind]:
        kinds = {letter: LetterKind.CALL for letter in self.calls}
        kinds.update({letter: LetterKind.INTERNAL for letter in self.internals})
        kinds.update({letter: LetterKind.RETURN for letter in self.returns})
        return kinds

    @cached_property
    def _rank(self) -> Dict[Letter, int]:
        return {letter: i for i, letter in enumerate(self.letters)}

    def __contains__(self, letter: object) -> bool:
        return letter in self._kinds

    def __str__(self) -> str:
        parts = (
            ("calls", self.calls),
            ("internals", self.internals),
            ("returns", self.returns),
        )
        return " ".join(f"{name}={{{','.join(letters)}}}" for name, letters in parts)

    def kind_of(self, letter: Letter) -> LetterKind:
        """Return the part `letter` belongs to."""
        try:
            return self._kinds[letter]
        except KeyError:
            raise UnknownLetter(letter) from None

    def same_partition(self, other: "PartitionedAlphabet") -> bool:
        """True when both alphabets have literally the same three parts."""
        return (
            set(self.calls) == set(other.calls)
            and set(self.internals) == set(other.internals)
            and set(self.returns) == set(other.returns)
        )

    def check_word(self, word: Iterable[Letter]) -> Word:
        """Return `word` as a tuple, raising UnknownLetter on foreign letters."""
        result = tuple(word)
        for letter in result:
            if letter not in self._kinds:
                raise UnknownLetter(letter)
        return result

    def word_key(self, word: Sequence[Letter]) -> Tuple[int, Tuple[int, ...]]:
        """Sort key: shorter first, then lexicographic in letter order."""
        return (len(word), tuple(self._rank[letter] for letter in word))

    def words(self, max_length: int, min_length: int = 0) -> Iterator[Word]:
        """All words with length in [min_length, max_length], in word_key order."""
        for length in range(min_length, max_length + 1):
            yield from itertools.product(self.letters, repeat=length)

    def classify(self, word: Sequence[Letter]) -> MatchProfile:
        """Compute the MR/MC/WM profile of a word in one pass."""
        height = 0
        unmatched_returns = 0
        for letter in word:
            kind = self.kind_of(letter)
            if kind is LetterKind.CALL:
                height += 1
            elif kind is LetterKind.RETURN:
                if height:
                    height -= 1
                else:
                    unmatched_returns += 1
        is_mr = unmatched_returns == 0
        is_mc = height == 0
        return MatchProfile(
            is_mr=is_mr,
            is_mc=is_mc,
            is_wm=is_mr and is_mc,
            unmatched_calls=height,
            unmatched_returns=unmatched_returns,
        )

    def to_dict(self) -> dict:
        """Convert to dictionary for serialization."""
        return {
            "calls": list(self.calls),
            "internals": list(self.internals),
            "returns": list(self.returns),
        }

    @classmethod
    def from_dict(cls, data: Mapping) -> "PartitionedAlphabet":
        """Create a PartitionedAlphabet from its dictionary form."""
        return make_partitioned_alphabet(
            data.get("calls", []),
            data.get("internals", []),
            data.get("returns", []),
        )


def make_partitioned_alphabet(
    calls: Iterable[Letter],
    internals: Iterable[Letter],
    returns: Iterable[Letter],
) -> PartitionedAlphabet:
    """Build and validate a partition.

    Raises:
        PartitionOverlap: a letter appears in two parts (or twice in one).
        EmptyAlphabet: no letters at all.
    """
    return PartitionedAlphabet(_ordered(calls), _ordered(internals), _ordered(returns))


def classify_word(alphabet: PartitionedAlphabet, word: Sequence[Letter]) -> MatchProfile:
    """MR/MC/WM profile of `word` over `alphabet`."""
    return alphabet.classify(word)


Order = Optional[int]


@dataclass(frozen=True)
class TorsionInfo:
    """Order of every letter; None stands for infinite order."""

    order: Mapping[Letter, Order]

    def is_torsion(self, letter: Letter) -> bool:
        return self.order.get(letter) is not None

    def __getitem__(self, letter: Letter) -> Order:
        return self.order[letter]


@dataclass(frozen=True)
class GroupAlphabet:
    """Inverse-closed generating alphabet Σ = X ∪ X⁻¹ over a partition.

    `generators` lists X (the letters declared as keys of the inverse
    pairing); `inverse` is the full involution.
    """

    base: PartitionedAlphabet
    generators: Tuple[Letter, ...]
    inverse: Mapping[Letter, Letter]
    torsion: TorsionInfo = field(default_factory=lambda: TorsionInfo({}))

    def __post_init__(self) -> None:
        letters = set(self.base.letters)
        for letter in letters:
            partner = self.inverse.get(letter)
            if partner is None:
                raise InvalidAlphabet(f"letter {letter!r} has no inverse")
            if partner == letter:
                raise InvalidAlphabet(f"letter {letter!r} is its own inverse")
            if partner not in letters:
                raise InvalidAlphabet(f"inverse of {letter!r} is outside the alphabet")
            if self.inverse.get(partner) != letter:
                raise InvalidAlphabet(f"inverse pairing is not an involution at {letter!r}")
            if self.torsion.order.get(letter) != self.torsion.order.get(partner):
                raise InvalidAlphabet(f"order of {letter!r} differs from its inverse")
            order = self.torsion.order.get(letter)
            if order is not None and order < 1:
                raise InvalidAlphabet(f"order of {letter!r} must be positive")

    @property
    def letters(self) -> Tuple[Letter, ...]:
        return self.base.letters

    def __contains__(self, letter: object) -> bool:
        return letter in self.base

    def __str__(self) -> str:
        return f"{self.base} X={{{','.join(self.generators)}}}"

    def inv(self, letter: Letter) -> Letter:
        try:
            return self.inverse[letter]
        except KeyError:
            raise UnknownLetter(letter) from None

    def inverse_word(self, word: Sequence[Letter]) -> Word:
        """Formal inverse: reversed word with every letter inverted."""
        return tuple(self.inv(letter) for letter in reversed(word))

    def reduce(self, word: Sequence[Letter]) -> Word:
        """Free reduction by one left-to-right pass over a stack of survivors."""
        survivors: List[Letter] = []
        for letter in word:
            partner = self.inv(letter)
            if survivors and survivors[-1] == partner:
                survivors.pop()
            else:
                survivors.append(letter)
        return tuple(survivors)

    def is_reduced(self, word: Sequence[Letter]) -> bool:
        return all(self.inv(a) != b for a, b in zip(word, word[1:]))

    def exponent_sum(self, word: Sequence[Letter], generator: Letter) -> int:
        """Occurrences of `generator` minus occurrences of its inverse."""
        partner = self.inv(generator)
        return sum(1 for letter in word if letter == generator) - sum(
            1 for letter in word if letter == partner
        )

    def power(self, word: Sequence[Letter], k: int) -> Word:
        """wᵏ as a word; negative k repeats the formal inverse."""
        base = tuple(word) if k >= 0 else self.inverse_word(word)
        return base * abs(k)

    def is_positive(self, word: Sequence[Letter]) -> bool:
        return all(letter in self.generators for letter in word)

    def to_dict(self) -> dict:
        """Convert to dictionary for serialization."""
        data = self.base.to_dict()
        data["inverses"] = {x: self.inverse[x] for x in self.generators}
        orders = {}
        for x in self.generators:
            order = self.torsion.order.get(x)
            orders[x] = "inf" if order is None else order
        data["orders"] = orders
        return data

    @classmethod
    def from_dict(cls, data: Mapping) -> "GroupAlphabet":
        """Create a GroupAlphabet from its dictionary form."""
        base = PartitionedAlphabet.from_dict(data)
        orders: Dict[Letter, Order] = {}
        for letter, value in dict(data.get("orders", {})).items():
            orders[letter] = None if value in ("inf", "∞", None) else int(value)
        return make_group_alphabet(base, dict(data.get("inverses", {})), orders)


def make_group_alphabet(
    base: PartitionedAlphabet,
    inverses: Mapping[Letter, Letter],
    orders: Optional[Mapping[Letter, Order]] = None,
) -> GroupAlphabet:
    """Complete a one-directional inverse pairing and torsion data into a GroupAlphabet.

    `inverses` maps each generator x to the letter spelling x⁻¹. Orders given
    for either letter of a pair apply to both; missing orders are infinite.
    """
    generators = tuple(x for x in base.letters if x in inverses)
    inverse: Dict[Letter, Letter] = {}
    for x, x_inv in inverses.items():
        if x in inverse and inverse[x] != x_inv:
            raise InvalidAlphabet(f"letter {x!r} paired twice")
        inverse[x] = x_inv
        inverse[x_inv] = x
    order: Dict[Letter, Order] = {}
    for letter, value in (orders or {}).items():
        partner = inverse.get(letter)
        if partner is None:
            raise InvalidAlphabet(f"order given for unpaired letter {letter!r}")
        order[letter] = value
        order[partner] = value
    for letter in base.letters:
        order.setdefault(letter, None)
    return GroupAlphabet(base, generators, inverse, TorsionInfo(order))


def free_group_alphabet(
    generators: Sequence[Letter],
    calls: Iterable[Letter] = (),
    returns: Iterable[Letter] = (),
    orders: Optional[Mapping[Letter, Order]] = None,
    inverse_of: Optional[Mapping[Letter, Letter]] = None,
) -> GroupAlphabet:
    """Σ = X ∪ X⁻¹ with the uppercase-inverse spelling; letters not named as
    calls or returns are internals.

    Letter order is x₁, x₁⁻¹, x₂, x₂⁻¹, ... within each part.
    """
    pairs = dict(inverse_of or {x: x.swapcase() for x in generators})
    sigma: List[Letter] = []
    for x in generators:
        sigma.extend((x, pairs[x]))
    call_set, return_set = set(calls), set(returns)
    base = PartitionedAlphabet(
        tuple(letter for letter in sigma if letter in call_set),
        tuple(letter for letter in sigma if letter not in call_set | return_set),
        tuple(letter for letter in sigma if letter in return_set),
    )
    return make_group_alphabet(base, pairs, orders)


def free_reduce(alphabet: GroupAlphabet, word: Sequence[Letter]) -> Word:
    """The unique reduced word with the same image in the free group."""
    return alphabet.reduce(alphabet.base.check_word(word))
