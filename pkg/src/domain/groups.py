"""Finite groups given by Cayley tables, coset decompositions and partition checks."""

import itertools
from dataclasses import dataclass
from functools import cached_property
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from .alphabet import GroupAlphabet, Letter, TorsionInfo, Word
from .enums import ViolationKind
from .errors import InvalidGroup

Element = str
Permutation = Tuple[int, ...]

__all__ = [
    "CayleyTable",
    "CosetUnion",
    "Element",
    "PartitionCheck",
    "Permutation",
    "TorsionInfo",
    "Violation",
    "compose",
]


@dataclass(frozen=True)
class CayleyTable:
    """A finite group with a generating alphabet mapped into it.

    Raises InvalidGroup on construction when the table is not a group, or
    when the generator map does not send inverse letters to inverse elements.
    """

    elements: Tuple[Element, ...]
    identity: Element
    product: Mapping[Tuple[Element, Element], Element]
    alphabet: GroupAlphabet
    generator_map: Mapping[Letter, Element]

    def __post_init__(self) -> None:
        elements = set(self.elements)
        if len(elements) != len(self.elements):
            raise InvalidGroup("duplicate element names")
        if self.identity not in elements:
            raise InvalidGroup(f"identity {self.identity!r} is not an element")
        for x, y in itertools.product(self.elements, repeat=2):
            value = self.product.get((x, y))
            if value not in elements:
                raise InvalidGroup(f"product {x}·{y} is missing or not an element")
        for x in self.elements:
            if self.product[(self.identity, x)] != x or self.product[(x, self.identity)] != x:
                raise InvalidGroup(f"identity law fails at {x}")
        for x, y, z in itertools.product(self.elements, repeat=3):
            if self.product[(self.product[(x, y)], z)] != self.product[(x, self.product[(y, z)])]:
                raise InvalidGroup(f"associativity fails at ({x}, {y}, {z})")
        for x in self.elements:
            if not any(self.product[(x, y)] == self.identity for y in self.elements):
                raise InvalidGroup(f"{x} has no inverse")
        for letter in self.alphabet.letters:
            image = self.generator_map.get(letter)
            if image not in elements:
                raise InvalidGroup(f"letter {letter!r} is not mapped to an element")
        for letter in self.alphabet.letters:
            partner = self.alphabet.inv(letter)
            if self.product[(self.generator_map[letter], self.generator_map[partner])] != self.identity:
                raise InvalidGroup(f"{letter!r} and {partner!r} are not mapped to inverse elements")

    @cached_property
    def _inverses(self) -> Dict[Element, Element]:
        return {
            x: next(y for y in self.elements if self.product[(x, y)] == self.identity)
            for x in self.elements
        }

    def multiply(self, x: Element, y: Element) -> Element:
        return self.product[(x, y)]

    def inverse(self, x: Element) -> Element:
        return self._inverses[x]

    def evaluate(self, word: Sequence[Letter]) -> Element:
        """π(w): the product of the letter images, left to right."""
        value = self.identity
        for letter in word:
            value = self.product[(value, self.generator_map[letter])]
        return value

    def is_identity(self, word: Sequence[Letter]) -> bool:
        return self.evaluate(word) == self.identity

    def order_of(self, x: Element) -> int:
        order, value = 1, x
        while value != self.identity:
            value = self.product[(value, x)]
            order += 1
        return order

    def torsion(self) -> TorsionInfo:
        """Letter orders as realised in this group."""
        return TorsionInfo({a: self.order_of(self.generator_map[a]) for a in self.alphabet.letters})

    def to_dict(self) -> dict:
        """Convert to dictionary for serialization."""
        return {
            "alphabet": self.alphabet.to_dict(),
            "elements": list(self.elements),
            "identity": self.identity,
            "table": [[self.product[(x, y)] for y in self.elements] for x in self.elements],
            "generators": {a: self.generator_map[a] for a in self.alphabet.letters},
        }

    @classmethod
    def from_dict(cls, data: Mapping) -> "CayleyTable":
        """Create a CayleyTable from its dictionary form (rows indexed like `elements`)."""
        elements = tuple(str(x) for x in data["elements"])
        rows = data["table"]
        if len(rows) != len(elements) or any(len(row) != len(elements) for row in rows):
            raise InvalidGroup("multiplication table is not square over the elements")
        product = {
            (x, y): str(rows[i][j])
            for i, x in enumerate(elements)
            for j, y in enumerate(elements)
        }
        return cls(
            elements=elements,
            identity=str(data["identity"]),
            product=product,
            alphabet=GroupAlphabet.from_dict(data["alphabet"]),
            generator_map={str(a): str(x) for a, x in dict(data["generators"]).items()},
        )


def compose(first: Permutation, second: Permutation) -> Permutation:
    """Apply `first`, then `second` (right action on states)."""
    return tuple(second[image] for image in first)


@dataclass(frozen=True)
class CosetUnion:
    """A recognisable set written as a union of cosets N·gᵢ of a finite-index normal subgroup.

    N is the kernel of the letter action on the states of a permutation DFA,
    so G/N is the permutation group itself and its index equals the group's
    size. `actions` keeps the letter permutations so the set can be rebuilt.
    """

    normal_subgroup_index: int
    permutation_group_size: int
    coset_representatives: Tuple[Word, ...]
    letters: Tuple[Letter, ...]
    actions: Mapping[Letter, Permutation]

    @cached_property
    def _accepted(self) -> frozenset:
        return frozenset(self.permutation_of(word) for word in self.coset_representatives)

    def permutation_of(self, word: Sequence[Letter]) -> Permutation:
        size = len(next(iter(self.actions.values()))) if self.actions else 0
        value: Permutation = tuple(range(size))
        for letter in word:
            value = compose(value, self.actions[letter])
        return value

    def contains(self, word: Sequence[Letter]) -> bool:
        """Membership of π(w) in the union: its coset of N is one of the listed ones."""
        return self.permutation_of(word) in self._accepted

    def to_dict(self) -> dict:
        """Convert to dictionary for serialization."""
        return {
            "normal_subgroup_index": self.normal_subgroup_index,
            "permutation_group_size": self.permutation_group_size,
            "coset_representatives": [list(word) for word in self.coset_representatives],
            "letters": list(self.letters),
            "actions": {a: list(self.actions[a]) for a in self.letters},
        }

    @classmethod
    def from_dict(cls, data: Mapping) -> "CosetUnion":
        """Create a CosetUnion from its dictionary form."""
        return cls(
            normal_subgroup_index=int(data["normal_subgroup_index"]),
            permutation_group_size=int(data["permutation_group_size"]),
            coset_representatives=tuple(tuple(word) for word in data["coset_representatives"]),
            letters=tuple(data["letters"]),
            actions={a: tuple(int(i) for i in p) for a, p in dict(data["actions"]).items()},
        )


@dataclass(frozen=True)
class Violation:
    """One reason a partition is not symmetric, attached to the offending letter."""

    kind: ViolationKind
    letter: Letter
    partner: Optional[Letter] = None
    order: Optional[int] = None

    def __str__(self) -> str:
        if self.kind in (ViolationKind.TORSION_CALL, ViolationKind.TORSION_RETURN):
            return f"{self.kind.value}: {self.letter} has order {self.order}"
        return f"{self.kind.value}: {self.letter}⁻¹ = {self.partner}"


@dataclass(frozen=True)
class PartitionCheck:
    """Verdict of the symmetric-partition test."""

    violations: Tuple[Violation, ...] = ()

    @property
    def symmetric(self) -> bool:
        return not self.violations

    def first(self, kinds: Sequence[ViolationKind]) -> Optional[Violation]:
        """First violation whose kind is listed, in `kinds` order."""
        for kind in kinds:
            for violation in self.violations:
                if violation.kind is kind:
                    return violation
        return None

    def kinds(self) -> List[ViolationKind]:
        return [violation.kind for violation in self.violations]
