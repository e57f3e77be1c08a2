"""Results of bounded congruence exploration."""

from dataclasses import dataclass, field
from typing import Dict, Tuple

from .alphabet import Word, format_word
from .enums import CongruenceKind


@dataclass(frozen=True, order=True)
class Context:
    """A test context (x, y) applied as x·u·y; right contexts have x = ε."""

    left: Word = ()
    right: Word = ()

    def apply(self, word: Word) -> Word:
        return self.left + tuple(word) + self.right

    def __len__(self) -> int:
        return len(self.left) + len(self.right)

    def __str__(self) -> str:
        if not self.left:
            return format_word(self.right)
        return f"({format_word(self.left)}, {format_word(self.right)})"


@dataclass(frozen=True)
class CongruenceTable:
    """Classes of admissible words up to `word_bound`, separated by contexts up to `context_bound`.

    The class count is a lower bound on the index of the congruence.
    `witnesses[(i, j)]` (i < j) separates the representatives of classes i and j.
    """

    kind: CongruenceKind
    word_bound: int
    context_bound: int
    classes: Tuple[Tuple[Word, ...], ...]
    witnesses: Dict[Tuple[int, int], Context] = field(default_factory=dict)
    contexts_tried: int = 0

    @property
    def class_count(self) -> int:
        return len(self.classes)

    @property
    def representatives(self) -> Tuple[Word, ...]:
        return tuple(members[0] for members in self.classes)

    def class_of(self, word: Word) -> int:
        for index, members in enumerate(self.classes):
            if tuple(word) in members:
                return index
        raise KeyError(word)
