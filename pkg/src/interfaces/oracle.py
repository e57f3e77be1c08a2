"""Membership oracle interface for languages."""

from abc import ABC, abstractmethod
from typing import Sequence

from ..domain.alphabet import Letter, PartitionedAlphabet


class ILangOracle(ABC):
    """A total, deterministic membership predicate over words of an alphabet.

    Implementations must be safe to call from several threads at once.
    """

    @property
    @abstractmethod
    def alphabet(self) -> PartitionedAlphabet:
        """Alphabet the predicate is defined on."""
        pass

    @abstractmethod
    def contains(self, word: Sequence[Letter]) -> bool:
        """Decide membership of `word`.

        Args:
            word: Word over `alphabet`.

        Returns:
            True if the word is in the language.
        """
        pass

    def __contains__(self, word: object) -> bool:
        return self.contains(word)  # type: ignore[arg-type]

    def describe(self) -> str:
        """Short human-readable description used in reports."""
        return type(self).__name__
