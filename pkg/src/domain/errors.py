"""Exception hierarchy for vpgkit.

Every error raised on purpose by the toolkit derives from `VpgkitError`,
so the CLI can turn it into a one-line diagnostic.
"""

from typing import Any, Optional


class VpgkitError(Exception):
    """Base class for all toolkit errors."""


# Alphabets and words

class InvalidAlphabet(VpgkitError):
    """Alphabet data is inconsistent."""


class PartitionOverlap(InvalidAlphabet):
    """A letter was declared in more than one part of a partition."""

    def __init__(self, letters: Any):
        self.letters = sorted(letters)
        super().__init__(f"letters in more than one part: {', '.join(self.letters)}")


class EmptyAlphabet(InvalidAlphabet):
    """The union of the three parts is empty."""

    def __init__(self) -> None:
        super().__init__("alphabet has no letters")


class UnknownLetter(VpgkitError):
    """A word uses a letter the alphabet does not declare."""

    def __init__(self, letter: Any):
        self.letter = letter
        super().__init__(f"unknown letter: {letter!r}")


# Automata

class InvalidAutomaton(VpgkitError):
    """An automaton failed validation."""

    def __init__(self, report: Any):
        self.report = report
        issues = "; ".join(str(issue) for issue in report.issues[:3])
        super().__init__(f"invalid automaton: {issues}")


class PartitionMismatch(VpgkitError):
    """Binary operation on automata over different partitions."""

    def __init__(self, left: Any, right: Any):
        self.left = left
        self.right = right
        super().__init__(f"partitions differ: {left} vs {right}")


class PartitionViolation(VpgkitError):
    """A renaming does not respect the call/internal/return parts."""


# Congruences

class InadmissibleWord(VpgkitError):
    """A word outside the domain of the requested congruence."""

    def __init__(self, word: Any, kind: Any):
        self.word = word
        self.kind = kind
        super().__init__(f"word {' '.join(word) or 'ε'} is not admissible for {kind.value}")


# Groups and graphs

class InfiniteIndex(VpgkitError):
    """Operation needs a finite-index subgroup."""


class FiniteIndex(VpgkitError):
    """Operation needs an infinite-index subgroup."""


class InvalidGroup(VpgkitError):
    """A Cayley table is not a group table."""


class NotPermutationDfa(VpgkitError):
    """Some letter of a DFA does not act as a bijection (or its inverse does not undo it)."""


class GroupTooLarge(VpgkitError):
    """Materialising a permutation group exceeded the configured cap."""

    def __init__(self, cap: int):
        self.cap = cap
        super().__init__(f"permutation group exceeds {cap} elements")


class SymmetricPartition(VpgkitError):
    """No lift construction applies because the partition has no usable violation."""


# Files and workspace

class ArtifactParseError(VpgkitError):
    """A file could not be parsed."""

    def __init__(self, path: str, message: str, line: Optional[int] = None, column: Optional[int] = None):
        self.path = path
        self.line = line
        self.column = column
        where = f"{path}:{line}:{column}" if line is not None else path
        super().__init__(f"{where}: {message}")


class WordSyntaxError(VpgkitError):
    """Text that is not a word, family template or equation over the alphabet."""


class SchemaError(VpgkitError):
    """A parsed file does not have the expected structure."""

    def __init__(self, path: str, key: str, message: str):
        self.path = path
        self.key = key
        super().__init__(f"{path}: {key}: {message}")


class UnknownArtifact(VpgkitError):
    """No artifact of that name in the workspace."""


class DuplicateArtifact(VpgkitError):
    """An artifact name is already bound in the workspace."""


class PipelineError(VpgkitError):
    """A pipeline command failed."""

    def __init__(self, line_no: int, command: str, cause: Exception, report: Any = None):
        self.line_no = line_no
        self.command = command
        self.cause = cause
        self.report = report
        super().__init__(f"line {line_no}: {command}: {type(cause).__name__}: {cause}")


class ExpectationFailed(VpgkitError):
    """A pipeline assertion did not hold."""
