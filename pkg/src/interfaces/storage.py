"""Storage interfaces for vpgkit."""

from abc import ABC, abstractmethod
from pathlib import Path
from typing import Any, List, Optional

from ..domain.enums import ArtifactKind


class IWorkspace(ABC):
    """Interface for a named registry of artifacts backed by files."""

    @abstractmethod
    def add(self, name: str, kind: ArtifactKind, artifact: Any, replace: bool = False) -> None:
        """Bind `name` to an artifact.

        Args:
            name: Identifier, unique unless `replace` is set.
            kind: Kind of the artifact.
            artifact: The value; automata are validated before binding.
            replace: Allow rebinding an existing name.
        """
        pass

    @abstractmethod
    def get(self, name: str, kind: Optional[ArtifactKind] = None) -> Any:
        """Look up an artifact, optionally checking its kind.

        Raises:
            UnknownArtifact: no such name, or a different kind.
        """
        pass

    @abstractmethod
    def kind_of(self, name: str) -> ArtifactKind:
        pass

    @abstractmethod
    def names(self) -> List[str]:
        pass

    @abstractmethod
    def load(self, name: str, kind: ArtifactKind, path: str) -> Any:
        """Read a file and bind its artifact to `name`."""
        pass

    @abstractmethod
    def save(self, name: str, path: str) -> None:
        """Write an artifact in its canonical file form."""
        pass

    @abstractmethod
    def export_dot(self, name: str, path: str) -> None:
        """Write a DOT rendering of an automaton or graph."""
        pass

    @abstractmethod
    def read_text(self, path: str) -> str:
        """Read a text file relative to the workspace directory."""
        pass

    @abstractmethod
    def write_text(self, path: str, text: str) -> Path:
        """Write a text file relative to the workspace directory, creating parents."""
        pass

    @abstractmethod
    def use_directory(self, directory: Path) -> None:
        """Resolve later relative paths against `directory`."""
        pass

    @abstractmethod
    def clear(self) -> None:
        """Drop every artifact."""
        pass
