"""File-backed artifact registry."""

import logging
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple

from typing_extensions import override

from ..domain.enums import ArtifactKind
from ..domain.errors import ArtifactParseError, DuplicateArtifact, UnknownArtifact
from ..interfaces.service import IVpaEngine
from ..interfaces.storage import IWorkspace
from ..serialization import dot_export, json_codec

logger = logging.getLogger(__name__)


class Workspace(IWorkspace):
    """Artifacts by name; relative paths resolve against `base_dir`."""

    def __init__(self, engine: IVpaEngine, base_dir: Optional[Path] = None):
        self._engine = engine
        self._base_dir = Path(base_dir) if base_dir is not None else Path.cwd()
        self._artifacts: Dict[str, Tuple[ArtifactKind, Any]] = {}

    @property
    def base_dir(self) -> Path:
        return self._base_dir

    @override
    def clear(self) -> None:
        self._artifacts.clear()

    @override
    def use_directory(self, directory: Path) -> None:
        self._base_dir = Path(directory)

    def _path(self, path: str) -> Path:
        candidate = Path(path)
        return candidate if candidate.is_absolute() else self._base_dir / candidate

    @override
    def add(self, name: str, kind: ArtifactKind, artifact: Any, replace: bool = False) -> None:
        if name in self._artifacts and not replace:
            raise DuplicateArtifact(f"name {name!r} is already bound")
        if kind is ArtifactKind.VPA:
            self._engine.ensure_valid(artifact)
        self._artifacts[name] = (kind, artifact)
        logger.debug(f"Bound {name} ({kind.value})")

    @override
    def get(self, name: str, kind: Optional[ArtifactKind] = None) -> Any:
        try:
            found_kind, artifact = self._artifacts[name]
        except KeyError:
            raise UnknownArtifact(f"no artifact named {name!r}") from None
        if kind is not None and found_kind is not kind:
            raise UnknownArtifact(f"{name!r} is a {found_kind.value}, not a {kind.value}")
        return artifact

    @override
    def kind_of(self, name: str) -> ArtifactKind:
        self.get(name)
        return self._artifacts[name][0]

    @override
    def names(self) -> List[str]:
        return sorted(self._artifacts)

    @override
    def read_text(self, path: str) -> str:
        target = self._path(path)
        try:
            return target.read_text(encoding="utf-8")
        except OSError as e:
            raise ArtifactParseError(str(path), e.strerror or str(e)) from e

    @override
    def load(self, name: str, kind: ArtifactKind, path: str) -> Any:
        _, artifact = json_codec.decode(str(path), self.read_text(path), expected=kind)
        self.add(name, kind, artifact, replace=True)
        logger.info(f"Loaded {kind.value} {name} from {path}")
        return artifact

    def _plain(self, kind: ArtifactKind, artifact: Any) -> Any:
        if kind is ArtifactKind.VPA and not all(
            isinstance(item, str) for item in artifact.states | artifact.stack_symbols
        ):
            return self._engine.normalize(artifact)
        return artifact

    @override
    def write_text(self, path: str, text: str) -> Path:
        target = self._path(path)
        target.parent.mkdir(parents=True, exist_ok=True)
        target.write_text(text, encoding="utf-8")
        return target

    @override
    def save(self, name: str, path: str) -> None:
        kind = self.kind_of(name)
        target = self.write_text(path, json_codec.encode(kind, self._plain(kind, self.get(name))))
        logger.info(f"Saved {name} to {target}")

    @override
    def export_dot(self, name: str, path: str) -> None:
        kind = self.kind_of(name)
        artifact = self.get(name)
        if kind is ArtifactKind.VPA:
            text = dot_export.vpa_to_dot(self._plain(kind, artifact), name)
        elif kind is ArtifactKind.DFA:
            text = dot_export.dfa_to_dot(artifact, name)
        elif kind is ArtifactKind.GRAPH:
            text = dot_export.core_graph_to_dot(artifact, name)
        else:
            raise UnknownArtifact(f"{name!r} is a {kind.value}; only automata and graphs export to DOT")
        target = self.write_text(path, text)
        logger.info(f"Exported {name} to {target}")
