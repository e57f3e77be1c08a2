"""JSON file format for every artifact kind.

Each file is one object with a "kind" key naming an ArtifactKind. States
and stack symbols are written as strings, and the bottom symbol uses the
configured spelling.
"""

import json
import logging
from typing import Any, Callable, Dict, List, Mapping, Optional, Tuple

from ..config.settings import settings
from ..domain.alphabet import GroupAlphabet, PartitionedAlphabet
from ..domain.automata import BOTTOM, Dfa, Vpa
from ..domain.enums import ArtifactKind
from ..domain.errors import ArtifactParseError, SchemaError, VpgkitError
from ..domain.graphs import CoreGraph
from ..domain.groups import CayleyTable, CosetUnion
from ..domain.ordering import canonical_sorted

logger = logging.getLogger(__name__)


def _require(path: str, data: Mapping, key: str, kind: type) -> Any:
    if key not in data:
        raise SchemaError(path, key, "missing")
    value = data[key]
    if not isinstance(value, kind):
        raise SchemaError(path, key, f"expected {kind.__name__}, got {type(value).__name__}")
    return value


def _rows(path: str, data: Mapping, key: str, width: int) -> List[List[str]]:
    rows = data.get(key, [])
    if not isinstance(rows, list):
        raise SchemaError(path, key, "expected list")
    for index, row in enumerate(rows):
        if not isinstance(row, list) or len(row) != width:
            raise SchemaError(path, f"{key}[{index}]", f"expected a list of {width} entries")
    return [[str(item) for item in row] for row in rows]


def _to_file_symbol(symbol: Any) -> str:
    return settings.bottom if symbol == BOTTOM else str(symbol)


def _from_file_symbol(symbol: str) -> str:
    return BOTTOM if symbol == settings.bottom else symbol


def vpa_to_dict(v: Vpa) -> Dict[str, Any]:
    """Canonically ordered dictionary form; states must already be plain (see normalize)."""
    return {
        "alphabet": v.alphabet.to_dict(),
        "states": [str(q) for q in v.ordered_states],
        "initials": [str(q) for q in canonical_sorted(v.initials)],
        "accepts": [str(q) for q in canonical_sorted(v.accepts)],
        "stack_symbols": [str(g) for g in v.ordered_stack_symbols],
        "calls": [[str(q), a, str(t), str(g)] for q, a, t, g in canonical_sorted(v.call_transitions)],
        "internals": [[str(q), a, str(t)] for q, a, t in canonical_sorted(v.internal_transitions)],
        "returns": [
            [str(q), a, _to_file_symbol(g), str(t)] for q, a, g, t in canonical_sorted(v.return_transitions)
        ],
    }


def vpa_from_dict(path: str, data: Mapping) -> Vpa:
    alphabet = PartitionedAlphabet.from_dict(_require(path, data, "alphabet", dict))
    return Vpa(
        alphabet=alphabet,
        states=frozenset(str(q) for q in _require(path, data, "states", list)),
        initials=frozenset(str(q) for q in _require(path, data, "initials", list)),
        accepts=frozenset(str(q) for q in data.get("accepts", [])),
        stack_symbols=frozenset(str(g) for g in data.get("stack_symbols", [])),
        call_transitions=frozenset(tuple(row) for row in _rows(path, data, "calls", 4)),
        internal_transitions=frozenset(tuple(row) for row in _rows(path, data, "internals", 3)),
        return_transitions=frozenset(
            (q, a, _from_file_symbol(g), t) for q, a, g, t in _rows(path, data, "returns", 4)
        ),
    )


def _alphabet_from_dict(path: str, data: Mapping) -> Any:
    if "inverses" in data:
        return GroupAlphabet.from_dict(data)
    return PartitionedAlphabet.from_dict(data)


_DECODERS: Dict[ArtifactKind, Callable[[str, Mapping], Any]] = {
    ArtifactKind.ALPHABET: _alphabet_from_dict,
    ArtifactKind.VPA: vpa_from_dict,
    ArtifactKind.DFA: lambda path, data: Dfa.from_dict(data),
    ArtifactKind.GRAPH: lambda path, data: CoreGraph.from_dict(data),
    ArtifactKind.CAYLEY: lambda path, data: CayleyTable.from_dict(data),
    ArtifactKind.COSETS: lambda path, data: CosetUnion.from_dict(data),
}


def encode(kind: ArtifactKind, artifact: Any) -> str:
    """Serialize to JSON text ending in a newline."""
    if kind is ArtifactKind.VPA:
        body = vpa_to_dict(artifact)
    elif kind in _DECODERS:
        body = artifact.to_dict()
    else:
        raise SchemaError("<memory>", "kind", f"{kind.value} artifacts cannot be saved")
    return json.dumps({"kind": kind.value, **body}, ensure_ascii=False, indent=2) + "\n"


def parse_json(path: str, text: str) -> Dict[str, Any]:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise ArtifactParseError(path, e.msg, e.lineno, e.colno) from e
    if not isinstance(data, dict):
        raise ArtifactParseError(path, "top level must be an object", 1, 1)
    return data


def decode(path: str, text: str, expected: Optional[ArtifactKind] = None) -> Tuple[ArtifactKind, Any]:
    """Parse one artifact file.

    Raises:
        ArtifactParseError: malformed JSON, with line and column.
        SchemaError: well-formed JSON with missing or mistyped keys.
        InvalidAlphabet and other domain errors raised by the constructors.
    """
    data = parse_json(path, text)
    try:
        kind = ArtifactKind(_require(path, data, "kind", str))
    except ValueError:
        raise SchemaError(path, "kind", f"unknown kind {data['kind']!r}") from None
    if expected is not None and kind is not expected:
        raise SchemaError(path, "kind", f"expected {expected.value}, found {kind.value}")
    decoder = _DECODERS.get(kind)
    if decoder is None:
        raise SchemaError(path, "kind", f"{kind.value} artifacts cannot be loaded from files")
    try:
        artifact = decoder(path, data)
    except VpgkitError:
        raise
    except (KeyError, TypeError, ValueError) as e:
        raise SchemaError(path, kind.value, f"malformed ({type(e).__name__}: {e})") from e
    logger.debug(f"Decoded {kind.value} from {path}")
    return kind, artifact


