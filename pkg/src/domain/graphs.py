"""Core graphs of finitely generated subgroups of free groups."""

from collections import defaultdict
from dataclasses import dataclass
from functools import cached_property
from typing import Dict, FrozenSet, List, Mapping, Optional, Tuple

from .alphabet import GroupAlphabet, Letter, Word, format_word

Vertex = int
Edge = Tuple[Vertex, Letter, Vertex]


@dataclass(frozen=True)
class CoreGraph:
    """A based graph with edges labelled by generators X.

    An edge (u, x, v) is read forwards as x and backwards as x⁻¹.
    """

    alphabet: GroupAlphabet
    vertices: Tuple[Vertex, ...]
    base: Vertex
    edges: FrozenSet[Edge]
    folded: bool = False

    @cached_property
    def _forward(self) -> Dict[Tuple[Vertex, Letter], List[Vertex]]:
        table: Dict[Tuple[Vertex, Letter], List[Vertex]] = defaultdict(list)
        for source, label, target in sorted(self.edges):
            table[(source, label)].append(target)
        return dict(table)

    @cached_property
    def _backward(self) -> Dict[Tuple[Vertex, Letter], List[Vertex]]:
        table: Dict[Tuple[Vertex, Letter], List[Vertex]] = defaultdict(list)
        for source, label, target in sorted(self.edges):
            table[(target, label)].append(source)
        return dict(table)

    def neighbours(self, vertex: Vertex, letter: Letter) -> List[Vertex]:
        """Vertices reached from `vertex` by reading `letter` (a generator or an inverse)."""
        if letter in self.alphabet.generators:
            return self._forward.get((vertex, letter), [])
        return self._backward.get((vertex, self.alphabet.inv(letter)), [])

    def follow(self, vertex: Optional[Vertex], letter: Letter) -> Optional[Vertex]:
        """Unique successor in a folded graph, or None when no edge reads `letter`."""
        if vertex is None:
            return None
        targets = self.neighbours(vertex, letter)
        return targets[0] if targets else None

    def trace(self, word: Word, start: Optional[Vertex] = None) -> Optional[Vertex]:
        vertex: Optional[Vertex] = self.base if start is None else start
        for letter in word:
            vertex = self.follow(vertex, letter)
            if vertex is None:
                return None
        return vertex

    def degree(self, vertex: Vertex) -> int:
        """Number of edge ends at `vertex`; a loop counts twice."""
        return sum((source == vertex) + (target == vertex) for source, _, target in self.edges)

    def __str__(self) -> str:
        return f"CoreGraph(vertices={len(self.vertices)}, edges={len(self.edges)}, base={self.base})"

    def to_dict(self) -> dict:
        """Convert to dictionary for serialization."""
        return {
            "alphabet": self.alphabet.to_dict(),
            "vertices": list(self.vertices),
            "base": self.base,
            "edges": [list(edge) for edge in sorted(self.edges)],
            "folded": self.folded,
        }

    @classmethod
    def from_dict(cls, data: Mapping) -> "CoreGraph":
        """Create a CoreGraph from its dictionary form."""
        return cls(
            alphabet=GroupAlphabet.from_dict(data["alphabet"]),
            vertices=tuple(int(v) for v in data["vertices"]),
            base=int(data["base"]),
            edges=frozenset((int(s), str(x), int(t)) for s, x, t in data["edges"]),
            folded=bool(data.get("folded", False)),
        )


@dataclass(frozen=True)
class IndexVerdict:
    """Finite index with its value, or infinite index with a missing-edge witness."""

    finite: bool
    index: Optional[int] = None
    vertex: Optional[Vertex] = None
    letter: Optional[Letter] = None

    def __str__(self) -> str:
        if self.finite:
            return f"finite index {self.index}"
        return f"infinite index (vertex {self.vertex} lacks {self.letter})"


@dataclass(frozen=True)
class WitnessLanguage:
    """The family w1 · {a, a⁻¹}* · w2 exposing an infinite-index subgroup."""

    prefix: Word
    suffix: Word
    letter: Letter

    def member(self, middle: Word) -> Word:
        return self.prefix + tuple(middle) + self.suffix

    def __str__(self) -> str:
        return f"{format_word(self.prefix)} · {{{self.letter}}}± · {format_word(self.suffix)}"
