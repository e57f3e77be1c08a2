"""Stallings core graphs: wedge construction, folding, pruning and the questions they answer."""

import logging
import random
from collections import defaultdict, deque
from typing import Dict, FrozenSet, List, Optional, Sequence, Set, Tuple

from typing_extensions import override

from ..domain.alphabet import GroupAlphabet, Letter, Word, format_word
from ..domain.automata import Dfa
from ..domain.errors import FiniteIndex, InfiniteIndex
from ..domain.graphs import CoreGraph, Edge, IndexVerdict, Vertex, WitnessLanguage
from ..interfaces.service import IStallingsService

logger = logging.getLogger(__name__)


def sigma_order(alphabet: GroupAlphabet) -> List[Letter]:
    """x₁, x₁⁻¹, x₂, x₂⁻¹, ...: the letter order used for traversal and witnesses."""
    order: List[Letter] = []
    for x in alphabet.generators:
        order.extend((x, alphabet.inv(x)))
    return order


class StallingsService(IStallingsService):
    """Core graphs of finitely generated subgroups of F(X)."""

    def __init__(self, rng: Optional[random.Random] = None):
        """Initialize Stallings service.

        Args:
            rng: When given, folds pick the next merge at random instead of
                in canonical order. The folded result is the same either way.
        """
        self._rng = rng

    @override
    def build_core_graph(self, alphabet: GroupAlphabet, generators: Sequence[Sequence[Letter]]) -> CoreGraph:
        """Wedge of loops at the base, folded and pruned.

        Generators are freely reduced first; one reducing to ε is skipped.
        """
        edges: Set[Edge] = set()
        next_vertex = 1
        for generator in generators:
            word = alphabet.reduce(alphabet.base.check_word(generator))
            if not word:
                logger.warning(f"Generator {format_word(tuple(generator))} reduces to ε; skipped")
                continue
            path = [0] + list(range(next_vertex, next_vertex + len(word) - 1)) + [0]
            next_vertex += len(word) - 1
            for source, letter, target in zip(path, word, path[1:]):
                if letter in alphabet.generators:
                    edges.add((source, letter, target))
                else:
                    edges.add((target, alphabet.inv(letter), source))
        wedge = CoreGraph(
            alphabet=alphabet,
            vertices=tuple(range(next_vertex)),
            base=0,
            edges=frozenset(edges),
        )
        graph = self.prune(self.fold(wedge))
        logger.info(f"Core graph for {len(generators)} generator(s): {graph}")
        return graph

    @override
    def fold(self, graph: CoreGraph) -> CoreGraph:
        """Merge equally labelled edges sharing a source or a target until none remain."""
        parent: Dict[Vertex, Vertex] = {v: v for v in graph.vertices}

        def find(v: Vertex) -> Vertex:
            while parent[v] != v:
                parent[v] = parent[parent[v]]
                v = parent[v]
            return v

        edges = set(graph.edges)
        merges = 0
        while True:
            by_source: Dict[Tuple[Vertex, Letter], Set[Vertex]] = defaultdict(set)
            by_target: Dict[Tuple[Vertex, Letter], Set[Vertex]] = defaultdict(set)
            for source, label, target in edges:
                by_source[(source, label)].add(target)
                by_target[(target, label)].add(source)
            clashes = sorted(
                tuple(sorted(group))
                for group in list(by_source.values()) + list(by_target.values())
                if len(group) > 1
            )
            if not clashes:
                break
            clash = self._rng.choice(clashes) if self._rng else clashes[0]
            pair = self._rng.sample(clash, 2) if self._rng else list(clash[:2])
            keep, drop = sorted(find(v) for v in pair)
            parent[drop] = keep
            edges = {(find(s), label, find(t)) for s, label, t in edges}
            merges += 1

        base = find(graph.base)
        vertices = sorted({find(v) for v in graph.vertices})
        logger.debug(f"Folded with {merges} merge(s)")
        return self._canonical(
            CoreGraph(graph.alphabet, tuple(vertices), base, frozenset(edges), folded=True)
        )

    def prune(self, graph: CoreGraph) -> CoreGraph:
        """Drop non-base vertices of degree ≤ 1 until none remain."""
        vertices = set(graph.vertices)
        edges = set(graph.edges)
        while True:
            degree: Dict[Vertex, int] = defaultdict(int)
            for source, _, target in edges:
                degree[source] += 1
                degree[target] += 1
            hanging = {v for v in vertices if v != graph.base and degree[v] <= 1}
            if not hanging:
                break
            vertices -= hanging
            edges = {e for e in edges if e[0] not in hanging and e[2] not in hanging}
        return self._canonical(
            CoreGraph(graph.alphabet, tuple(sorted(vertices)), graph.base, frozenset(edges), graph.folded)
        )

    def _canonical(self, graph: CoreGraph) -> CoreGraph:
        """Renumber vertices in breadth-first order from the base over x₁, x₁⁻¹, x₂, ..."""
        order = sigma_order(graph.alphabet)
        numbering: Dict[Vertex, int] = {graph.base: 0}
        queue = deque([graph.base])
        while queue:
            vertex = queue.popleft()
            for letter in order:
                for target in graph.neighbours(vertex, letter):
                    if target not in numbering:
                        numbering[target] = len(numbering)
                        queue.append(target)
        for vertex in graph.vertices:
            if vertex not in numbering:
                numbering[vertex] = len(numbering)
        return CoreGraph(
            alphabet=graph.alphabet,
            vertices=tuple(range(len(numbering))),
            base=0,
            edges=frozenset((numbering[s], x, numbering[t]) for s, x, t in graph.edges),
            folded=graph.folded,
        )

    @override
    def subgroup_membership(self, graph: CoreGraph, word: Sequence[Letter]) -> bool:
        """True iff the reduced form of `word` reads a closed path at the base."""
        reduced = graph.alphabet.reduce(graph.alphabet.base.check_word(word))
        return graph.trace(reduced) == graph.base

    @override
    def index(self, graph: CoreGraph) -> IndexVerdict:
        order = sigma_order(graph.alphabet)
        for vertex in graph.vertices:
            for letter in order:
                if graph.follow(vertex, letter) is None:
                    verdict = IndexVerdict(finite=False, vertex=vertex, letter=letter)
                    logger.info(f"Index: {verdict}")
                    return verdict
        verdict = IndexVerdict(finite=True, index=len(graph.vertices))
        logger.info(f"Index: {verdict}")
        return verdict

    @override
    def preimage_dfa(self, graph: CoreGraph) -> Dfa:
        """Permutation DFA on the cosets; accepts every word, reduced or not, whose image lies in H."""
        verdict = self.index(graph)
        if not verdict.finite:
            raise InfiniteIndex(f"subgroup has infinite index ({verdict})")
        letters = graph.alphabet.letters
        delta = {
            (vertex, letter): graph.follow(vertex, letter)
            for vertex in graph.vertices
            for letter in letters
        }
        return Dfa(
            letters=letters,
            states=graph.vertices,
            start=graph.base,
            accepts=frozenset([graph.base]),
            delta=delta,
            group=graph.alphabet,
        )

    def _shortest_paths(self, graph: CoreGraph, start: Vertex) -> Dict[Vertex, Word]:
        order = sigma_order(graph.alphabet)
        paths: Dict[Vertex, Word] = {start: ()}
        queue = deque([start])
        while queue:
            vertex = queue.popleft()
            for letter in order:
                target = graph.follow(vertex, letter)
                if target is not None and target not in paths:
                    paths[target] = paths[vertex] + (letter,)
                    queue.append(target)
        return paths

    @override
    def infinite_index_witness_language(self, graph: CoreGraph) -> WitnessLanguage:
        """w1 · {a, a⁻¹}* · w2 around a vertex v lacking an a-edge.

        w1 and w2 are breadth-first shortest paths base → v and v → base.
        """
        verdict = self.index(graph)
        if verdict.finite:
            raise FiniteIndex(f"subgroup has finite index {verdict.index}")
        prefix = self._shortest_paths(graph, graph.base)[verdict.vertex]
        suffix = self._shortest_paths(graph, verdict.vertex)[graph.base]
        witness = WitnessLanguage(prefix=prefix, suffix=suffix, letter=verdict.letter)
        logger.info(f"Witness language {witness}")
        return witness

    def elements_up_to(self, graph: CoreGraph, max_length: int) -> FrozenSet[Word]:
        """Reduced words of length ≤ max_length in the subgroup."""
        alphabet = graph.alphabet
        found: Set[Word] = set()
        frontier: List[Tuple[Word, Vertex]] = [((), graph.base)]
        for _ in range(max_length + 1):
            following: List[Tuple[Word, Vertex]] = []
            for word, vertex in frontier:
                if vertex == graph.base:
                    found.add(word)
                for letter in sigma_order(alphabet):
                    if word and alphabet.inv(word[-1]) == letter:
                        continue
                    target = graph.follow(vertex, letter)
                    if target is not None:
                        following.append((word + (letter,), target))
            frontier = following
        return frozenset(found)
