"""DOT rendering of automata and core graphs."""

import graphviz

from ..domain.automata import Dfa, Vpa
from ..domain.graphs import CoreGraph
from ..domain.ordering import canonical_sorted


def _node_id(state) -> str:
    return str(state)


def vpa_to_dot(v: Vpa, name: str = "VPA") -> str:
    """Calls and returns are labelled `letter,symbol`, internals by the letter alone."""
    g = graphviz.Digraph(name, graph_attr={"rankdir": "LR", "label": str(v.alphabet)})
    g.node("__start", shape="point")
    for state in v.ordered_states:
        shape = "doublecircle" if state in v.accepts else "circle"
        g.node(_node_id(state), shape=shape)
    for state in canonical_sorted(v.initials):
        g.edge("__start", _node_id(state))
    for source, letter, target, pushed in canonical_sorted(v.call_transitions):
        g.edge(_node_id(source), _node_id(target), label=graphviz.nohtml(f"{letter},{pushed}"))
    for source, letter, target in canonical_sorted(v.internal_transitions):
        g.edge(_node_id(source), _node_id(target), label=graphviz.nohtml(letter))
    for source, letter, popped, target in canonical_sorted(v.return_transitions):
        g.edge(_node_id(source), _node_id(target), label=graphviz.nohtml(f"{letter},{popped}"))
    return g.source


def dfa_to_dot(d: Dfa, name: str = "DFA") -> str:
    g = graphviz.Digraph(name, graph_attr={"rankdir": "LR"})
    g.node("__start", shape="point")
    for state in d.states:
        g.node(_node_id(state), shape="doublecircle" if state in d.accepts else "circle")
    g.edge("__start", _node_id(d.start))
    for state in d.states:
        for letter in d.letters:
            target = d.delta.get((state, letter))
            if target is not None:
                g.edge(_node_id(state), _node_id(target), label=graphviz.nohtml(letter))
    return g.source


def core_graph_to_dot(graph: CoreGraph, name: str = "Core") -> str:
    """Edges point along their generator label; the base vertex is filled."""
    g = graphviz.Digraph(name, graph_attr={"rankdir": "LR"})
    for vertex in graph.vertices:
        if vertex == graph.base:
            g.node(str(vertex), shape="circle", style="filled")
        else:
            g.node(str(vertex), shape="circle")
    for source, letter, target in sorted(graph.edges):
        g.edge(str(source), str(target), label=graphviz.nohtml(letter))
    return g.source
