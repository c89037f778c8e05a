"""Positive dependency graphs and the mutual-independence check used by ⊔."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Iterable, Sequence

import graphviz
import networkx as nx

from .core import Atom, ProgramModule, sort_atoms

FIRST_LABEL = "P1"
SECOND_LABEL = "P2"

EDGE_PALETTE = ("#60a5fa", "#f59e0b", "#34d399", "#a78bfa", "#f472b6", "#94a3b8")
HIGHLIGHT_COLOR = "#fb7185"
NODE_FILL = "#e2e8f0"


@dataclass(frozen=True, slots=True)
class DependencyEdge:
    source: Atom
    target: Atom
    origin: str

    def sort_key(self) -> tuple[str, str, str]:
        return (str(self.source), str(self.target), self.origin)


@dataclass(frozen=True, slots=True)
class DependencyGraph:
    nodes: frozenset[Atom]
    edges: frozenset[DependencyEdge]

    def __post_init__(self) -> None:
        for edge in self.edges:
            if edge.source not in self.nodes or edge.target not in self.nodes:
                raise ValueError(f"Edge {edge.source}→{edge.target} leaves the node set")

    @property
    def origins(self) -> list[str]:
        return sorted({edge.origin for edge in self.edges})

    def sorted_edges(self) -> list[DependencyEdge]:
        return sorted(self.edges, key=DependencyEdge.sort_key)

    def to_networkx(self) -> nx.DiGraph:
        graph = nx.DiGraph()
        graph.add_nodes_from(self.nodes)
        for edge in self.edges:
            if graph.has_edge(edge.source, edge.target):
                graph.edges[edge.source, edge.target]["origins"].add(edge.origin)
            else:
                graph.add_edge(edge.source, edge.target, origins={edge.origin})
        return graph


def build_positive_graph(modules: Iterable[tuple[str, ProgramModule]]) -> DependencyGraph:
    """One edge head→b per positive body atom b of every rule, labelled by module."""

    nodes: set[Atom] = set()
    edges: set[DependencyEdge] = set()
    for identifier, module in modules:
        nodes |= module.all_atoms
        for rule in module.rules:
            for head, body_atom in product(rule.head, rule.body_pos):
                edges.add(DependencyEdge(head, body_atom, identifier))
    return DependencyGraph(frozenset(nodes), frozenset(edges))


def _labelled_triples(graph: nx.DiGraph) -> list[tuple[Atom, Atom, str]]:
    triples = [
        (source, target, origin)
        for source, target, data in graph.edges(data=True)
        for origin in data["origins"]
    ]
    return sorted(triples, key=lambda triple: (str(triple[0]), str(triple[1]), triple[2]))


def cross_module_cycle(graph: DependencyGraph) -> tuple[Atom, ...] | None:
    """Return a closed walk whose edges carry two different labels, if any.

    Every edge inside a strongly connected component lies on a cycle, so a
    component whose internal edges carry two labels yields the walk
    ``u→v ⇝ x→y ⇝ u`` through one edge of each label.
    """

    nx_graph = graph.to_networkx()
    components = sorted(
        nx.strongly_connected_components(nx_graph),
        key=lambda component: [str(atom) for atom in sort_atoms(component)],
    )
    for component in components:
        inner = nx_graph.subgraph(component)
        triples = _labelled_triples(inner)
        if not triples:
            continue
        first = triples[0]
        second = next((triple for triple in triples if triple[2] != first[2]), None)
        if second is None:
            continue
        u, v, _ = first
        x, y, _ = second
        walk = [u, *nx.shortest_path(inner, v, x), *nx.shortest_path(inner, y, u)]
        return tuple(walk)
    return None


def mutually_independent(p1: ProgramModule, p2: ProgramModule) -> bool:
    graph = build_positive_graph([(FIRST_LABEL, p1), (SECOND_LABEL, p2)])
    return cross_module_cycle(graph) is None


def cross_module_walk_naive(graph: DependencyGraph) -> bool:
    """Transitive-closure search for a closed walk mixing two labels."""

    reach = {(edge.source, edge.target) for edge in graph.edges}
    while True:
        extended = reach | {(a, d) for a, b in reach for c, d in reach if b == c}
        if extended == reach:
            break
        reach = extended

    def reaches(start: Atom, end: Atom) -> bool:
        return start == end or (start, end) in reach

    for first, second in product(graph.edges, repeat=2):
        if first.origin == second.origin:
            continue
        if reaches(first.target, second.source) and reaches(second.target, first.source):
            return True
    return False


def outputs_share_component(p1: ProgramModule, p2: ProgramModule) -> bool:
    """True when some dependency cycle meets the outputs of both modules."""

    graph = build_positive_graph([(FIRST_LABEL, p1), (SECOND_LABEL, p2)]).to_networkx()
    for component in nx.strongly_connected_components(graph):
        cyclic = len(component) > 1 or any(graph.has_edge(atom, atom) for atom in component)
        if cyclic and component & p1.outputs and component & p2.outputs:
            return True
    return False


def _dim_color(hex_color: str, factor: float) -> str:
    hex_color = hex_color.lstrip("#")
    channels = [int(hex_color[i : i + 2], 16) for i in (0, 2, 4)]
    r, g, b = (int(value + (255 - value) * factor) for value in channels)
    return f"#{r:02x}{g:02x}{b:02x}"


def to_dot(graph: DependencyGraph, highlight: Sequence[Atom] | None = None) -> graphviz.Digraph:
    """Render ``graph`` with one edge color per module label and ``highlight`` emphasised."""

    highlighted_edges = set(zip(highlight, highlight[1:])) if highlight else set()
    highlighted_nodes = set(highlight or ())
    colors = {origin: EDGE_PALETTE[i % len(EDGE_PALETTE)] for i, origin in enumerate(graph.origins)}

    dot = graphviz.Digraph(
        name="dependencies",
        graph_attr={"rankdir": "LR", "pad": "0.2"},
        node_attr={"style": "filled", "fontname": "Inter", "fontsize": "12"},
    )
    for atom in sort_atoms(graph.nodes):
        on_cycle = atom in highlighted_nodes
        dot.node(
            str(atom),
            fillcolor=NODE_FILL,
            color=HIGHLIGHT_COLOR if on_cycle else "#4b5563",
            penwidth="3" if on_cycle else "1.5",
        )
    for edge in graph.sorted_edges():
        color = colors[edge.origin]
        if (edge.source, edge.target) in highlighted_edges:
            color, width = HIGHLIGHT_COLOR, "2.4"
        else:
            color = _dim_color(color, 0.45) if highlight else color
            width = "1.4"
        dot.edge(str(edge.source), str(edge.target), label=edge.origin, color=color, penwidth=width)
    return dot
