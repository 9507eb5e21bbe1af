"""Finite directed multigraphs and their path semigroupoids.

A graph carries an ordered vertex set and an ordered list of labelled
edges.  The path semigroupoid consists of the vertices (acting as units)
together with every admissible finite edge word; two paths compose exactly
when the range of the first matches the source of the second.

All values here are immutable after construction and safe to share across
threads.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping, Optional, Sequence, Union


class GraphError(ValueError):
    """Base class for graph and path construction failures."""


class DuplicateIdError(GraphError):
    pass


class DanglingEndpointError(GraphError):
    pass


class EmptyGraphError(GraphError):
    pass


class UnknownVertexError(GraphError):
    pass


class UnknownEdgeError(GraphError):
    pass


class InadmissibleError(GraphError):
    """Raised when concatenating paths whose endpoints do not match."""


@dataclass(frozen=True, slots=True)
class Edge:
    id: str
    src: str
    rng: str


EdgeLike = Union[Edge, Sequence[str]]


class DirectedGraph:
    """A finite directed multigraph with stable vertex and edge order."""

    __slots__ = ("vertices", "edges", "_edge_by_id", "_out", "_vertex_paths")

    def __init__(self, vertices: Iterable[str], edges: Iterable[EdgeLike] = ()):
        vs = tuple(str(v) for v in vertices)
        if not vs:
            raise EmptyGraphError("a graph needs at least one vertex")
        if len(set(vs)) != len(vs):
            raise DuplicateIdError("duplicate vertex id")
        es = []
        for e in edges:
            if not isinstance(e, Edge):
                e = Edge(*map(str, e))
            es.append(e)
        es = tuple(es)
        ids = [e.id for e in es]
        if len(set(ids)) != len(ids):
            raise DuplicateIdError("duplicate edge id")
        vset = set(vs)
        for e in es:
            if e.src not in vset or e.rng not in vset:
                raise DanglingEndpointError(
                    f"edge {e.id!r} endpoint not a declared vertex")
        object.__setattr__(self, "vertices", vs)
        object.__setattr__(self, "edges", es)
        object.__setattr__(self, "_edge_by_id", {e.id: e for e in es})
        out: dict[str, list[Edge]] = {v: [] for v in vs}
        for e in es:
            out[e.src].append(e)
        object.__setattr__(self, "_out", {v: tuple(lst) for v, lst in out.items()})
        object.__setattr__(
            self, "_vertex_paths", {v: Path(self, v, v, ()) for v in vs})

    def __setattr__(self, name, value):  # immutable by construction
        raise AttributeError("DirectedGraph is immutable")

    def __repr__(self) -> str:
        return (f"DirectedGraph({len(self.vertices)} vertices, "
                f"{len(self.edges)} edges)")

    def has_vertex(self, v: str) -> bool:
        return v in self._vertex_paths

    def require_vertex(self, v: str) -> str:
        if v not in self._vertex_paths:
            raise UnknownVertexError(f"unknown vertex {v!r}")
        return v

    def edge(self, edge_id: str) -> Edge:
        try:
            return self._edge_by_id[edge_id]
        except KeyError:
            raise UnknownEdgeError(f"unknown edge {edge_id!r}") from None

    def out_edges(self, v: str) -> tuple[Edge, ...]:
        self.require_vertex(v)
        return self._out[v]

    def vertex(self, v: str) -> "Path":
        """The length-zero path sitting at vertex ``v``."""
        self.require_vertex(v)
        return self._vertex_paths[v]

    def path(self, edge_ids: Iterable[str]) -> "Path":
        """Build the admissible edge word ``e_1 ... e_k`` (``k >= 1``)."""
        ids = tuple(edge_ids)
        if not ids:
            raise GraphError("an edge word needs at least one edge")
        edges = [self.edge(i) for i in ids]
        for prev, nxt in zip(edges, edges[1:]):
            if prev.rng != nxt.src:
                raise InadmissibleError(
                    f"edges {prev.id!r} and {nxt.id!r} do not compose")
        return Path(self, edges[0].src, edges[-1].rng, ids)

    def path_from_label(self, label: str) -> "Path":
        """Resolve ``"v"`` to a vertex or ``"e1.e2"`` to an edge word.

        Vertex ids win when a label names both a vertex and an edge.
        """
        if self.has_vertex(label):
            return self.vertex(label)
        return self.path(label.split("."))


@dataclass(frozen=True)
class Path:
    """A vertex (length zero) or an admissible edge word of a graph."""

    graph: DirectedGraph = field(compare=False, repr=False)
    src: str
    rng: str
    edges: tuple[str, ...] = ()

    @property
    def length(self) -> int:
        return len(self.edges)

    @property
    def is_vertex(self) -> bool:
        return not self.edges

    @property
    def label(self) -> str:
        return self.src if self.is_vertex else ".".join(self.edges)

    def __repr__(self) -> str:
        return f"Path({self.label})"


@dataclass(frozen=True, slots=True)
class Diagram:
    """The subgraph traced by a path: visited vertices and traversed edges,
    both taken as plain sets (no multiplicity, no traversal order)."""

    vertices: frozenset[str]
    edges: frozenset[str]


def diagram(path: Path) -> Diagram:
    if path.is_vertex:
        return Diagram(frozenset({path.src}), frozenset())
    seen = {path.src}
    for eid in path.edges:
        seen.add(path.graph.edge(eid).rng)
    return Diagram(frozenset(seen), frozenset(path.edges))


def diagram_distinct(w1: Path, w2: Path) -> bool:
    """True when the two paths trace different subgraphs."""
    return diagram(w1) != diagram(w2)


def try_concat(p: Path, q: Path) -> Optional[Path]:
    """Concatenation, or ``None`` when the endpoints do not match."""
    if p.rng != q.src:
        return None
    if p.is_vertex:
        return q
    if q.is_vertex:
        return p
    return Path(p.graph, p.src, q.rng, p.edges + q.edges)


def concat(p: Path, q: Path) -> Path:
    """Compose two paths; vertices act as one-sided units.

    Raises :class:`InadmissibleError` when ``rng(p) != src(q)`` (the product
    of the corresponding operators is zero).
    """
    if p.graph is not q.graph:
        raise GraphError("paths live on different graphs")
    out = try_concat(p, q)
    if out is None:
        raise InadmissibleError(
            f"cannot compose {p.label!r} (range {p.rng!r}) "
            f"with {q.label!r} (source {q.src!r})")
    return out


def enumerate_semigroupoid(graph: DirectedGraph, max_len: int) -> list[Path]:
    """All vertices and admissible paths of length at most ``max_len``.

    Vertices come first in declaration order, then paths ordered by length
    and lexicographically by their edge-id tuples.
    """
    if max_len < 0:
        raise GraphError("max_len must be nonnegative")
    out: list[Path] = [graph.vertex(v) for v in graph.vertices]
    level = [graph.vertex(v) for v in graph.vertices]
    for _ in range(max_len):
        nxt = []
        for p in level:
            for e in graph.out_edges(p.rng):
                nxt.append(Path(graph, p.src if p.edges else e.src,
                                e.rng, p.edges + (e.id,)))
        nxt.sort(key=lambda w: w.edges)
        out.extend(nxt)
        if not nxt:
            break
        level = nxt
    return out


def loops_at(graph: DirectedGraph, v: str, max_len: int) -> list[Path]:
    """All loops based at ``v`` (length >= 1) up to ``max_len``."""
    graph.require_vertex(v)
    return [w for w in enumerate_semigroupoid(graph, max_len)
            if w.edges and w.src == v and w.rng == v]


def paths_from_to(graph: DirectedGraph, v1: str, v2: str,
                  max_len: int) -> list[Path]:
    """All paths ``w = v1 w v2`` (length >= 1) up to ``max_len``."""
    graph.require_vertex(v1)
    graph.require_vertex(v2)
    return [w for w in enumerate_semigroupoid(graph, max_len)
            if w.edges and w.src == v1 and w.rng == v2]


def load_graph(document: Mapping) -> DirectedGraph:
    """Build a graph from its JSON document form.

    Expected shape::

        {"vertices": ["v1", ...],
         "edges": [{"id": "e1", "src": "v1", "rng": "v2"}, ...]}
    """
    if not isinstance(document, Mapping):
        raise GraphError("graph document must be a JSON object")
    vertices = document.get("vertices")
    if not isinstance(vertices, Sequence) or isinstance(vertices, str):
        raise GraphError('graph document needs a "vertices" list')
    raw_edges = document.get("edges", [])
    if not isinstance(raw_edges, Sequence) or isinstance(raw_edges, str):
        raise GraphError('"edges" must be a list')
    edges = []
    for item in raw_edges:
        if not isinstance(item, Mapping):
            raise GraphError("each edge must be an object")
        try:
            edges.append(Edge(str(item["id"]), str(item["src"]),
                              str(item["rng"])))
        except KeyError as missing:
            raise GraphError(f"edge is missing key {missing}") from None
    return DirectedGraph(vertices, edges)


def graph_to_document(graph: DirectedGraph) -> dict:
    return {
        "vertices": list(graph.vertices),
        "edges": [{"id": e.id, "src": e.src, "rng": e.rng}
                  for e in graph.edges],
    }
