"""Sparse matrix model of the generators on the truncated path space.

The path space of a graph carries one basis vector per semigroupoid
element.  A creation generator acts by left concatenation, its adjoint by
stripping the prefix; truncating at a finite depth turns both into finite
0/1 matrices.  This gives a route to diagonal expectations that shares no
code with the symbolic reduction engine, which is what makes it an oracle
for the Toeplitz model.

Truncation can only lose vectors, never invent them, so a computed value
is reliable exactly when no intermediate vector can outgrow the basis.
The guard below bounds the running height of the word read in both
directions (a word is applied right to left, its adjoint left to right).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from .expr import DiagonalElement
from .graph import DirectedGraph, Path, enumerate_semigroupoid
from .words import Letter, lattice_path


class DepthExceededError(ValueError):
    pass


class TruncationRiskError(ValueError):
    """The requested depth cannot rule out truncation artifacts."""


class FockBasis:
    """Ordered basis of all paths up to a depth bound."""

    __slots__ = ("graph", "depth", "paths", "index")

    def __init__(self, graph: DirectedGraph, depth: int):
        object.__setattr__(self, "graph", graph)
        object.__setattr__(self, "depth", depth)
        object.__setattr__(self, "paths", tuple(enumerate_semigroupoid(graph, depth)))
        object.__setattr__(self, "index",
                           {p: i for i, p in enumerate(self.paths)})

    def __setattr__(self, name, value):
        raise AttributeError("FockBasis is immutable")

    def __len__(self) -> int:
        return len(self.paths)

    def __repr__(self) -> str:
        return f"FockBasis(depth={self.depth}, size={len(self)})"


@dataclass(frozen=True)
class SparseOperator:
    """An exact sparse matrix over a path basis; entries are integers."""

    basis: FockBasis
    entries: tuple[tuple[tuple[int, int], int], ...]

    @classmethod
    def from_dict(cls, basis: FockBasis,
                  data: dict[tuple[int, int], int]) -> "SparseOperator":
        clean = {rc: v for rc, v in data.items() if v}
        return cls(basis, tuple(sorted(clean.items())))

    def as_dict(self) -> dict[tuple[int, int], int]:
        return dict(self.entries)

    def transpose(self) -> "SparseOperator":
        return SparseOperator(
            self.basis,
            tuple(sorted((((c, r), v) for (r, c), v in self.entries))))

    def column_map(self) -> dict[int, list[tuple[int, int]]]:
        cols: dict[int, list[tuple[int, int]]] = {}
        for (r, c), v in self.entries:
            cols.setdefault(c, []).append((r, v))
        return cols

    def apply_index(self, col: int) -> Optional[int]:
        """Image basis index of one basis vector, for partial-map
        operators (each column holds at most a single 1)."""
        hits = [r for (r, c), v in self.entries if c == col and v]
        if not hits:
            return None
        if len(hits) > 1:
            raise ValueError("operator is not a partial map on the basis")
        return hits[0]

    def __matmul__(self, other: "SparseOperator") -> "SparseOperator":
        if self.basis is not other.basis:
            raise ValueError("operators live on different bases")
        cols = self.column_map()
        out: dict[tuple[int, int], int] = {}
        for (mid, c), v in other.entries:
            for r, w in cols.get(mid, ()):
                key = (r, c)
                out[key] = out.get(key, 0) + w * v
        return SparseOperator.from_dict(self.basis, out)


def _letter_partial_map(letter: Letter, basis: FockBasis) -> list[Optional[int]]:
    """Image index per basis index (None = killed), as a flat table."""
    graph = basis.graph
    w = letter.path
    table: list[Optional[int]] = [None] * len(basis)
    if letter.star:
        # Vertex letters are normalised to star=False, so w has length >= 1
        # and h = w . rest is equivalent to h starting with w's edges.
        k = len(w.edges)
        for i, h in enumerate(basis.paths):
            if len(h.edges) >= k and h.edges[:k] == w.edges:
                rest = (graph.vertex(w.rng) if len(h.edges) == k
                        else Path(graph, w.rng, h.rng, h.edges[k:]))
                table[i] = basis.index[rest]
    else:
        for i, h in enumerate(basis.paths):
            if h.src != w.rng:
                continue
            if w.is_vertex:
                table[i] = i
                continue
            grown = Path(graph, w.src, h.rng, w.edges + h.edges)
            j = basis.index.get(grown)
            if j is not None:
                table[i] = j
    return table


def build_generator(letter: Letter, basis: FockBasis) -> SparseOperator:
    """Matrix of one generator at the basis depth.

    Creation maps a path to its left extension when that still fits in
    the basis; annihilation strips the prefix.  The two are exact matrix
    transposes of each other.
    """
    if letter.path.length > basis.depth:
        raise DepthExceededError(
            f"path {letter.path.label!r} is longer than the basis depth")
    table = _letter_partial_map(letter, basis)
    data = {(r, c): 1 for c, r in enumerate(table) if r is not None}
    return SparseOperator.from_dict(basis, data)


def required_depth(word: Sequence[Letter]) -> int:
    """Smallest basis depth at which the word's expectation is exact.

    Bounds the running height of the word read in either direction:
    right-to-left heights are what the vector chains reach, and the
    left-to-right maximum covers the adjoint word, so the guard is
    symmetric under taking adjoints.
    """
    lp = lattice_path(word)
    return max(0, lp.max_height, lp.max_suffix_height)


def oracle_expectation(graph: DirectedGraph, word: Sequence[Letter],
                       depth: Optional[int] = None,
                       basis: Optional[FockBasis] = None) -> DiagonalElement:
    """Diagonal expectation of a generator word from the matrix model.

    Follows each vertex vector through the word (rightmost letter first)
    and records which vertices return to themselves.  Raises
    :class:`TruncationRiskError` when the depth cannot be trusted.
    """
    word = tuple(word)
    need = required_depth(word)
    if basis is not None:
        if basis.depth < need:
            raise TruncationRiskError(
                f"word needs depth {need}, basis has {basis.depth}")
    else:
        if depth is None:
            depth = need
        if depth < need:
            raise TruncationRiskError(
                f"word needs depth {need}, got {depth}")
        basis = FockBasis(graph, depth)
    tables = [_letter_partial_map(letter, basis) for letter in word]
    hits = {}
    for v in graph.vertices:
        i: Optional[int] = basis.index[graph.vertex(v)]
        for table in reversed(tables):
            i = table[i]
            if i is None:
                break
        if i is not None and basis.paths[i].is_vertex \
                and basis.paths[i].src == v:
            hits[v] = 1
    return DiagonalElement(graph, hits)
