"""Diagonal, off-diagonal and projection compressions of expansions.

Compressing by vertex projections acts on a Fourier expansion as a pure
term filter: ``L[v] L[w] L[v']`` keeps ``L[w]`` exactly when ``w`` runs
from ``v`` to ``v'``, and kills it otherwise.  The three compressions
below are implemented that way (and a randomised test checks the filter
against literal three-factor products).

The freeness checkers are one-sided: they answer ``FREE`` only when a
sufficient support condition holds, and ``UNKNOWN`` otherwise.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import NamedTuple, Optional, Sequence, Union

from .expr import (DiagonalElement, FourierExpr, expectation,
                   expectation_of_product, support)
from .cumulants import cumulant, default_diag_samples
from .graph import DirectedGraph, Path, UnknownVertexError, diagram_distinct
from .words import Letter, Model


class SameVertexError(ValueError):
    pass


@dataclass(frozen=True)
class VertexSet:
    """An ordered duplicate-free set of vertices with its sum projection."""

    graph: DirectedGraph
    vertices: tuple[str, ...]

    def __post_init__(self) -> None:
        if not self.vertices:
            raise ValueError("vertex set must be nonempty")
        if len(set(self.vertices)) != len(self.vertices):
            raise ValueError("vertex set has duplicates")
        for v in self.vertices:
            self.graph.require_vertex(v)

    def projection(self) -> DiagonalElement:
        return DiagonalElement(self.graph, {v: 1 for v in self.vertices})

    def projection_expr(self) -> FourierExpr:
        return self.projection().to_expr()


VertexSetLike = Union[VertexSet, Sequence[str]]


def _vertex_set(graph: DirectedGraph, vs: VertexSetLike) -> VertexSet:
    if isinstance(vs, VertexSet):
        return vs
    return VertexSet(graph, tuple(vs))


def diagonal_compress(a: FourierExpr, vs: VertexSetLike) -> FourierExpr:
    """Sum of the corner compressions ``L[v] a L[v]`` over the vertex set.

    Keeps vertex terms inside the set and loop terms based at it; every
    other term dies.
    """
    vset = set(_vertex_set(a.graph, vs).vertices)
    kept = {}
    for letter, coeff in a.terms.items():
        p = letter.path
        if p.is_vertex:
            if p.src in vset:
                kept[letter] = coeff
        elif p.src == p.rng and p.src in vset:
            kept[letter] = coeff
    return FourierExpr(a.graph, kept)


def off_diagonal_compress(a: FourierExpr, v1: str, v2: str) -> FourierExpr:
    """The corner ``L[v1] a L[v2]`` for two distinct vertices.

    Keeps creation terms along paths from ``v1`` to ``v2`` and
    annihilation terms along paths from ``v2`` to ``v1``; vertex terms
    always die.
    """
    a.graph.require_vertex(v1)
    a.graph.require_vertex(v2)
    if v1 == v2:
        raise SameVertexError(
            "off-diagonal compression needs two distinct vertices; "
            "use diagonal_compress for a corner at one vertex")
    kept = {}
    for letter, coeff in a.terms.items():
        p = letter.path
        if p.is_vertex:
            continue
        if letter.star:
            if p.src == v2 and p.rng == v1:
                kept[letter] = coeff
        elif p.src == v1 and p.rng == v2:
            kept[letter] = coeff
    return FourierExpr(a.graph, kept)


class CompressionSplit(NamedTuple):
    full: FourierExpr
    diagonal: FourierExpr
    off_diagonal: FourierExpr


def projection_compress(a: FourierExpr, vs: VertexSetLike) -> CompressionSplit:
    """Compression ``P a P`` by the sum projection of a vertex set.

    Returns the full corner together with its diagonal part (loops and
    vertices) and off-diagonal part (paths between distinct vertices of
    the set); the three are computed independently and satisfy
    ``full == diagonal + off_diagonal`` term by term.
    """
    vset = _vertex_set(a.graph, vs)
    members = set(vset.vertices)
    kept = {}
    for letter, coeff in a.terms.items():
        p = letter.path
        if p.is_vertex:
            if p.src in members:
                kept[letter] = coeff
        elif p.src in members and p.rng in members:
            kept[letter] = coeff
    full = FourierExpr(a.graph, kept)
    diag = diagonal_compress(a, vset)
    off = FourierExpr.zero(a.graph)
    for v1 in vset.vertices:
        for v2 in vset.vertices:
            if v1 != v2:
                off = off + off_diagonal_compress(a, v1, v2)
    return CompressionSplit(full, diag, off)


def check_offdiag_vanishing(a: FourierExpr, v1: str, v2: str, n_max: int,
                            model: Model,
                            d_samples: Optional[Sequence] = None) -> bool:
    """All moments and cumulants of ``L[v1] a L[v2]`` must vanish.

    A ``False`` here means an engine bug, not a property of ``a``.
    """
    x = off_diagonal_compress(a, v1, v2)
    if not expectation(x).is_zero:
        return False
    if d_samples is None:
        d_samples = default_diag_samples(a.graph, n_max)
    for n in range(1, n_max + 1):
        for sample in d_samples:
            args = tuple((d, x) for d in sample[:n])
            if not expectation_of_product(args, model).is_zero:
                return False
            if not cumulant(args, model).is_zero:
                return False
    return True


class Freeness(Enum):
    FREE = "free"
    UNKNOWN = "unknown"


@dataclass(frozen=True)
class FreenessVerdict:
    status: Freeness
    reason: str

    @property
    def is_free(self) -> bool:
        return self.status is Freeness.FREE

    def __repr__(self) -> str:
        return f"FreenessVerdict({self.status.value}: {self.reason})"


def _prefix_comparable(w1: Path, w2: Path) -> bool:
    n = min(len(w1.edges), len(w2.edges))
    return w1.edges[:n] == w2.edges[:n]


def freeness_sufficient(a: FourierExpr, b: FourierExpr) -> FreenessVerdict:
    """Sufficient support condition for amalgamated freeness.

    Answers ``FREE`` when every path in one support is diagram-distinct
    from and prefix-incomparable with every path in the other support.
    Diagram-distinctness alone is not enough: when one path extends
    another (``w`` versus ``w h``) the generators are literally
    multiplicatively dependent and a nonvanishing mixed cumulant of order
    four exists, so prefix-comparable pairs are never certified.  Vertex
    terms are diagonal and never obstruct freeness.
    """
    pa = support(a).all_paths
    pb = support(b).all_paths
    for w1 in sorted(pa, key=lambda p: (p.length, p.edges)):
        for w2 in sorted(pb, key=lambda p: (p.length, p.edges)):
            if not diagram_distinct(w1, w2):
                return FreenessVerdict(
                    Freeness.UNKNOWN,
                    f"paths {w1.label!r} and {w2.label!r} share a diagram")
            if _prefix_comparable(w1, w2):
                return FreenessVerdict(
                    Freeness.UNKNOWN,
                    f"path {w1.label!r} is prefix-comparable with {w2.label!r}")
    return FreenessVerdict(
        Freeness.FREE,
        "supports are diagram-distinct and prefix-incomparable")


def _loops_of(a: FourierExpr, at: Optional[str] = None) -> frozenset[Path]:
    paths = support(a).all_paths
    return frozenset(p for p in paths
                     if p.src == p.rng and (at is None or p.src == at))


def _non_loops_of(a: FourierExpr) -> frozenset[Path]:
    return frozenset(p for p in support(a).all_paths if p.src != p.rng)


def diagonal_compression_freeness(a: FourierExpr, b: FourierExpr,
                                  vs: VertexSetLike) -> FreenessVerdict:
    """Disjointness conditions under which the diagonal compressions of
    two elements by one vertex set are free."""
    vset = _vertex_set(a.graph, vs)
    members = set(vset.vertices)
    va = support(a).vertices & members
    vb = support(b).vertices & members
    if va & vb:
        return FreenessVerdict(
            Freeness.UNKNOWN, f"shared compressed vertices {sorted(va & vb)}")
    la = {p for v in members for p in _loops_of(a, v)}
    lb = {p for v in members for p in _loops_of(b, v)}
    if la & lb:
        shared = sorted(p.label for p in la & lb)
        return FreenessVerdict(
            Freeness.UNKNOWN, f"shared compressed loops {shared}")
    return FreenessVerdict(
        Freeness.FREE, "compressed vertex and loop supports are disjoint")


def projection_compression_freeness(a: FourierExpr, b: FourierExpr,
                                    vs: VertexSetLike) -> FreenessVerdict:
    """Conditions under which ``PaP`` and ``PbP`` are free: the diagonal
    conditions plus literal disjointness of the non-loop supports."""
    base = diagonal_compression_freeness(a, b, vs)
    if not base.is_free:
        return base
    na, nb = _non_loops_of(a), _non_loops_of(b)
    if na & nb:
        shared = sorted(p.label for p in na & nb)
        return FreenessVerdict(
            Freeness.UNKNOWN, f"shared non-loop support {shared}")
    return FreenessVerdict(
        Freeness.FREE,
        "compressed supports and non-loop supports are disjoint")


def same_element_compression_freeness(a: FourierExpr, vs1: VertexSetLike,
                                      vs2: VertexSetLike) -> FreenessVerdict:
    """Conditions under which two projection compressions of one element
    (by two vertex sets) are free."""
    set1 = _vertex_set(a.graph, vs1)
    set2 = _vertex_set(a.graph, vs2)
    va = support(a).vertices
    shared_vertices = (set(set1.vertices) & va) & (set(set2.vertices) & va)
    if shared_vertices:
        return FreenessVerdict(
            Freeness.UNKNOWN,
            f"shared compressed vertices {sorted(shared_vertices)}")
    l1 = {p for v in set1.vertices for p in _loops_of(a, v)}
    l2 = {p for v in set2.vertices for p in _loops_of(a, v)}
    if l1 & l2:
        shared = sorted(p.label for p in l1 & l2)
        return FreenessVerdict(
            Freeness.UNKNOWN, f"shared compressed loops {shared}")
    return FreenessVerdict(
        Freeness.FREE, "the two compressions touch disjoint support")


def closed_form_first_cumulant(d: DiagonalElement, a: FourierExpr,
                               vs: VertexSetLike) -> DiagonalElement:
    """First cumulant of ``d (PaP)`` straight from the coefficients:
    the sum of ``q_v p_v L[v]`` over compressed vertices carrying both."""
    vset = _vertex_set(a.graph, vs)
    out = {}
    for v in vset.vertices:
        value = d.get(v) * a.coefficient(Letter(a.graph.vertex(v)))
        if not value.is_zero:
            out[v] = value
    return DiagonalElement(a.graph, out)


@dataclass(frozen=True)
class CumulantEqualityWitness:
    order: int
    sample_index: int
    compressed: DiagonalElement
    diagonal_only: DiagonalElement

    def __str__(self) -> str:
        return (f"k_{self.order} sample {self.sample_index}: "
                f"{self.compressed.text()} != {self.diagonal_only.text()}")


def cumulant_equality_check(
        a: FourierExpr, vs: VertexSetLike, n_max: int,
        d_samples: Optional[Sequence] = None,
        model: Model = Model.CK
) -> tuple[bool, Optional[CumulantEqualityWitness]]:
    """Compare every cumulant of ``PaP`` with that of its diagonal part.

    Also checks the closed form of the first cumulant.  Returns the first
    order and sample where the two disagree, if any.
    """
    vset = _vertex_set(a.graph, vs)
    full, diag, _ = projection_compress(a, vset)
    if d_samples is None:
        d_samples = default_diag_samples(a.graph, n_max)
    for idx, sample in enumerate(d_samples):
        k1 = cumulant(((sample[0], full),), model)
        closed = closed_form_first_cumulant(sample[0], a, vset)
        if k1 != closed:
            return False, CumulantEqualityWitness(1, idx, k1, closed)
    for n in range(1, n_max + 1):
        for idx, sample in enumerate(d_samples):
            lhs = cumulant(tuple((d, full) for d in sample[:n]), model)
            rhs = cumulant(tuple((d, diag) for d in sample[:n]), model)
            if lhs != rhs:
                return False, CumulantEqualityWitness(n, idx, lhs, rhs)
    return True, None
