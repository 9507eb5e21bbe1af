"""Linear combinations of generators and the diagonal expectation.

A Fourier expansion is a finite sum ``sum_w p_w L[w]^(u_w)`` with exact
complex-rational coefficients.  The conditional expectation onto the
diagonal subalgebra keeps exactly the vertex terms; it is the functional
every moment and cumulant computation funnels through.

Products of expansions leave the span of single generators: the Toeplitz
model produces genuine two-sided monomials ``L[a] L*[b]``.  Those live in
:class:`OperatorSum`, a separate container keyed by normal forms, and are
annihilated by the expectation, so they never leak into diagonal results.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from types import MappingProxyType
from typing import Iterable, Mapping, Sequence, Union

from .graph import DirectedGraph, Path, UnknownVertexError
from .scalars import Scalar, ScalarLike
from .words import (Letter, Model, NormalForm, ONE, Pair, Word, ZERO,
                    append_letter, letter_pair, multiply_pairs, reduce_word)


def _merged(into: dict, key, coeff: Scalar) -> None:
    acc = into.get(key, None)
    total = coeff if acc is None else acc + coeff
    if total.is_zero:
        into.pop(key, None)
    else:
        into[key] = total


class FourierExpr:
    """An exact linear combination of generator letters over one graph."""

    __slots__ = ("graph", "_terms", "_hash")

    def __init__(self, graph: DirectedGraph,
                 terms: Union[Mapping[Letter, ScalarLike],
                              Iterable[tuple[Letter, ScalarLike]]] = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        data: dict[Letter, Scalar] = {}
        for letter, coeff in items:
            _merged(data, letter, Scalar.of(coeff))
        object.__setattr__(self, "graph", graph)
        object.__setattr__(self, "_terms", data)
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):
        raise AttributeError("FourierExpr is immutable")

    @property
    def terms(self) -> Mapping[Letter, Scalar]:
        return MappingProxyType(self._terms)

    @classmethod
    def zero(cls, graph: DirectedGraph) -> "FourierExpr":
        return cls(graph)

    @classmethod
    def creation(cls, path: Path, coeff: ScalarLike = 1) -> "FourierExpr":
        return cls(path.graph, [(Letter(path), coeff)])

    @classmethod
    def annihilation(cls, path: Path, coeff: ScalarLike = 1) -> "FourierExpr":
        return cls(path.graph, [(Letter(path, star=True), coeff)])

    @classmethod
    def vertex(cls, graph: DirectedGraph, v: str,
               coeff: ScalarLike = 1) -> "FourierExpr":
        return cls(graph, [(Letter(graph.vertex(v)), coeff)])

    @classmethod
    def identity(cls, graph: DirectedGraph) -> "FourierExpr":
        """The unit, i.e. the sum of all vertex projections."""
        return cls(graph, [(Letter(graph.vertex(v)), 1)
                           for v in graph.vertices])

    @property
    def is_zero(self) -> bool:
        return not self._terms

    def coefficient(self, letter: Letter) -> Scalar:
        return self._terms.get(letter, Scalar())

    def __add__(self, other: "FourierExpr") -> "FourierExpr":
        if not isinstance(other, FourierExpr):
            return NotImplemented
        data = dict(self._terms)
        for letter, coeff in other._terms.items():
            _merged(data, letter, coeff)
        return FourierExpr(self.graph, data)

    def __sub__(self, other: "FourierExpr") -> "FourierExpr":
        return self + (-other)

    def __neg__(self) -> "FourierExpr":
        return FourierExpr(self.graph,
                           {l: -c for l, c in self._terms.items()})

    def __mul__(self, factor: ScalarLike) -> "FourierExpr":
        if isinstance(factor, FourierExpr):
            raise TypeError("use multiply(x, y, model) for operator products")
        s = Scalar.of(factor)
        return FourierExpr(self.graph,
                           {l: c * s for l, c in self._terms.items()})

    __rmul__ = __mul__

    def adjoint(self) -> "FourierExpr":
        return FourierExpr(self.graph,
                           {l.adjoint: c.conjugate()
                            for l, c in self._terms.items()})

    def __eq__(self, other) -> bool:
        return isinstance(other, FourierExpr) and self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            object.__setattr__(self, "_hash",
                               hash(frozenset(self._terms.items())))
        return self._hash

    def text(self) -> str:
        if not self._terms:
            return "0"
        parts = [f"{c.text()} {l.text}" for l, c in sorted(
            self._terms.items(), key=lambda kv: (kv[0].star, kv[0].path.edges,
                                                 kv[0].path.src))]
        return " + ".join(parts).replace("+ -", "- ")

    def __repr__(self) -> str:
        return f"FourierExpr({self.text()})"


class DiagonalElement:
    """An element of the diagonal subalgebra: a map vertex -> scalar."""

    __slots__ = ("graph", "_coeffs", "_hash")

    def __init__(self, graph: DirectedGraph,
                 coeffs: Union[Mapping[str, ScalarLike],
                               Iterable[tuple[str, ScalarLike]]] = ()):
        items = coeffs.items() if isinstance(coeffs, Mapping) else coeffs
        data: dict[str, Scalar] = {}
        for v, coeff in items:
            if not graph.has_vertex(v):
                raise UnknownVertexError(f"unknown vertex {v!r}")
            _merged(data, v, Scalar.of(coeff))
        object.__setattr__(self, "graph", graph)
        object.__setattr__(self, "_coeffs", data)
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):
        raise AttributeError("DiagonalElement is immutable")

    @classmethod
    def zero(cls, graph: DirectedGraph) -> "DiagonalElement":
        return cls(graph)

    @classmethod
    def identity(cls, graph: DirectedGraph) -> "DiagonalElement":
        return cls(graph, {v: 1 for v in graph.vertices})

    @classmethod
    def vertex_projection(cls, graph: DirectedGraph, v: str) -> "DiagonalElement":
        return cls(graph, {v: 1})

    @property
    def coeffs(self) -> Mapping[str, Scalar]:
        return MappingProxyType(self._coeffs)

    @property
    def is_zero(self) -> bool:
        return not self._coeffs

    def get(self, v: str) -> Scalar:
        return self._coeffs.get(v, Scalar())

    def items(self):
        return self._coeffs.items()

    def __add__(self, other: "DiagonalElement") -> "DiagonalElement":
        data = dict(self._coeffs)
        for v, c in other._coeffs.items():
            _merged(data, v, c)
        return DiagonalElement(self.graph, data)

    def __sub__(self, other: "DiagonalElement") -> "DiagonalElement":
        return self + (-other)

    def __neg__(self) -> "DiagonalElement":
        return DiagonalElement(self.graph,
                               {v: -c for v, c in self._coeffs.items()})

    def __mul__(self, other) -> "DiagonalElement":
        if isinstance(other, DiagonalElement):
            keys = self._coeffs.keys() & other._coeffs.keys()
            return DiagonalElement(
                self.graph, {v: self._coeffs[v] * other._coeffs[v]
                             for v in keys})
        s = Scalar.of(other)
        return DiagonalElement(self.graph,
                               {v: c * s for v, c in self._coeffs.items()})

    def __rmul__(self, other) -> "DiagonalElement":
        return self.__mul__(other)

    def to_expr(self) -> FourierExpr:
        return FourierExpr(self.graph,
                           [(Letter(self.graph.vertex(v)), c)
                            for v, c in self._coeffs.items()])

    def __eq__(self, other) -> bool:
        return (isinstance(other, DiagonalElement)
                and self._coeffs == other._coeffs)

    def __hash__(self) -> int:
        if self._hash is None:
            object.__setattr__(self, "_hash",
                               hash(frozenset(self._coeffs.items())))
        return self._hash

    def text(self) -> str:
        if not self._coeffs:
            return "0"
        parts = [f"{c.text()} L[{v}]"
                 for v, c in sorted(self._coeffs.items())]
        return " + ".join(parts).replace("+ -", "- ")

    def __repr__(self) -> str:
        return f"DiagonalElement({self.text()})"


@dataclass(frozen=True, slots=True)
class Support:
    """Three-way split of the paths and vertices carrying an expansion.

    ``paired_paths`` holds paths whose creation and annihilation generators
    both appear; ``unpaired_paths`` the rest.  Only vertices and paired
    paths can ever contribute to diagonal moments.
    """

    vertices: frozenset[str]
    paired_paths: frozenset[Path]
    unpaired_paths: frozenset[Path]

    @property
    def all_paths(self) -> frozenset[Path]:
        return self.paired_paths | self.unpaired_paths


def support(a: FourierExpr) -> Support:
    vertices = set()
    created, annihilated = set(), set()
    for letter in a.terms:
        if letter.path.is_vertex:
            vertices.add(letter.path.src)
        elif letter.star:
            annihilated.add(letter.path)
        else:
            created.add(letter.path)
    paired = created & annihilated
    return Support(frozenset(vertices), frozenset(paired),
                   frozenset((created | annihilated) - paired))


def expectation(a: Union[FourierExpr, "OperatorSum"]) -> DiagonalElement:
    """Project onto the diagonal subalgebra (keep vertex terms only)."""
    if isinstance(a, OperatorSum):
        return a.expectation()
    return DiagonalElement(a.graph,
                           [(l.path.src, c) for l, c in a.terms.items()
                            if l.path.is_vertex])


def scale_left(d: DiagonalElement, a: FourierExpr) -> FourierExpr:
    """The product ``d * a`` (left action of the diagonal algebra)."""
    out = {}
    for letter, coeff in a.terms.items():
        v = letter.path.rng if letter.star else letter.path.src
        q = d.get(v)
        if q:
            out[letter] = coeff * q
    return FourierExpr(a.graph, out)


def scale_right(a: FourierExpr, d: DiagonalElement) -> FourierExpr:
    """The product ``a * d`` (right action of the diagonal algebra)."""
    out = {}
    for letter, coeff in a.terms.items():
        v = letter.path.src if letter.star else letter.path.rng
        q = d.get(v)
        if q:
            out[letter] = coeff * q
    return FourierExpr(a.graph, out)


class OperatorSum:
    """A linear combination of normal-form monomials ``L[a] L*[b]``.

    This is the closure of Fourier expansions under multiplication; the
    two-sided monomials with both sides of positive length are exactly the
    product residue the expectation kills.
    """

    __slots__ = ("graph", "_terms", "_hash")

    def __init__(self, graph: DirectedGraph,
                 terms: Union[Mapping[NormalForm, ScalarLike],
                              Iterable[tuple[NormalForm, ScalarLike]]] = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        data: dict[NormalForm, Scalar] = {}
        for nf, coeff in items:
            if nf is ZERO:
                continue
            _merged(data, nf, Scalar.of(coeff))
        object.__setattr__(self, "graph", graph)
        object.__setattr__(self, "_terms", data)
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):
        raise AttributeError("OperatorSum is immutable")

    @property
    def terms(self) -> Mapping[NormalForm, Scalar]:
        return MappingProxyType(self._terms)

    @classmethod
    def from_expr(cls, a: FourierExpr) -> "OperatorSum":
        return cls(a.graph, [(letter_pair(l), c) for l, c in a.terms.items()])

    @classmethod
    def from_word(cls, graph: DirectedGraph, word: Sequence[Letter],
                  model: Model) -> "OperatorSum":
        return cls(graph, [(reduce_word(word, model), 1)])

    @property
    def is_zero(self) -> bool:
        return not self._terms

    def __add__(self, other: "OperatorSum") -> "OperatorSum":
        data = dict(self._terms)
        for nf, c in other._terms.items():
            _merged(data, nf, c)
        return OperatorSum(self.graph, data)

    def __mul__(self, factor: ScalarLike) -> "OperatorSum":
        s = Scalar.of(factor)
        return OperatorSum(self.graph,
                           {nf: c * s for nf, c in self._terms.items()})

    __rmul__ = __mul__

    def expectation(self) -> DiagonalElement:
        out: dict[str, Scalar] = {}
        for nf, coeff in self._terms.items():
            if nf is ONE:
                for v in self.graph.vertices:
                    _merged(out, v, coeff)
            elif nf.is_vertex:
                _merged(out, nf.vertex, coeff)
        return DiagonalElement(self.graph, out)

    def to_expr(self) -> FourierExpr:
        """Convert back when no genuine two-sided monomial is present.

        Raises ``ValueError`` if some term is irreducibly two-sided.
        """
        acc: list[tuple[Letter, Scalar]] = []
        for nf, coeff in self._terms.items():
            if nf is ONE:
                acc.extend((Letter(self.graph.vertex(v)), coeff)
                           for v in self.graph.vertices)
            elif nf.right.is_vertex:
                acc.append((Letter(nf.left), coeff))
            elif nf.left.is_vertex:
                acc.append((Letter(nf.right, star=True), coeff))
            else:
                raise ValueError(f"{nf!r} has no single-generator form")
        return FourierExpr(self.graph, acc)

    def __eq__(self, other) -> bool:
        return isinstance(other, OperatorSum) and self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            object.__setattr__(
                self, "_hash", hash(frozenset(self._terms.items())))
        return self._hash

    def __repr__(self) -> str:
        if not self._terms:
            return "OperatorSum(0)"
        body = " + ".join(f"{c.text()}*{nf!r}"
                          for nf, c in self._terms.items())
        return f"OperatorSum({body})"


Multiplicand = Union[FourierExpr, OperatorSum, Sequence[Letter]]


def _as_sum(x: Multiplicand, model: Model) -> OperatorSum:
    if isinstance(x, OperatorSum):
        return x
    if isinstance(x, FourierExpr):
        return OperatorSum.from_expr(x)
    word = tuple(x)
    if not word:
        raise ValueError("cannot infer the graph of an empty word")
    return OperatorSum.from_word(word[0].path.graph, word, model)


def multiply(x: Multiplicand, y: Multiplicand, model: Model) -> OperatorSum:
    """Bilinear extension of word reduction to linear combinations."""
    xs, ys = _as_sum(x, model), _as_sum(y, model)
    data: dict[NormalForm, Scalar] = {}
    for nf1, c1 in xs.terms.items():
        for nf2, c2 in ys.terms.items():
            prod = multiply_pairs(nf1, nf2, model)
            if prod is not ZERO:
                _merged(data, prod, c1 * c2)
    return OperatorSum(xs.graph, data)


MomentFactor = tuple[DiagonalElement, FourierExpr]


@lru_cache(maxsize=65536)
def _expectation_of_product(factors: tuple[MomentFactor, ...],
                            model: Model) -> DiagonalElement:
    graph = factors[0][1].graph
    states: dict[NormalForm, Scalar] = {ONE: Scalar.of(1)}
    for d, a in factors:
        # Absorb the diagonal factor: right multiplication by L[v] keeps a
        # normal form exactly when v is the source of its annihilation side.
        staged: dict[NormalForm, Scalar] = {}
        for nf, c in states.items():
            if nf is ONE:
                for v, q in d.items():
                    vp = graph.vertex(v)
                    _merged(staged, Pair(vp, vp), c * q)
            else:
                q = d.get(nf.right.src)
                if q:
                    _merged(staged, nf, c * q)
        # Absorb the expansion letter by letter.
        states = {}
        for nf, c in staged.items():
            for letter, p in a.terms.items():
                grown = append_letter(nf, letter, model)
                if grown is not ZERO:
                    _merged(states, grown, c * p)
        if not states:
            return DiagonalElement.zero(graph)
    out: dict[str, Scalar] = {}
    for nf, c in states.items():
        if nf is ONE:
            for v in graph.vertices:
                _merged(out, v, c)
        elif nf.is_vertex:
            _merged(out, nf.vertex, c)
    return DiagonalElement(graph, out)


def expectation_of_product(factors: Sequence[MomentFactor],
                           model: Model) -> DiagonalElement:
    """Exact diagonal expectation of ``d_1 a_1 d_2 a_2 ... d_n a_n``.

    Evaluated as a running sum over normal-form states, which agrees with
    expanding into generator words and summing the expectations of the
    balanced ones.
    """
    factors = tuple(factors)
    if not factors:
        raise ValueError("need at least one factor")
    return _expectation_of_product(factors, model)


def trivial_moment(a: FourierExpr, n: int, model: Model) -> DiagonalElement:
    """The diagonal expectation of the n-th power of ``a``."""
    one = DiagonalElement.identity(a.graph)
    return expectation_of_product(((one, a),) * n, model)


def expr_to_document(a: FourierExpr) -> dict:
    """Serialise to the element JSON format."""
    terms = []
    for letter, coeff in sorted(a.terms.items(),
                                key=lambda kv: (kv[0].path.edges,
                                                kv[0].path.src, kv[0].star)):
        terms.append({
            "path": letter.path.label,
            "star": letter.star,
            "re": str(coeff.re),
            "im": str(coeff.im),
        })
    return {"terms": terms}


def expr_from_document(graph: DirectedGraph, document: Mapping) -> FourierExpr:
    """Parse the element JSON format against a graph."""
    if not isinstance(document, Mapping) or "terms" not in document:
        raise ValueError('element document needs a "terms" list')
    acc = []
    for item in document["terms"]:
        path = graph.path_from_label(str(item["path"]))
        star = bool(item.get("star", False))
        coeff = Scalar.from_strings(str(item.get("re", "0")),
                                    str(item.get("im", "0")))
        acc.append((Letter(path, star), coeff))
    return FourierExpr(graph, acc)
