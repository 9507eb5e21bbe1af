"""Formal words in the path generators and their normal forms.

Each path ``w`` of a graph contributes a creation generator ``L[w]`` and an
annihilation generator ``L*[w]``; vertex generators are self-adjoint
projections, so their star flag is normalised away.  Products obey

* ``L[p] L[q] = L[pq]`` when the paths compose and ``0`` otherwise,
* ``L*[w] L[w] = L[range(w)]``,
* vertex projections act as local units.

Every nonzero product reduces to a two-sided normal form
``L[alpha] L*[beta]`` with matching ranges.  The two models differ in a
single extra rule: the CK model also collapses ``L[w] L*[w]`` to the source
projection ``L[source(w)]``, while the Toeplitz model keeps it as an
irreducible sub-projection (which is how the concrete shift operators on
the path space behave).

Functions here are pure and all values immutable, so everything is safe to
share between threads.
"""

from __future__ import annotations

import re as _re
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from itertools import accumulate
from typing import Sequence, Union

from .graph import DirectedGraph, GraphError, Path, try_concat


class Model(Enum):
    """Reduction model: ``CK`` collapses full creation/annihilation matches,
    ``TOEPLITZ`` keeps them."""

    CK = "ck"
    TOEPLITZ = "toeplitz"


@dataclass(frozen=True)
class Letter:
    """A single generator: ``L[path]`` or, with ``star``, ``L*[path]``.

    Vertex letters are projections with ``L[v] == L*[v]``; the flag is
    forced to ``False`` for them so equal operators compare equal.
    """

    path: Path
    star: bool = False

    def __post_init__(self) -> None:
        if self.path.is_vertex and self.star:
            object.__setattr__(self, "star", False)

    @property
    def adjoint(self) -> "Letter":
        if self.path.is_vertex:
            return self
        return Letter(self.path, not self.star)

    @property
    def text(self) -> str:
        return f"L*[{self.path.label}]" if self.star else f"L[{self.path.label}]"

    def __repr__(self) -> str:
        return self.text


Word = tuple[Letter, ...]


class _Const:
    """Identity-hashed sentinel for the absorbing zero and the empty word."""

    __slots__ = ("_label",)

    def __init__(self, label: str):
        self._label = label

    def __repr__(self) -> str:
        return self._label


#: The zero operator (absorbing under multiplication).
ZERO = _Const("ZERO")
#: The empty product, i.e. the unit, which expands to the sum of all
#: vertex projections.
ONE = _Const("ONE")


@dataclass(frozen=True)
class Pair:
    """Normal form ``L[left] L*[right]`` with ``left.rng == right.rng``.

    ``Pair(v, v)`` on a vertex is the projection ``L[v]``; a vertex on one
    side only encodes a pure creation or pure annihilation word.
    """

    left: Path
    right: Path

    def __post_init__(self) -> None:
        if self.left.rng != self.right.rng:
            raise GraphError("normal form sides must share their range")

    @property
    def is_vertex(self) -> bool:
        return self.left.is_vertex and self.right.is_vertex

    @property
    def vertex(self) -> str:
        if not self.is_vertex:
            raise ValueError(f"{self!r} is not a vertex projection")
        return self.left.src

    @property
    def adjoint(self) -> "Pair":
        return Pair(self.right, self.left)

    def __repr__(self) -> str:
        return f"Pair({self.left.label}, {self.right.label})"


NormalForm = Union[Pair, _Const]


def letter_pair(letter: Letter) -> Pair:
    """The one-letter normal form."""
    p = letter.path
    if p.is_vertex:
        return Pair(p, p)
    anchor = p.graph.vertex(p.rng)
    return Pair(anchor, p) if letter.star else Pair(p, anchor)


def _collapse(pair: Pair, model: Model) -> Pair:
    if model is Model.CK and pair.left.edges and pair.left == pair.right:
        v = pair.left.graph.vertex(pair.left.src)
        return Pair(v, v)
    return pair


@lru_cache(maxsize=None)
def append_letter(state: NormalForm, letter: Letter, model: Model) -> NormalForm:
    """Multiply a normal form on the right by one more generator."""
    if state is ZERO:
        return ZERO
    if state is ONE:
        return letter_pair(letter)
    a, b = state.left, state.right
    q = letter.path
    if letter.star:
        # L*[b] L*[q] = (L[q] L[b])* = L*[q b] when the paths compose.
        if q.rng != b.src:
            return ZERO
        grown = Path(q.graph, q.src, b.rng, q.edges + b.edges)
        return _collapse(Pair(a, grown), model)
    if b.is_vertex:
        grown = try_concat(a, q)
        if grown is None:
            return ZERO
        return _collapse(Pair(grown, grown.graph.vertex(grown.rng)), model)
    if q.is_vertex:
        # L*[b] L[v] survives exactly when v is the source of b.
        return state if b.src == q.src else ZERO
    nb, nq = len(b.edges), len(q.edges)
    if nq >= nb and q.edges[:nb] == b.edges:
        # q = b q': the annihilation side is fully consumed.
        tail = q.edges[nb:]
        rest = (q.graph.vertex(b.rng) if not tail
                else Path(q.graph, b.rng, q.rng, tail))
        grown = try_concat(a, rest)
        return _collapse(Pair(grown, grown.graph.vertex(grown.rng)), model)
    if nq < nb and b.edges[:nq] == q.edges:
        # b = q b': only part of the annihilation side is consumed.
        shrunk = Path(q.graph, q.rng, b.rng, b.edges[nq:])
        return _collapse(Pair(a, shrunk), model)
    return ZERO


def reduce_word(word: Sequence[Letter], model: Model) -> NormalForm:
    """Left-to-right reduction of a generator word; zero is absorbing."""
    state: NormalForm = ONE
    for letter in word:
        state = append_letter(state, letter, model)
        if state is ZERO:
            return ZERO
    return state


def multiply_pairs(p1: NormalForm, p2: NormalForm, model: Model) -> NormalForm:
    """Product of two normal forms, again in normal form (or zero)."""
    if p1 is ZERO or p2 is ZERO:
        return ZERO
    if p1 is ONE:
        return p2
    if p2 is ONE:
        return p1
    state = append_letter(p1, Letter(p2.left), model)
    if p2.right.is_vertex:
        return state
    return append_letter(state, Letter(p2.right, star=True), model)


def word_adjoint(word: Sequence[Letter]) -> Word:
    """Reverse the word and star every letter."""
    return tuple(letter.adjoint for letter in reversed(word))


@dataclass(frozen=True)
class LatticePath:
    """Signed length bookkeeping of a word.

    Creation letters step up by their path length, annihilation letters
    step down, vertex letters contribute a zero step.
    """

    steps: tuple[int, ...]

    @property
    def heights(self) -> tuple[int, ...]:
        """Running heights, starting from 0."""
        return tuple(accumulate(self.steps, initial=0))

    @property
    def final_height(self) -> int:
        return sum(self.steps)

    @property
    def max_height(self) -> int:
        return max(self.heights)

    @property
    def max_suffix_height(self) -> int:
        """Largest height reached when the word is applied to a vector,
        i.e. reading steps right to left."""
        best = acc = 0
        for s in reversed(self.steps):
            acc += s
            best = max(best, acc)
        return best


def lattice_path(word: Sequence[Letter]) -> LatticePath:
    steps = tuple(-letter.path.length if letter.star else letter.path.length
                  for letter in word)
    return LatticePath(steps)


def has_star_axis_property(word: Sequence[Letter], model: Model) -> bool:
    """True when the word is nonzero and reduces to a vertex projection.

    The empty word counts as balanced (it is the unit, whose diagonal
    expectation is nonzero).
    """
    nf = reduce_word(word, model)
    if nf is ONE:
        return True
    return isinstance(nf, Pair) and nf.is_vertex


_LETTER_RE = _re.compile(r"^L(\*)?\[([^\[\]]+)\]$")


def parse_word(graph: DirectedGraph, text: str) -> Word:
    """Parse whitespace-separated letters like ``L[e1.e2] L*[e1] L[v]``."""
    letters = []
    for token in text.split():
        m = _LETTER_RE.match(token)
        if not m:
            raise GraphError(f"cannot parse letter {token!r}")
        star, label = bool(m.group(1)), m.group(2)
        letters.append(Letter(graph.path_from_label(label), star))
    return tuple(letters)


def word_text(word: Sequence[Letter]) -> str:
    return " ".join(letter.text for letter in word)
