"""Operator-valued moments and cumulants over the diagonal subalgebra.

Nested moments are evaluated by peeling interval blocks off a noncrossing
partition: the block's expectation (a diagonal element) folds into its
left neighbour as a right multiplier, or multiplies the remaining value
from the left when the block starts the row.  Because the expectation is
a bimodule map over a commutative diagonal algebra, the result does not
depend on which interval block is peeled first.

Cumulants are the Moebius inversion of nested moments over the
noncrossing lattice.  The inversion is kept as a literal sum (rather than
the equivalent subtraction recursion) so that reconstruction identities
exercised by the test suite remain genuine cross-checks.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from typing import Optional, Sequence

from . import nc
from .expr import (DiagonalElement, FourierExpr, MomentFactor,
                   expectation_of_product, scale_right)
from .nc import NoncrossingPartition, enumerate_nc
from .words import Letter, Model


class SizeMismatchError(ValueError):
    pass


MomentArgs = tuple[MomentFactor, ...]


def _as_args(args: Sequence[MomentFactor]) -> MomentArgs:
    args = tuple(args)
    if not args:
        raise SizeMismatchError("need at least one argument")
    return args


def _interval_fold(pi: NoncrossingPartition, args: MomentArgs, model: Model,
                   block_value) -> DiagonalElement:
    graph = args[0][1].graph
    order = list(range(pi.n))
    pending = dict(enumerate(args))
    remaining = [tuple(i - 1 for i in b) for b in pi.blocks]
    left = DiagonalElement.identity(graph)
    while remaining:
        rank = {p: r for r, p in enumerate(order)}
        chosen = None
        for b in remaining:
            if rank[b[-1]] - rank[b[0]] + 1 == len(b):
                if chosen is None or b[0] < chosen[0]:
                    chosen = b
        value = block_value(tuple(pending[p] for p in chosen), model)
        start = rank[chosen[0]]
        if start > 0:
            prev = order[start - 1]
            d_prev, a_prev = pending[prev]
            pending[prev] = (d_prev, scale_right(a_prev, value))
        else:
            left = left * value
        for p in chosen:
            order.remove(p)
        remaining.remove(chosen)
    return left


@lru_cache(maxsize=65536)
def _nested_expectation(pi: NoncrossingPartition, args: MomentArgs,
                        model: Model) -> DiagonalElement:
    return _interval_fold(pi, args, model, expectation_of_product)


def nested_expectation(pi: NoncrossingPartition,
                       args: Sequence[MomentFactor],
                       model: Model) -> DiagonalElement:
    """The nested moment of ``d_1 a_1, ..., d_n a_n`` along a partition."""
    args = _as_args(args)
    if pi.n != len(args):
        raise SizeMismatchError(
            f"partition size {pi.n} != argument count {len(args)}")
    return _nested_expectation(pi, args, model)


@lru_cache(maxsize=65536)
def _cumulant(args: MomentArgs, model: Model) -> DiagonalElement:
    n = len(args)
    graph = args[0][1].graph
    total = DiagonalElement.zero(graph)
    for pi in enumerate_nc(n):
        value = _nested_expectation(pi, args, model)
        if not value.is_zero:
            total = total + value * nc.moebius_to_top(pi)
    return total


def cumulant(args: Sequence[MomentFactor], model: Model) -> DiagonalElement:
    """The n-th cumulant: the Moebius inversion of the nested moments."""
    return _cumulant(_as_args(args), model)


def nested_cumulant(pi: NoncrossingPartition, args: Sequence[MomentFactor],
                    model: Model) -> DiagonalElement:
    """The partitioned cumulant: one cumulant per block, nested like a
    nested moment.  Summed over all of NC(n) it reconstructs the moment."""
    args = _as_args(args)
    if pi.n != len(args):
        raise SizeMismatchError(
            f"partition size {pi.n} != argument count {len(args)}")
    return _interval_fold(pi, args, model, _cumulant)


def _letter_args(letters: Sequence[Letter]) -> MomentArgs:
    if not letters:
        raise SizeMismatchError("need at least one letter")
    graph = letters[0].path.graph
    one = DiagonalElement.identity(graph)
    return tuple((one, FourierExpr(graph, [(letter, 1)]))
                 for letter in letters)


def connected_partitions(letters: Sequence[Letter],
                         model: Model) -> list[NoncrossingPartition]:
    """Partitions along which the word has a nonvanishing nested moment."""
    args = _letter_args(letters)
    return [pi for pi in enumerate_nc(len(args))
            if not _nested_expectation(pi, args, model).is_zero]


def word_moebius(letters: Sequence[Letter], model: Model) -> int:
    """Sum of Moebius values over the connected partitions of the word."""
    return sum(nc.moebius_to_top(pi)
               for pi in connected_partitions(letters, model))


def word_cumulant(letters: Sequence[Letter], model: Model) -> DiagonalElement:
    """Cumulant of a generator word via its connectedness count.

    Every connected partition contributes the same diagonal value (the
    expectation of the whole word), so the cumulant is that expectation
    scaled by the summed Moebius values.
    """
    args = _letter_args(letters)
    mu = word_moebius(letters, model)
    top = expectation_of_product(args, model)
    return top * mu


def moment_table(a: FourierExpr, n_max: int,
                 model: Model) -> list[DiagonalElement]:
    """Expectations of the powers ``a^n`` for n = 1..n_max."""
    if n_max < 1:
        raise SizeMismatchError("n_max must be at least 1")
    one = DiagonalElement.identity(a.graph)
    return [expectation_of_product(((one, a),) * n, model)
            for n in range(1, n_max + 1)]


def cumulant_table(a: FourierExpr, n_max: int,
                   model: Model) -> list[DiagonalElement]:
    """Cumulants ``k_n(a, ..., a)`` for n = 1..n_max."""
    if n_max < 1:
        raise SizeMismatchError("n_max must be at least 1")
    one = DiagonalElement.identity(a.graph)
    return [cumulant(((one, a),) * n, model) for n in range(1, n_max + 1)]


def default_diag_samples(graph, n_max: int) -> list[tuple[DiagonalElement, ...]]:
    """The identity tuple plus one constant tuple per vertex projection.

    These separate diagonal-linear functionals on small graphs, which is
    what the vanishing and freeness checks sample over.
    """
    samples = [tuple([DiagonalElement.identity(graph)] * n_max)]
    for v in graph.vertices:
        samples.append(
            tuple([DiagonalElement.vertex_projection(graph, v)] * n_max))
    return samples


@dataclass(frozen=True)
class MixedCumulantWitness:
    """A nonvanishing mixed cumulant: order, symbol pattern, diagonal
    tuple and the offending value."""

    order: int
    pattern: tuple[str, ...]
    diagonals: tuple[DiagonalElement, ...]
    value: DiagonalElement

    def __str__(self) -> str:
        return (f"k_{self.order}[{', '.join(self.pattern)}] = "
                f"{self.value.text()}")


_SYMBOLS = ("a", "a*", "b", "b*")


def mixed_cumulants_vanish(
        a: FourierExpr, b: FourierExpr, n_max: int,
        d_samples: Optional[Sequence[tuple[DiagonalElement, ...]]] = None,
        model: Model = Model.TOEPLITZ
) -> tuple[bool, Optional[MixedCumulantWitness]]:
    """Probe freeness: do all mixed cumulants up to order ``n_max`` vanish?

    Patterns draw from both elements and their adjoints (freeness is a
    statement about the star-algebras they generate) and must use both
    families.  Returns the first witness found, if any.  This is a
    falsifier, not a decision procedure: orders beyond ``n_max`` and
    diagonal tuples outside the sample are not examined.

    The default model is the shift model: it is the one whose expectation
    is a genuine vacuum state, so a witness there is a real obstruction.
    Under the eager collapse model, order-dependent reduction on a vertex
    with several outgoing edges produces nonzero mixed cumulants even for
    generators on disjoint edges, which says nothing about freeness.
    """
    if n_max < 2:
        raise SizeMismatchError("n_max must be at least 2")
    graph = a.graph
    if d_samples is None:
        d_samples = default_diag_samples(graph, n_max)
    identity = tuple([DiagonalElement.identity(graph)] * n_max)
    if not any(tuple(s[:n_max]) == identity for s in d_samples):
        raise ValueError("d_samples must include the all-identity tuple")
    variables = {"a": a, "a*": a.adjoint(), "b": b, "b*": b.adjoint()}
    for n in range(2, n_max + 1):
        for pattern in product(_SYMBOLS, repeat=n):
            uses_a = any(s.startswith("a") for s in pattern)
            uses_b = any(s.startswith("b") for s in pattern)
            if not (uses_a and uses_b):
                continue
            exprs = tuple(variables[s] for s in pattern)
            for sample in d_samples:
                ds = tuple(sample[:n])
                value = cumulant(tuple(zip(ds, exprs)), model)
                if not value.is_zero:
                    return False, MixedCumulantWitness(n, pattern, ds, value)
    return True, None


def clear_caches() -> None:
    """Drop the memoised moment/cumulant tables (mostly for long test runs)."""
    _nested_expectation.cache_clear()
    _cumulant.cache_clear()
