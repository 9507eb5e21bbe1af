"""Independent reference implementations used as oracles by the tests.

Nothing here shares code paths with the library: partitions are built by
direct enumeration, Moebius values by the defining recursion over the
coarsening order, nested moments by the textbook block-nesting recursion,
and scalar free cumulants by the subtraction recurrence on plain
fractions.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations

from graphfp import (DiagonalElement, Model, NoncrossingPartition,
                     expectation_of_product, scale_right)


def all_set_partitions(n: int) -> list[tuple[tuple[int, ...], ...]]:
    """Every set partition of {1..n}, blocks sorted, by direct refinement."""
    if n == 0:
        return [()]
    out = []
    for smaller in all_set_partitions(n - 1):
        out.append(smaller + ((n,),))
        for i, block in enumerate(smaller):
            out.append(smaller[:i] + (block + (n,),) + smaller[i + 1:])
    return out


def is_noncrossing(blocks) -> bool:
    """Quadruple test: no a < b < c < d with {a,c} and {b,d} split across
    two blocks."""
    owner = {}
    for idx, block in enumerate(blocks):
        for i in block:
            owner[i] = idx
    points = sorted(owner)
    for a, b, c, d in combinations(points, 4):
        if owner[a] == owner[c] != owner[b] == owner[d]:
            return False
    return True


def moebius_recursive_top(blocks, n: int) -> int:
    """mu(pi, top) from scratch: sum over all coarser noncrossing
    partitions must vanish except at the top."""
    ncs = [p for p in all_set_partitions(n) if is_noncrossing(p)]

    def leq(fine, coarse) -> bool:
        home = {}
        for idx, block in enumerate(coarse):
            for i in block:
                home[i] = idx
        return all(len({home[i] for i in block}) == 1 for block in fine)

    def canon(blocks):
        return tuple(sorted((tuple(sorted(b)) for b in blocks),
                            key=lambda b: b[0]))

    memo = {}

    def mu(pi) -> int:
        if len(pi) == 1:
            return 1
        key = canon(pi)
        if key not in memo:
            memo[key] = -sum(mu(sig) for sig in ncs
                             if leq(pi, sig) and canon(sig) != key)
        return memo[key]

    return mu(canon(blocks))


def nested_moment_reference(pi: NoncrossingPartition, args, model: Model):
    """Textbook nesting: take the block of the smallest index, insert the
    values of the partitions sitting in its gaps as right multipliers, and
    multiply by the value of whatever sits past its last leg."""
    args = tuple(args)
    graph = args[0][1].graph
    return _nested(list(pi.blocks), {i + 1: args[i] for i in range(len(args))},
                   model, graph)


def _nested(blocks, items, model, graph):
    if not blocks:
        return DiagonalElement.identity(graph)
    first_pos = min(min(b) for b in blocks)
    block = next(b for b in blocks if first_pos in b)
    rest = [b for b in blocks if b != block]
    legs = list(block)
    factors = []
    for lo, hi in zip(legs, legs[1:] + [None]):
        d, a = items[lo]
        if hi is not None:
            inner = [b for b in rest if all(lo < i < hi for i in b)]
            if inner:
                value = _nested(inner, items, model, graph)
                a = scale_right(a, value)
        factors.append((d, a))
    value = expectation_of_product(tuple(factors), model)
    trailing = [b for b in rest if all(i > legs[-1] for i in b)]
    if trailing:
        value = value * _nested(trailing, items, model, graph)
    return value


def scalar_free_cumulants(moments: list[Fraction]) -> list[Fraction]:
    """Free cumulants of a scalar moment sequence by the subtraction
    recurrence over noncrossing partitions (1-indexed input m_1..m_n)."""
    n = len(moments)
    cumulants: dict[int, Fraction] = {}
    for m in range(1, n + 1):
        total = Fraction(0)
        for blocks in all_set_partitions(m):
            if len(blocks) == 1 or not is_noncrossing(blocks):
                continue
            prod = Fraction(1)
            for block in blocks:
                prod *= cumulants[len(block)]
            total += prod
        cumulants[m] = moments[m - 1] - total
    return [cumulants[m] for m in range(1, n + 1)]
