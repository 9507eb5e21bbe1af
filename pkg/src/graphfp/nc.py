"""Noncrossing partitions of {1..n} and their lattice combinatorics.

The interval from a noncrossing partition up to the one-block partition
factors as a product of smaller noncrossing lattices whose sizes are the
block sizes of the Kreweras complement; that factorisation gives the fast
route to the Moebius value used by the cumulant engine.

>>> [len(enumerate_nc(n)) for n in range(1, 6)]
[1, 2, 5, 14, 42]
>>> moebius_to_top(NoncrossingPartition.discrete(4))
-5
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations, product


MAX_SIZE = 12


class SizeOutOfRangeError(ValueError):
    pass


def catalan(n: int) -> int:
    """The n-th Catalan number.

    >>> [catalan(n) for n in range(6)]
    [1, 1, 2, 5, 14, 42]
    """
    return math.comb(2 * n, n) // (n + 1)


@dataclass(frozen=True)
class NoncrossingPartition:
    """A partition of {1..n} with no crossing pair of blocks.

    Blocks are stored sorted internally and ordered by their minima.
    """

    n: int
    blocks: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        blocks = tuple(sorted((tuple(sorted(b)) for b in self.blocks),
                              key=lambda b: b[0] if b else 0))
        object.__setattr__(self, "blocks", blocks)
        seen = [i for b in blocks for i in b]
        if sorted(seen) != list(range(1, self.n + 1)):
            raise ValueError(f"blocks do not partition 1..{self.n}")
        if _has_crossing(self.n, blocks):
            raise ValueError("partition has a crossing")

    @classmethod
    def of(cls, n: int, blocks) -> "NoncrossingPartition":
        return cls(n, tuple(tuple(b) for b in blocks))

    @classmethod
    def full(cls, n: int) -> "NoncrossingPartition":
        """The one-block partition 1_n."""
        return cls(n, (tuple(range(1, n + 1)),))

    @classmethod
    def discrete(cls, n: int) -> "NoncrossingPartition":
        """The all-singletons partition 0_n."""
        return cls(n, tuple((i,) for i in range(1, n + 1)))

    @property
    def block_count(self) -> int:
        return len(self.blocks)

    def block_of(self, i: int) -> tuple[int, ...]:
        for b in self.blocks:
            if i in b:
                return b
        raise ValueError(f"{i} not in partition")

    def refines(self, other: "NoncrossingPartition") -> bool:
        """True when every block of ``self`` sits inside a block of ``other``."""
        if self.n != other.n:
            return False
        home = {}
        for idx, b in enumerate(other.blocks):
            for i in b:
                home[i] = idx
        return all(len({home[i] for i in b}) == 1 for b in self.blocks)

    def __repr__(self) -> str:
        body = "".join("{" + ",".join(map(str, b)) + "}" for b in self.blocks)
        return f"NC({self.n}: {body})"


def _has_crossing(n: int, blocks: tuple[tuple[int, ...], ...]) -> bool:
    # Parenthesis scan: a block must be on top of the open stack whenever
    # one of its elements appears, and it closes at its maximum.
    owner = {}
    for idx, b in enumerate(blocks):
        for i in b:
            owner[i] = idx
    closing = {idx: b[-1] for idx, b in enumerate(blocks)}
    stack: list[int] = []
    for i in range(1, n + 1):
        b = owner[i]
        if stack and stack[-1] == b:
            if closing[b] == i:
                stack.pop()
        elif b in stack:
            return True
        else:
            stack.append(b)
            if closing[b] == i:
                stack.pop()
    return False


@lru_cache(maxsize=None)
def _nc_block_lists(items: tuple[int, ...]) -> tuple[tuple[tuple[int, ...], ...], ...]:
    """All noncrossing partitions of an ordered index tuple, as block lists.

    Recursion on the block of the first element: the chosen co-members cut
    the remaining indices into independent gaps, each partitioned freely.
    """
    if not items:
        return ((),)
    first, rest = items[0], items[1:]
    results: list[tuple[tuple[int, ...], ...]] = []
    for k in range(len(rest) + 1):
        for chosen in combinations(range(len(rest)), k):
            block = (first,) + tuple(rest[i] for i in chosen)
            cuts = list(chosen) + [len(rest)]
            gaps = []
            lo = 0
            for c in cuts:
                gaps.append(rest[lo:c])
                lo = c + 1
            for parts in product(*(_nc_block_lists(g) for g in gaps)):
                merged = (block,) + tuple(b for sub in parts for b in sub)
                results.append(merged)
    return tuple(results)


@lru_cache(maxsize=None)
def enumerate_nc(n: int) -> tuple[NoncrossingPartition, ...]:
    """All of NC(n) in a fixed deterministic order; |NC(n)| = catalan(n)."""
    if not 1 <= n <= MAX_SIZE:
        raise SizeOutOfRangeError(f"n must lie in 1..{MAX_SIZE}, got {n}")
    items = tuple(range(1, n + 1))
    return tuple(NoncrossingPartition(n, blocks)
                 for blocks in _nc_block_lists(items))


def kreweras_complement(pi: NoncrossingPartition) -> NoncrossingPartition:
    """The Kreweras complement, via the permutation model.

    Each block acts as the cycle on its sorted elements; composing the
    inverse with the long cycle 1 -> 2 -> ... -> n -> 1 yields the cycles
    of the complement.  ``block_count(pi) + block_count(K(pi)) == n + 1``.

    >>> kreweras_complement(NoncrossingPartition.of(3, [(1, 2), (3,)]))
    NC(3: {1}{2,3})
    """
    n = pi.n
    perm = {}
    for b in pi.blocks:
        for a, c in zip(b, b[1:] + b[:1]):
            perm[a] = c
    inv = {c: a for a, c in perm.items()}
    cyc = {i: i % n + 1 for i in range(1, n + 1)}
    tau = {i: inv[cyc[i]] for i in range(1, n + 1)}
    blocks = []
    left = set(range(1, n + 1))
    while left:
        i = min(left)
        cycle = [i]
        j = tau[i]
        while j != i:
            cycle.append(j)
            j = tau[j]
        left -= set(cycle)
        blocks.append(tuple(sorted(cycle)))
    return NoncrossingPartition(n, tuple(blocks))


def moebius_to_top(pi: NoncrossingPartition) -> int:
    """Moebius value of the interval from ``pi`` to the one-block partition.

    The interval is a product of full noncrossing lattices sized by the
    Kreweras complement's blocks, and the full lattice NC(k) contributes
    (-1)^(k-1) * catalan(k-1).

    >>> moebius_to_top(NoncrossingPartition.full(5))
    1
    >>> moebius_to_top(NoncrossingPartition.discrete(2))
    -1
    """
    out = 1
    for b in kreweras_complement(pi).blocks:
        k = len(b)
        out *= (-1) ** (k - 1) * catalan(k - 1)
    return out


def interval_block(pi: NoncrossingPartition) -> int:
    """Index of the first block whose elements form a contiguous run.

    Every noncrossing partition has one (an innermost block), which is what
    lets nested moment evaluation peel blocks off one at a time.
    """
    for idx, b in enumerate(pi.blocks):
        if b[-1] - b[0] + 1 == len(b):
            return idx
    raise ValueError("no interval block; partition is not noncrossing")


def moebius_by_recursion(pi: NoncrossingPartition) -> int:
    """Moebius value straight from the defining recursion.

    Slow reference route used to cross-check :func:`moebius_to_top`:
    the sum of mu(sigma, 1_n) over all sigma at or above ``pi`` must be
    the indicator of ``pi`` being the one-block partition.
    """
    coarser = [sig for sig in enumerate_nc(pi.n) if pi.refines(sig)]
    memo: dict[NoncrossingPartition, int] = {}

    def mu(sigma: NoncrossingPartition) -> int:
        if sigma.block_count == 1:
            return 1
        if sigma not in memo:
            above = -sum(mu(t) for t in coarser
                         if sigma.refines(t) and t != sigma)
            memo[sigma] = above
        return memo[sigma]

    return mu(pi)


def validate_moebius(max_n: int = 6) -> None:
    """Self-check of the fast Moebius route against the defining recursion."""
    for n in range(1, max_n + 1):
        for pi in enumerate_nc(n):
            fast = moebius_to_top(pi)
            slow = moebius_by_recursion(pi)
            if fast != slow:
                raise AssertionError(
                    f"moebius mismatch at {pi!r}: {fast} != {slow}")
