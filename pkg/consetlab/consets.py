"""Connected induced vertex sets: enumeration and exact statistics.

A connected set is a nonempty vertex set whose induced subgraph is connected.
Sets are never stored; the counters below are accumulated while the
enumeration tree is walked.
"""
from __future__ import annotations

import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from functools import partial
from typing import Iterator, Optional

from .graphcore import Graph, GraphError, VertexSet, is_connected_set, popcount, vertices

logger = logging.getLogger(__name__)

Ratio = Fraction

BRUTE_FORCE_MAX_ORDER = 20


class BudgetExceeded(RuntimeError):
    def __init__(self, budget: int):
        super().__init__(f"more than {budget} connected sets; budget exceeded")
        self.budget = budget

    def __reduce__(self):
        return type(self), (self.budget,)


class OracleTooLarge(ValueError):
    pass


# ============================================================
# STATS
# ============================================================
@dataclass(frozen=True)
class ConnStats:
    n: int
    N: int
    S: int
    Q: int
    N_root: tuple[int, ...]
    S_root: tuple[int, ...]
    spanning: bool

    def __add__(self, other: "ConnStats") -> "ConnStats":
        if not isinstance(other, ConnStats):
            return NotImplemented
        if other.n != self.n:
            raise ValueError(f"cannot merge stats of orders {self.n} and {other.n}")
        return ConnStats(
            n=self.n,
            N=self.N + other.N,
            S=self.S + other.S,
            Q=self.Q + other.Q,
            N_root=tuple(a + b for a, b in zip(self.N_root, other.N_root)),
            S_root=tuple(a + b for a, b in zip(self.S_root, other.S_root)),
            spanning=self.spanning or other.spanning,
        )

    @classmethod
    def zero(cls, n: int) -> "ConnStats":
        return cls(n, 0, 0, 0, (0,) * n, (0,) * n, False)

    # Counts over C' = C minus {V}; V is a connected set iff the graph is connected.
    @property
    def N_prime(self) -> int:
        return self.N - self.spanning

    @property
    def S_prime(self) -> int:
        return self.S - self.n * self.spanning

    @property
    def Q_prime(self) -> int:
        return self.Q - self.n * self.n * self.spanning


# ============================================================
# ENUMERATION
# ============================================================
def _above(n: int, r: int) -> VertexSet:
    return ((1 << n) - 1) & ~((1 << (r + 1)) - 1)


def enumerate_connected_sets(g: Graph) -> Iterator[VertexSet]:
    """Yield every connected set once.

    Anchors ascend; each set is grown from its minimum vertex r. A node yields
    its own set, then branches on the lowest undecided frontier vertex
    (include it, recurse) before excluding it for the remaining siblings.
    """
    adj = g.adj

    def grow(members, frontier, excluded, allowed):
        yield members
        while frontier:
            low = frontier & -frontier
            frontier ^= low
            v = low.bit_length() - 1
            grown = members | low
            yield from grow(grown, frontier | (adj[v] & allowed & ~grown & ~excluded), excluded, allowed)
            excluded |= low

    for r in range(g.n):
        allowed = _above(g.n, r)
        yield from grow(1 << r, adj[r] & allowed, 0, allowed)


class _AnchorWalk:
    """Counters for one anchor; one instance per anchor keeps workers independent."""

    def __init__(self, g: Graph, r: int, budget: Optional[int]):
        self.adj = g.adj
        self.n = g.n
        self.allowed = _above(g.n, r)
        self.budget = budget
        self.seen = 0
        self.spanning = False
        self.n_root = [0] * g.n
        self.s_root = [0] * g.n

    def grow(self, members, size, frontier, excluded, added):
        self.seen += 1
        if self.budget is not None and self.seen > self.budget:
            raise BudgetExceeded(self.budget)
        if size == self.n:
            self.spanning = True

        count, total, squares = 1, size, size * size
        adj, allowed = self.adj, self.allowed
        while frontier:
            low = frontier & -frontier
            frontier ^= low
            v = low.bit_length() - 1
            grown = members | low
            c, s, q = self.grow(
                grown, size + 1, frontier | (adj[v] & allowed & ~grown & ~excluded), excluded, v
            )
            count += c
            total += s
            squares += q
            excluded |= low

        # every set in this subtree contains the vertex added here
        self.n_root[added] += count
        self.s_root[added] += total
        return count, total, squares

    def run(self, r: int) -> ConnStats:
        count, total, squares = self.grow(1 << r, 1, self.adj[r] & self.allowed, 0, r)
        return ConnStats(self.n, count, total, squares, tuple(self.n_root), tuple(self.s_root), self.spanning)


def anchor_stats(g: Graph, r: int, budget: Optional[int] = None) -> ConnStats:
    """Statistics of the connected sets whose minimum vertex is r."""
    if not 0 <= r < g.n:
        raise GraphError(f"anchor {r} out of range for n={g.n}")
    return _AnchorWalk(g, r, budget).run(r)


def connected_set_stats(g: Graph, budget: Optional[int] = None, jobs: int = 1) -> ConnStats:
    """Exact N, S, Q and rooted counters in one pass.

    With ``jobs > 1`` the anchors are spread over worker processes and the
    partial results added; the budget then bounds each anchor and the merged
    total.
    """
    if jobs > 1 and g.n > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            parts = list(pool.map(partial(anchor_stats, g, budget=budget), range(g.n)))
    else:
        parts = []
        remaining = budget
        for r in range(g.n):
            part = anchor_stats(g, r, remaining)
            if remaining is not None:
                remaining -= part.N
            parts.append(part)

    stats = ConnStats.zero(g.n)
    for part in parts:
        stats = stats + part
    if budget is not None and stats.N > budget:
        raise BudgetExceeded(budget)
    return stats


def brute_force_stats(g: Graph) -> ConnStats:
    """Oracle: test every nonempty subset for connectivity."""
    if g.n > BRUTE_FORCE_MAX_ORDER:
        raise OracleTooLarge(f"brute force is limited to n <= {BRUTE_FORCE_MAX_ORDER}, got {g.n}")
    N = S = Q = 0
    n_root = [0] * g.n
    s_root = [0] * g.n
    for mask in range(1, 1 << g.n):
        if not is_connected_set(g, mask):
            continue
        k = popcount(mask)
        N += 1
        S += k
        Q += k * k
        for v in vertices(mask):
            n_root[v] += 1
            s_root[v] += k
    spanning = is_connected_set(g, g.full_mask)
    return ConnStats(g.n, N, S, Q, tuple(n_root), tuple(s_root), spanning)


# ============================================================
# DERIVED RATIOS
# ============================================================
def average_order(st: ConnStats) -> Ratio:
    return Fraction(st.S, st.N)


def density(st: ConnStats) -> Ratio:
    return Fraction(st.S, st.n * st.N)


def rooted_average(st: ConnStats, v: int) -> Ratio:
    if not 0 <= v < st.n:
        raise GraphError(f"vertex {v} out of range for n={st.n}")
    return Fraction(st.S_root[v], st.N_root[v])


def path_closed_form(n: int) -> tuple[int, int, int]:
    """(N, S, Q) of the path on n vertices: l-vertex subpaths occur n - l + 1 times."""
    return (
        n * (n + 1) // 2,
        n * (n + 1) * (n + 2) // 6,
        sum(l * l * (n - l + 1) for l in range(1, n + 1)),
    )


def complete_closed_form(n: int) -> tuple[int, int, int]:
    """(N, S, Q) of K_n: every nonempty subset is connected."""
    q = n * (n + 1) * 2 ** (n - 2) if n >= 2 else 1
    return 2**n - 1, n * 2 ** (n - 1), q


def empty_set_average(n: int) -> Ratio:
    """Average subset size of an n-set when the empty set is counted too.

    This is the n/2 convention sometimes quoted for K_n; connected sets exclude
    the empty set, so average_order of K_n is n 2^(n-1) / (2^n - 1) instead.
    """
    return Fraction(n, 2)
