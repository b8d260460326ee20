"""Bound, identity and conjecture checks on a single graph.

Every comparison is between exact rationals. A check that does not apply to a
graph (disconnected input, wrong degree pattern, ...) reports
``applicable=False`` and never fails a run.
"""
from __future__ import annotations

import enum
import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .consets import ConnStats, Ratio, average_order, connected_set_stats, density, rooted_average
from .graphcore import (
    Graph,
    delete_vertex,
    is_connected,
    is_path_graph,
    is_tree,
    min_degree,
    to_graph6,
    vertex_connectivity,
)

logger = logging.getLogger(__name__)

HALF = Fraction(1, 2)
THREE_QUARTERS = Fraction(3, 4)

COUNTEREXAMPLE = "counterexample-candidate"
EQUALITY_MISMATCH = "equality-mismatch"


class CheckId(str, enum.Enum):
    THM2 = "thm2_path_bound"
    THM3 = "thm3_kconn_density"
    THM4 = "thm4_rooted"
    COR1 = "cor1_sumsq"
    IDENTITIES = "identities"
    DELETION = "thm3_deletion_identity"
    INDUCTION = "thm3_induction_step"
    CONJ2 = "conj2_mindeg3"
    TREE_BAND = "tree_band"


# Checks whose failure means the implementation is wrong (they are theorems or
# combinatorial identities); the rest are report-only.
BINDING = frozenset(
    {CheckId.THM2, CheckId.THM3, CheckId.THM4, CheckId.COR1, CheckId.IDENTITIES, CheckId.DELETION, CheckId.INDUCTION}
)


@dataclass(frozen=True)
class Verdict:
    check_id: CheckId
    lhs: Ratio
    rhs: Ratio
    passed: bool
    equality: bool
    applicable: bool
    detail: str = ""
    flag: Optional[str] = None

    @classmethod
    def not_applicable(cls, check_id: CheckId, detail: str) -> "Verdict":
        return cls(check_id, Fraction(0), Fraction(0), True, False, False, detail)

    @property
    def margin(self) -> Ratio:
        return self.lhs - self.rhs

    @property
    def cell(self) -> str:
        if not self.applicable:
            return "NA"
        if not self.passed:
            return "FAIL"
        return "EQ" if self.equality else "PASS"


def _at_least(check_id: CheckId, lhs: Ratio, rhs: Ratio, detail: str = "") -> Verdict:
    return Verdict(check_id, Fraction(lhs), Fraction(rhs), lhs >= rhs, lhs == rhs, True, detail)


# ============================================================
# a_k
# ============================================================
def a_k(k: int) -> Ratio:
    """1/2 (1 - 1/(2^k + 1)) = 2^(k-1) / (2^k + 1)."""
    if k < 1:
        raise ValueError(f"a_k is defined for k >= 1, got {k}")
    return Fraction(2 ** (k - 1), 2**k + 1)


def check_recurrence(k_max: int) -> bool:
    """a_k = 2 a_(k-1) / (2 a_(k-1) + 1), strictly increasing and below 1/2."""
    previous = a_k(1)
    if previous >= HALF:
        return False
    for k in range(2, k_max + 1):
        current = a_k(k)
        if current != 2 * previous / (2 * previous + 1):
            return False
        if not previous < current < HALF:
            return False
        previous = current
    return True


# ============================================================
# THEOREM CHECKS
# ============================================================
def check_thm2(g: Graph, st: ConnStats) -> Verdict:
    """A(G) >= (n + 2)/3 with equality exactly on paths."""
    if not is_connected(g):
        return Verdict.not_applicable(CheckId.THM2, "disconnected")
    verdict = _at_least(CheckId.THM2, average_order(st), Fraction(g.n + 2, 3))
    path = is_path_graph(g)
    if verdict.equality != path:
        detail = "equality on a non-path" if verdict.equality else "path without equality"
        logger.error("equality characterization broken on %s: %s", to_graph6(g), detail)
        return Verdict(
            verdict.check_id, verdict.lhs, verdict.rhs, verdict.passed, verdict.equality, True,
            f"soundness violation: {detail}", EQUALITY_MISMATCH,
        )
    return Verdict(verdict.check_id, verdict.lhs, verdict.rhs, verdict.passed, verdict.equality, True,
                   "path" if path else "not a path")


def check_thm3(g: Graph, st: ConnStats, kappa: Optional[int] = None) -> Verdict:
    """D(G) >= a_k at k = kappa(G), the strongest instance."""
    if not is_connected(g):
        return Verdict.not_applicable(CheckId.THM3, "disconnected")
    k = vertex_connectivity(g) if kappa is None else kappa
    if k < 1:
        return Verdict.not_applicable(CheckId.THM3, f"kappa={k}")
    d, bound = density(st), a_k(k)
    return _at_least(CheckId.THM3, d, bound, f"k={k} D={d} a_k={bound} margin={d - bound}")


def check_thm4(g: Graph, st: ConnStats) -> Verdict:
    """A(G, v) >= (n + 1)/2 for every vertex v."""
    if not is_connected(g):
        return Verdict.not_applicable(CheckId.THM4, "disconnected")
    averages = [rooted_average(st, v) for v in range(g.n)]
    lowest = min(averages)
    vertex = averages.index(lowest)
    bound = Fraction(g.n + 1, 2)
    return _at_least(CheckId.THM4, lowest, bound, f"min at vertex {vertex} margin={lowest - bound}")


def check_cor1(g: Graph, st: ConnStats) -> Verdict:
    """sum |U|^2 >= (n + 1)/2 * S(G)."""
    if not is_connected(g):
        return Verdict.not_applicable(CheckId.COR1, "disconnected")
    return _at_least(CheckId.COR1, Fraction(st.Q), Fraction((g.n + 1) * st.S, 2))


def check_identities(g: Graph, st: ConnStats) -> Verdict:
    """Double counting of (vertex, set) pairs: S = sum N(G,i) and Q = sum S(G,i)."""
    rooted_n, rooted_s = sum(st.N_root), sum(st.S_root)
    ok = rooted_n == st.S and rooted_s == st.Q
    return Verdict(
        CheckId.IDENTITIES, Fraction(rooted_n), Fraction(st.S), ok, ok, True,
        f"sum N_root={rooted_n} S={st.S}; sum S_root={rooted_s} Q={st.Q}",
    )


def deleted_stats(g: Graph, budget: Optional[int] = None) -> list[ConnStats]:
    """Stats of every vertex-deleted subgraph G_i, i in vertex order."""
    return [connected_set_stats(delete_vertex(g, i), budget) for i in range(g.n)]


def check_deletion_identity(
    g: Graph,
    st: Optional[ConnStats] = None,
    deleted: Optional[Sequence[ConnStats]] = None,
    budget: Optional[int] = None,
) -> Verdict:
    """n S' - sum_{C'} |U|^2 = sum_i S(G_i) and n N' - S' = sum_i N(G_i)."""
    if g.n < 2:
        return Verdict.not_applicable(CheckId.DELETION, "n=1")
    if not is_connected(g):
        return Verdict.not_applicable(CheckId.DELETION, "disconnected")
    st = connected_set_stats(g, budget) if st is None else st
    deleted = deleted_stats(g, budget) if deleted is None else deleted

    lhs = g.n * st.S_prime - st.Q_prime
    rhs = sum(part.S for part in deleted)
    count_lhs = g.n * st.N_prime - st.S_prime
    count_rhs = sum(part.N for part in deleted)
    ok = lhs == rhs and count_lhs == count_rhs
    return Verdict(
        CheckId.DELETION, Fraction(lhs), Fraction(rhs), ok, ok, True,
        f"nS'-Q'={lhs} sum S(G_i)={rhs}; nN'-S'={count_lhs} sum N(G_i)={count_rhs}",
    )


def check_induction_step(
    g: Graph,
    st: ConnStats,
    kappa: Optional[int] = None,
    deleted: Optional[Sequence[ConnStats]] = None,
    budget: Optional[int] = None,
) -> Verdict:
    """The step from (k-1)- to k-connected graphs, replayed on one instance.

    Each G_i must be (k-1)-connected with D(G_i) >= a_(k-1), and the combined
    inequality (n + a(n-1)) S >= a n (n-1) N + Q must hold with a = a_(k-1).
    """
    if not is_connected(g):
        return Verdict.not_applicable(CheckId.INDUCTION, "disconnected")
    k = vertex_connectivity(g) if kappa is None else kappa
    if k < 2:
        return Verdict.not_applicable(CheckId.INDUCTION, f"kappa={k}")
    deleted = deleted_stats(g, budget) if deleted is None else deleted
    a = a_k(k - 1)
    n = g.n

    for i, part in enumerate(deleted):
        sub = delete_vertex(g, i)
        sub_kappa = vertex_connectivity(sub)
        if sub_kappa < k - 1:
            return Verdict(CheckId.INDUCTION, Fraction(sub_kappa), Fraction(k - 1), False, False, True,
                           f"G_{i} has kappa={sub_kappa} < {k - 1}")
        if density(part) < a:
            return Verdict(CheckId.INDUCTION, density(part), a, False, False, True,
                           f"D(G_{i})={density(part)} below a_{k - 1}={a}")

    lhs = (n + a * (n - 1)) * st.S
    rhs = a * n * (n - 1) * st.N + st.Q
    return _at_least(CheckId.INDUCTION, lhs, rhs, f"k={k} a_(k-1)={a}")


# ============================================================
# CONJECTURE / REPORT-ONLY CHECKS
# ============================================================
def check_conj2(g: Graph, st: ConnStats) -> Verdict:
    """Minimum degree >= 3 implies D(G) >= 1/2 (open; failures are reported, not raised)."""
    if not is_connected(g):
        return Verdict.not_applicable(CheckId.CONJ2, "disconnected")
    delta = min_degree(g)
    if delta < 3:
        return Verdict.not_applicable(CheckId.CONJ2, f"min degree {delta}")
    verdict = _at_least(CheckId.CONJ2, density(st), HALF, f"min degree {delta}")
    if verdict.passed:
        return verdict
    code = to_graph6(g)
    logger.warning("counterexample candidate for min-degree-3 density: %s D=%s", code, verdict.lhs)
    return Verdict(verdict.check_id, verdict.lhs, verdict.rhs, False, False, True,
                   f"counterexample candidate {code}", COUNTEREXAMPLE)


def check_tree_band(g: Graph, st: ConnStats) -> Verdict:
    """Trees whose internal vertices have degree >= 3 satisfy 1/2 <= D < 3/4."""
    if g.n < 2 or not is_tree(g):
        return Verdict.not_applicable(CheckId.TREE_BAND, "not a tree" if g.n >= 2 else "n=1")
    internal = [g.degree(v) for v in range(g.n) if g.degree(v) > 1]
    if any(d < 3 for d in internal):
        return Verdict.not_applicable(CheckId.TREE_BAND, "internal vertex of degree 2")
    d = density(st)
    ok = HALF <= d < THREE_QUARTERS
    return Verdict(CheckId.TREE_BAND, d, HALF, ok, d == HALF, True, f"D={d} upper=3/4")


# ============================================================
# ALL CHECKS
# ============================================================
def verify_all(
    g: Graph,
    st: Optional[ConnStats] = None,
    kappa: Optional[int] = None,
    budget: Optional[int] = None,
) -> list[Verdict]:
    st = connected_set_stats(g, budget) if st is None else st
    connected = is_connected(g)
    if kappa is None:
        kappa = vertex_connectivity(g)
    deleted = deleted_stats(g, budget) if connected and g.n > 1 else None
    return [
        check_thm2(g, st),
        check_thm3(g, st, kappa),
        check_thm4(g, st),
        check_cor1(g, st),
        check_identities(g, st),
        check_deletion_identity(g, st, deleted),
        check_induction_step(g, st, kappa, deleted),
        check_conj2(g, st),
        check_tree_band(g, st),
    ]


def overall_passed(verdicts: Sequence[Verdict]) -> bool:
    for verdict in verdicts:
        if verdict.flag == EQUALITY_MISMATCH:
            return False
        if verdict.applicable and verdict.check_id in BINDING and not verdict.passed:
            return False
    return True
