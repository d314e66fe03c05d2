"""Solvers that price an upgrade by the dearest edge it touches.

The norm of an upgrade here is max of c(e) over the edges whose weight
changed, and 0 when nothing changed.  Under this price an edge is either
left alone or raised all the way to its bound, so every solution is a set
of edges pushed to u.  The four problems mirror the scaled-raise family:

    sdipt_bh     spend at most K, maximize the distance sum
    sdiptc_bh    same, changing at most N edges
    mcsdipt_bh   reach distance sum D with the cheapest dearest edge
    mcsdiptc_bh  reach D while changing at most N edges
"""

from __future__ import annotations

import heapq
import math
from bisect import bisect_left

from .errors import NegativeBudget, NOutOfRange
from .report import SolveReport, Status
from .scores import edge_scores
from .selection import nth_largest
from .tree import EdgeAttrs, RootedTree, leaf_counts, modified_edges, snap_unchanged


def _finish_max(tree, attrs, counts, weights) -> SolveReport:
    weights = snap_unchanged(weights, attrs)
    objective = sum(counts[e] * weights[e] for e in tree.edge_ids)
    mods = modified_edges(weights, attrs)
    cost = max((attrs.c[e] for e in mods), default=0)
    return SolveReport(Status.FEASIBLE, weights, objective, cost, mods)


def sdipt_bh(tree: RootedTree, attrs: EdgeAttrs, budget) -> SolveReport:
    """Raise every edge whose cost fits under ``budget`` to its bound."""
    if budget < 0:
        raise NegativeBudget(f"budget {budget} is negative")
    counts = leaf_counts(tree)
    w, u, c = attrs.w, attrs.u, attrs.c
    weights = {e: u[e] if c[e] <= budget else w[e] for e in tree.edge_ids}
    return _finish_max(tree, attrs, counts, weights)


def sdiptc_bh(tree: RootedTree, attrs: EdgeAttrs, budget, max_changes: int) -> SolveReport:
    """Budgeted maximization touching at most ``max_changes`` edges.

    If at most max_changes edges are affordable at all, the unconstrained
    answer already qualifies.  Otherwise keep the max_changes affordable
    edges with the largest full-raise gains S(e), smaller ids first on ties.
    """
    if budget < 0:
        raise NegativeBudget(f"budget {budget} is negative")
    if not 1 <= max_changes <= tree.n:
        raise NOutOfRange(f"edge bound {max_changes} outside 1..{tree.n}")

    w, u, c = attrs.w, attrs.u, attrs.c
    affordable = [e for e in tree.edge_ids if c[e] <= budget]
    if len(affordable) <= max_changes:
        return sdipt_bh(tree, attrs, budget)

    counts = leaf_counts(tree)
    gains = [(e, counts[e] * (u[e] - w[e])) for e in affordable]
    chosen = set(nth_largest(gains, max_changes).chosen_ids)
    weights = {e: u[e] if e in chosen else w[e] for e in tree.edge_ids}
    return _finish_max(tree, attrs, counts, weights)


def mcsdipt_bh(tree: RootedTree, attrs: EdgeAttrs, demand) -> SolveReport:
    """Reach distance sum ``demand`` with the cheapest possible dearest edge.

    Any price ceiling admits exactly the edges at or below it, so walk the
    edges by ascending cost and stop at the first prefix whose total gain
    covers the gap.  The reported cost is the cost of the last edge of that
    prefix; zero-gain edges in the prefix are left untouched.  ``breakpoint``
    is the largest prefix length whose gain still falls short.
    """
    counts = leaf_counts(tree)
    w, u, c = attrs.w, attrs.u, attrs.c
    ids = list(tree.edge_ids)

    w_total = sum(counts[e] * w[e] for e in ids)
    u_total = sum(counts[e] * u[e] for e in ids)
    if u_total < demand:
        return SolveReport(Status.INFEASIBLE, None, math.inf, math.inf, frozenset())
    if w_total >= demand:
        return SolveReport(Status.ALREADY_SATISFIED, dict(w), 0, 0, frozenset())

    delta = demand - w_total
    alpha = sorted(ids, key=lambda e: (c[e], e))
    prefix_gain = [0] * (len(alpha) + 1)
    for i, e in enumerate(alpha, start=1):
        prefix_gain[i] = prefix_gain[i - 1] + counts[e] * (u[e] - w[e])

    take = bisect_left(prefix_gain, delta)  # smallest prefix covering delta
    weights = dict(w)
    for e in alpha[:take]:
        if u[e] > w[e]:
            weights[e] = u[e]
    weights = snap_unchanged(weights, attrs)
    cost = c[alpha[take - 1]]
    mods = modified_edges(weights, attrs)
    return SolveReport(Status.FEASIBLE, weights, cost, cost, mods,
                       breakpoint=take - 1)


def mcsdiptc_bh(tree: RootedTree, attrs: EdgeAttrs, demand, max_changes: int) -> SolveReport:
    """Reach ``demand`` changing at most ``max_changes`` edges.

    Infeasible when even the max_changes largest full-raise gains cannot
    cover the gap.  When the unconstrained cost-ordered answer already
    changes few enough edges it is passed through unchanged.  Otherwise the
    answer is the shortest cost-ordered prefix whose best max_changes gains
    cover the gap: the prefix length is found by bisection on that monotone
    quantity (tabulated with one running min-heap sweep), the edge set is
    the top gains inside the prefix with ties to smaller ids, and the cost
    is the last prefix edge, which always belongs to the set.
    """
    n = tree.n
    if not 1 <= max_changes <= n:
        raise NOutOfRange(f"edge bound {max_changes} outside 1..{n}")

    counts = leaf_counts(tree)
    w, u = attrs.w, attrs.u
    ids = list(tree.edge_ids)
    w_total = sum(counts[e] * w[e] for e in ids)
    if demand <= w_total:
        return SolveReport(Status.ALREADY_SATISFIED, dict(w), 0, 0, frozenset())

    table = edge_scores(tree, attrs, counts)
    S = table.S
    delta = demand - w_total
    best_cap = sum(S[e] for e in table.sorted_by_S[:max_changes])
    if best_cap < delta:
        return SolveReport(Status.INFEASIBLE, None, math.inf, math.inf, frozenset())

    base = mcsdipt_bh(tree, attrs, demand)
    if len(base.modified_edges) <= max_changes:
        return base

    alpha = table.sorted_by_c
    # capped[i] = sum of the max_changes largest S among the first N + i
    # prefix edges; non-decreasing in i, and the last entry is best_cap.
    heap = []
    running = 0
    capped = []
    for k, e in enumerate(alpha, start=1):
        s = S[e]
        if k <= max_changes:
            heapq.heappush(heap, s)
            running += s
        elif s > heap[0]:
            running += s - heapq.heappushpop(heap, s)
        if k >= max_changes:
            capped.append(running)

    take = max_changes + bisect_left(capped, delta)
    chosen = nth_largest([(e, S[e]) for e in alpha[:take]], max_changes).chosen_ids

    weights = dict(w)
    for e in chosen:
        if u[e] > w[e]:
            weights[e] = u[e]
    weights = snap_unchanged(weights, attrs)
    cost = attrs.c[alpha[take - 1]]
    mods = modified_edges(weights, attrs)
    return SolveReport(Status.FEASIBLE, weights, cost, cost, mods,
                       breakpoint=take)
