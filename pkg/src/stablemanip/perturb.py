"""Minimum-swap reachability primitives used by every decider.

All costs are minimum numbers of adjacent transpositions.  Infeasible moves
(for example pushing an alternative below position m) cost ``math.inf`` so
callers can compare against a budget uniformly.  Every closed form here is
checked against a BFS shortest-path oracle over the adjacent-transposition
graph in the test suite before any decider relies on it.
"""

import math
from enum import Enum
from typing import NamedTuple

from .model import Ranking, rank, shift_left, shift_right


def cost_push_out_topk(r: Ranking, x: int, k: int) -> int | float:
    """Swaps needed so rank(x) > k.  Infinite when k = m."""
    m = len(r)
    if not 1 <= k <= m:
        raise ValueError(f"k must lie in 1..{m}, got {k}")
    if k == m:
        return math.inf
    return max(0, k - rank(r, x) + 1)


def cost_pull_into_topk(r: Ranking, x: int, k: int) -> int:
    """Swaps needed so rank(x) <= k."""
    if not 1 <= k <= len(r):
        raise ValueError(f"k must lie in 1..{len(r)}, got {k}")
    return max(0, rank(r, x) - k)


def cost_push_and_pull(r: Ranking, c: int, a: int, k: int) -> int | float:
    """Swaps needed so that simultaneously rank(c) > k and rank(a) <= k.

    When both moves are needed c sits left of the boundary and a right of it,
    so the two trajectories cross exactly once and that swap is shared.
    """
    if a == c:
        raise ValueError("need two distinct alternatives")
    m = len(r)
    if not 1 <= k <= m:
        raise ValueError(f"k must lie in 1..{m}, got {k}")
    if k == m:
        return math.inf
    pc, pa = rank(r, c), rank(r, a)
    need_c = pc <= k
    need_a = pa > k
    if not need_c and not need_a:
        return 0
    if not need_a:
        return k - pc + 1
    if not need_c:
        return pa - k
    return pa - pc


def cost_place_after(r: Ranking, c: int, b: int) -> int:
    """Swaps needed so that b is ranked above c; 0 when it already is."""
    if b == c:
        raise ValueError("need two distinct alternatives")
    pc, pb = rank(r, c), rank(r, b)
    return 0 if pb < pc else pb - pc


def min_swaps_two_zones(r: Ranking, x: int, y: int, x_zone, y_zone) -> int | float:
    """Swaps needed to move x into rank interval ``x_zone`` and y into
    ``y_zone`` (both inclusive, 1-indexed) at the same time.

    Enumerates final rank pairs; leaving the other alternatives in their
    original relative order is always optimal, so the cost of a final pair is
    the number of others each element passes plus one if x and y swap sides.
    """
    m = len(r)
    px, py = rank(r, x), rank(r, y)
    x_before = px < py
    px_others = px - 1 - (0 if x_before else 1)
    py_others = py - 1 - (1 if x_before else 0)
    best = math.inf
    for fx in range(max(1, x_zone[0]), min(m, x_zone[1]) + 1):
        for fy in range(max(1, y_zone[0]), min(m, y_zone[1]) + 1):
            if fx == fy:
                continue
            fx_before = fx < fy
            fx_others = fx - 1 - (0 if fx_before else 1)
            fy_others = fy - 1 - (1 if fx_before else 0)
            cost = (
                abs(fx_others - px_others)
                + abs(fy_others - py_others)
                + (fx_before != x_before)
            )
            if cost < best:
                best = cost
    return best


def worst_delta_scoring(
    r: Ranking, c: int, a: int, delta: int, vector: tuple[int, ...]
) -> tuple[int, Ranking]:
    """Worst combined score swing against c in favour of a within ``delta``
    swaps: push c right by j, then pull a left with the remaining budget,
    maximised over j.  Returns the swing and a ranking realising it."""
    if a == c:
        raise ValueError("need two distinct alternatives")
    if delta < 0:
        raise ValueError("delta must be non-negative")
    m = len(r)
    pc, pa = rank(r, c), rank(r, a)
    best, best_j = -1, 0
    for j in range(delta + 1):
        cj = min(pc + j, m)
        aj = pa - 1 if pc < pa <= cj else pa
        af = max(1, aj - (delta - j))
        cf = cj + 1 if af <= cj < aj else cj
        swing = (vector[pc - 1] - vector[cf - 1]) + (vector[af - 1] - vector[pa - 1])
        if swing > best:
            best, best_j = swing, j
    witness = shift_left(shift_right(r, c, best_j), a, delta - best_j)
    return best, witness


class KApprovalType(Enum):
    """How a single ballot can be perturbed relative to a top-k boundary."""

    BOTH = "both"            # c out of top k and a into top k, jointly
    C_OUT_ONLY = "c-out"     # only pushing c out is within budget
    A_IN_ONLY = "a-in"       # only pulling a in is within budget
    EITHER = "either"        # each single move fits, the joint move does not
    NEITHER = "neither"


def classify_kapproval(r: Ranking, delta: int, c: int, a: int, k: int) -> KApprovalType:
    out_c = cost_push_out_topk(r, c, k)
    in_a = cost_pull_into_topk(r, a, k)
    if cost_push_and_pull(r, c, a, k) <= delta:
        return KApprovalType.BOTH
    if out_c <= delta and in_a <= delta:
        return KApprovalType.EITHER
    if out_c <= delta:
        return KApprovalType.C_OUT_ONLY
    if in_a <= delta:
        return KApprovalType.A_IN_ONLY
    return KApprovalType.NEITHER


class BucklinType(NamedTuple):
    """Position of c and a relative to the boundaries k-1 and k.

    The four predicates mirror the decider's counters: c outside the top k,
    c outside the top k-1, a inside the top k-1, a inside the top k.  Prefix
    containment forces c_out_k => c_out_k1 and a_in_k1 => a_in_k, so only 9
    of the 16 combinations are realizable.
    """

    c_out_k: bool
    c_out_k1: bool
    a_in_k1: bool
    a_in_k: bool


REALIZABLE_BUCKLIN_TYPES = tuple(
    BucklinType(c1, c2, a1, a2)
    for c1, c2 in ((True, True), (False, True), (False, False))
    for a1, a2 in ((True, True), (False, True), (False, False))
)


def bucklin_type_of(r: Ranking, c: int, a: int, k: int) -> BucklinType:
    pc, pa = rank(r, c), rank(r, a)
    return BucklinType(pc > k, pc > k - 1, pa <= k - 1, pa <= k)


def _c_zone(t: BucklinType, k: int, m: int):
    if t.c_out_k:
        return (k + 1, m)
    if t.c_out_k1:
        return (k, k)
    return (1, k - 1)


def _a_zone(t: BucklinType, k: int, m: int):
    if t.a_in_k1:
        return (1, k - 1)
    if t.a_in_k:
        return (k, k)
    return (k + 1, m)


def bucklin_metatype(
    r: Ranking, delta: int, c: int, a: int, k: int
) -> frozenset[BucklinType]:
    """All BucklinTypes reachable from ``r`` within ``delta`` swaps."""
    if a == c:
        raise ValueError("need two distinct alternatives")
    m = len(r)
    reachable = set()
    for t in REALIZABLE_BUCKLIN_TYPES:
        if min_swaps_two_zones(r, c, a, _c_zone(t, k, m), _a_zone(t, k, m)) <= delta:
            reachable.add(t)
    return frozenset(reachable)


def bucklin_counter_options(
    r: Ranking, delta: int, c: int, a: int, k: int
) -> set[tuple[int, int, int]]:
    """Reachable (a in top k, c in top k-1, c in top k) indicator triples.

    This is the projection of the meta-type that the Bucklin decider's
    dynamic program consumes; a's k-1 boundary is irrelevant at level k.
    """
    m = len(r)
    c_zones = {(1, 1): (1, k - 1), (0, 1): (k, k), (0, 0): (k + 1, m)}
    options = set()
    for alpha, a_zone in ((1, (1, k)), (0, (k + 1, m))):
        for (g1, g2), c_zone in c_zones.items():
            if min_swaps_two_zones(r, c, a, c_zone, a_zone) <= delta:
                options.add((alpha, g1, g2))
    return options
