"""Polynomial-time stable-manipulation deciders.

Every decider answers the same question: can the manipulator cast ballots so
that the distinguished alternative c stays a co-winner no matter how each
voter i's ballot is perturbed within Kendall-Tau distance deltas[i]?

The single-manipulator deciders share a greedy skeleton: place c first, then
fill positions 2..m one at a time with any alternative that is "safe" there.
Safety of an alternative gets easier further down the ballot (the safe
positions form a suffix), which is what makes the greedy complete.
"""

from dataclasses import dataclass

import numpy as np

from . import perturb
from .flow import FlowNetwork
from .model import Instance, Ranking, shift_left, shift_right
from .perturb import KApprovalType
from .rules import Rule, UnsupportedRuleError, score_contrib


@dataclass(frozen=True)
class Decision:
    """YES with a witness manipulator profile, or NO.

    Witnesses from the polynomial deciders always place c first.  Oracle NO
    answers additionally carry a counterexample: the manipulator profile that
    was tested and an in-ball adversary profile defeating it.
    """

    is_yes: bool
    witness: tuple[Ranking, ...] | None = None
    counterexample: tuple[tuple[Ranking, ...], tuple[Ranking, ...]] | None = None

    @property
    def verdict(self) -> str:
        return "YES" if self.is_yes else "NO"

    def __post_init__(self):
        if self.is_yes and self.witness is None:
            raise ValueError("YES decisions must carry a witness")


def _trivial_yes(inst: Instance) -> Decision:
    return Decision(True, witness=((0,),) * inst.manipulators)


def _require_single_manipulator(inst: Instance, name: str):
    if inst.manipulators != 1:
        raise UnsupportedRuleError(
            f"the {name} decider supports exactly one manipulator, got {inst.manipulators}"
        )


def _greedy_from_safety(inst: Instance, safe) -> Decision:
    """Fill positions 2..m with any safe alternative; NO when a level has none.

    ``safe(a, t)`` must not depend on previous placements, and unsafe(t)
    must imply unsafe(t-1); together these make any-safe selection complete.
    """
    m = inst.m
    placed = [inst.c]
    remaining = [a for a in range(m) if a != inst.c]
    for t in range(2, m + 1):
        pick = next((a for a in remaining if safe(a, t)), None)
        if pick is None:
            return Decision(False)
        placed.append(pick)
        remaining.remove(pick)
    return Decision(True, witness=(tuple(placed),))


# --- scoring rules ---------------------------------------------------------


def scoring_deficits(inst: Instance, vector: tuple[int, ...]) -> dict[int, int]:
    """Worst achievable score(a) - score(c) over the adversary ball product,
    before the manipulator's own ballot is added."""
    p, c = inst.profile, inst.c
    base = [0] * p.m
    for r in p.rankings:
        for a, s in enumerate(score_contrib(r, vector)):
            base[a] += s
    deficits = {}
    for a in range(p.m):
        if a == c:
            continue
        swing = sum(
            perturb.worst_delta_scoring(r, c, a, d, vector)[0]
            for r, d in zip(p.rankings, inst.deltas)
        )
        deficits[a] = (base[a] - base[c]) + swing
    return deficits


def scoring_safety_table(inst: Instance, vector=None) -> dict[int, list[bool]]:
    """safe(a, t) for every a != c and t in 2..m; table[a][t-2]."""
    m = inst.m
    vector = vector if vector is not None else inst.rule.vector_for(m)
    deficits = scoring_deficits(inst, vector)
    return {
        a: [d <= vector[0] - vector[t - 1] for t in range(2, m + 1)]
        for a, d in deficits.items()
    }


def decide_scoring(inst: Instance, vector=None) -> Decision:
    """Greedy decider for any positional scoring rule, one manipulator."""
    if inst.m == 1:
        return _trivial_yes(inst)
    _require_single_manipulator(inst, "scoring")
    table = scoring_safety_table(inst, vector)
    return _greedy_from_safety(inst, lambda a, t: table[a][t - 2])


# --- maximin ---------------------------------------------------------------


def _margin_matrix(rankings, m: int) -> np.ndarray:
    pos = np.empty((len(rankings), m), dtype=np.int64)
    for i, r in enumerate(rankings):
        for p, a in enumerate(r):
            pos[i, a] = p
    return np.sign(pos[:, None, :] - pos[:, :, None]).sum(axis=0)


_BIG = 1 << 40


def _maximin_cowins(margins: np.ndarray, c: int) -> bool:
    scores = (margins + _BIG * np.eye(margins.shape[0], dtype=np.int64)).min(axis=1)
    return scores[c] == scores.max()


def maximin_adversary_profile(inst: Instance, a: int, b: int) -> tuple[Ranking, ...]:
    """Per-voter worst case for the guess that c's maximin score is its margin
    over b: push c immediately below b when the budget allows, then pull a
    left with whatever budget remains; otherwise just pull a left."""
    c = inst.c
    out = []
    for r, d in zip(inst.profile.rankings, inst.deltas):
        j = perturb.cost_place_after(r, c, b)
        if j <= d:
            out.append(shift_left(shift_right(r, c, j), a, d - j))
        else:
            out.append(shift_left(r, a, d))
    return tuple(out)


def maximin_lift_profile(inst: Instance, a: int) -> tuple[Ranking, ...]:
    """Every voter spends the whole budget lifting a, leaving c untouched.

    Splitting the budget between demoting c and promoting a is not always
    worst for c: with enough slack, burying budget in c's position can leave
    a lower than a full lift would, so this profile is probed as well."""
    return tuple(
        shift_left(r, a, d) for r, d in zip(inst.profile.rankings, inst.deltas)
    )


def decide_maximin(inst: Instance) -> Decision:
    if inst.m == 1:
        return _trivial_yes(inst)
    _require_single_manipulator(inst, "maximin")
    m, c = inst.m, inst.c
    adversary_cache: dict[tuple[int, int], np.ndarray] = {}

    def q_margins(a, b):
        key = (a, b)
        if key not in adversary_cache:
            adversary_cache[key] = _margin_matrix(maximin_adversary_profile(inst, a, b), m)
        return adversary_cache[key]

    lift_cache: dict[int, np.ndarray] = {}

    def lift_margins(a):
        if a not in lift_cache:
            lift_cache[a] = _margin_matrix(maximin_lift_profile(inst, a), m)
        return lift_cache[a]

    def safe(a, placed):
        rest = [x for x in range(m) if x != a and x not in placed]
        vote_margins = _margin_matrix([tuple(placed) + (a,) + tuple(rest)], m)
        if not _maximin_cowins(lift_margins(a) + vote_margins, c):
            return False
        return all(
            _maximin_cowins(q_margins(a, b) + vote_margins, c)
            for b in range(m)
            if b != c
        )

    placed = [c]
    remaining = [x for x in range(m) if x != c]
    for _t in range(2, m + 1):
        pick = next((a for a in remaining if safe(a, placed)), None)
        if pick is None:
            return Decision(False)
        placed.append(pick)
        remaining.remove(pick)
    return Decision(True, witness=(tuple(placed),))


# --- k-approval (any number of manipulators) -------------------------------


def decide_kapproval(inst: Instance, k: int) -> Decision:
    """Flow-based decider. lambda_a = l + n_neither - n_both caps how often a
    may enter a manipulator top-k; feasibility is a bipartite flow of value
    l*(k-1) assigning the non-c top-k slots."""
    m, c, ell = inst.m, inst.c, inst.manipulators
    if m == 1:
        return _trivial_yes(inst)
    if not 1 <= k <= m - 1:
        raise ValueError(f"k-approval needs 1 <= k <= m-1, got k={k}, m={m}")
    others = [a for a in range(m) if a != c]
    lam = {}
    for a in others:
        n_both = n_neither = 0
        for r, d in zip(inst.profile.rankings, inst.deltas):
            tp = perturb.classify_kapproval(r, d, c, a, k)
            if tp is KApprovalType.BOTH:
                n_both += 1
            elif tp is KApprovalType.NEITHER:
                n_neither += 1
        lam[a] = ell + n_neither - n_both
        if lam[a] < 0:
            return Decision(False)

    source, sink = 0, 1 + ell + len(others)
    net = FlowNetwork(sink + 1, source, sink)
    for i in range(ell):
        net.add_edge(source, 1 + i, k - 1)
    slot_edges = {}
    for i in range(ell):
        for j, a in enumerate(others):
            slot_edges[(i, a)] = net.add_edge(1 + i, 1 + ell + j, 1)
    for j, a in enumerate(others):
        net.add_edge(1 + ell + j, sink, min(lam[a], ell))
    if net.max_flow() != ell * (k - 1):
        return Decision(False)

    ballots = []
    for i in range(ell):
        tops = [a for a in others if net.flow_on(slot_edges[(i, a)]) == 1]
        rest = [a for a in others if a not in tops]
        ballots.append((c, *tops, *rest))
    return Decision(True, witness=tuple(ballots))


# --- simplified Bucklin ----------------------------------------------------


def sbucklin_safety_table(inst: Instance) -> dict[int, list[bool]]:
    """safe(a, t) tables for the simplified Bucklin decider.

    At boundary k the adversary keeps c in the top k of x + n_ain + n_neither
    ballots and lifts a into the top k of n_both + x + n_ain ballots, where x
    counts the either-or ballots spent on a.  Position t is unsafe when some
    k admits an x making c miss and a reach the majority thresholds (the
    threshold for a drops by one at k >= t, where the manipulator's own
    ballot already contains a).
    """
    p, c, m, n = inst.profile, inst.c, inst.m, inst.n
    ceil_half = (n + 1) // 2
    tables = {}
    for a in range(m):
        if a == c:
            continue
        strict_ks, weak_ks = [], []
        for k in range(1, m + 1):
            counts = {tp: 0 for tp in KApprovalType}
            for r, d in zip(p.rankings, inst.deltas):
                counts[perturb.classify_kapproval(r, d, c, a, k)] += 1
            n_both = counts[KApprovalType.BOTH]
            n_either = counts[KApprovalType.EITHER]
            n_ain = counts[KApprovalType.A_IN_ONLY]
            n_neither = counts[KApprovalType.NEITHER]
            strict = weak = False
            for x in range(n_either + 1):
                if x + n_ain + n_neither > ceil_half - 1:
                    continue
                a_count = n_both + x + n_ain
                strict = strict or a_count >= ceil_half + 1
                weak = weak or a_count >= ceil_half
            if strict:
                strict_ks.append(k)
            if weak:
                weak_ks.append(k)
        min_strict = min(strict_ks, default=m + 1)
        max_weak = max(weak_ks, default=0)
        tables[a] = [
            not (min_strict < t or max_weak >= t) for t in range(2, m + 1)
        ]
    return tables


def decide_simplified_bucklin(inst: Instance) -> Decision:
    if inst.m == 1:
        return _trivial_yes(inst)
    _require_single_manipulator(inst, "simplified Bucklin")
    table = sbucklin_safety_table(inst)
    return _greedy_from_safety(inst, lambda a, t: table[a][t - 2])


# --- Bucklin ---------------------------------------------------------------


def bucklin_safety_table(inst: Instance) -> dict[int, list[bool]]:
    """safe(a, t) tables for the Bucklin decider.

    c loses to a exactly when for some k the full (n+1)-voter profile has
    a reaching a strict majority in the top k, c missing a strict majority
    in the top k-1, and a strictly ahead of c in top-k counts.  Per ballot
    the adversary picks any reachable (a in top k, c in top k-1, c in top k)
    indicator triple; a dynamic program over ballots explores the counter
    sums those choices can reach.
    """
    p, c, m, n = inst.profile, inst.c, inst.m, inst.n
    maj = (n + 1) // 2 + 1  # strict majority of the n+1 voters
    tables = {}
    for a in range(m):
        if a == c:
            continue
        strict_ks, weak_ks = [], []
        for k in range(1, m + 1):
            states = {(0, 0, 0)}
            for r, d in zip(p.rankings, inst.deltas):
                options = perturb.bucklin_counter_options(r, d, c, a, k)
                states = {
                    (sa + da, g1 + dg1, g2 + dg2)
                    for (sa, g1, g2) in states
                    for (da, dg1, dg2) in options
                }
            g1_limit = maj - 1 - (1 if k >= 2 else 0)
            strict = weak = False
            for sa, g1, g2 in states:
                if g1 > g1_limit:
                    continue
                if sa >= maj and sa > g2 + 1:
                    strict = True
                if sa >= maj - 1 and sa > g2:
                    weak = True
                if strict and weak:
                    break
            if strict:
                strict_ks.append(k)
            if weak:
                weak_ks.append(k)
        min_strict = min(strict_ks, default=m + 1)
        max_weak = max(weak_ks, default=0)
        tables[a] = [
            not (min_strict < t or max_weak >= t) for t in range(2, m + 1)
        ]
    return tables


def decide_bucklin(inst: Instance) -> Decision:
    if inst.m == 1:
        return _trivial_yes(inst)
    _require_single_manipulator(inst, "Bucklin")
    table = bucklin_safety_table(inst)
    return _greedy_from_safety(inst, lambda a, t: table[a][t - 2])


# --- dispatch ---------------------------------------------------------------


def decide(inst: Instance) -> Decision:
    """Route an instance to its polynomial decider.

    Copeland and STV have none (stable manipulation is co-NP-hard for
    Copeland, and STV manipulation is already hard with exact information);
    callers fall back to the exhaustive oracle for those.
    """
    rule = inst.rule
    if not isinstance(rule, Rule):
        raise UnsupportedRuleError(f"instance carries no usable rule: {rule!r}")
    if rule.kind == "plurality":
        return decide_kapproval(inst, 1)
    if rule.kind == "veto":
        return decide_kapproval(inst, inst.m - 1)
    if rule.kind == "k-approval":
        return decide_kapproval(inst, rule.k)
    if rule.kind in ("borda", "scoring"):
        return decide_scoring(inst)
    if rule.kind == "maximin":
        return decide_maximin(inst)
    if rule.kind == "bucklin":
        return decide_bucklin(inst)
    if rule.kind == "simplified-bucklin":
        return decide_simplified_bucklin(inst)
    raise UnsupportedRuleError(f"no polynomial decider for the {rule.kind} rule")
