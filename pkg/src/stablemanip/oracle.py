"""Ground-truth deciders.

``decide_exhaustive`` enumerates manipulator ballots and the full product of
per-voter Kendall-Tau balls, which makes it the reference every polynomial
decider is checked against and the working decider for rules without one
(Copeland, STV).  ``decide_anonymous`` is the constant-m algorithm that
enumerates anonymous profiles and checks reachability with a bipartite flow.

Enumeration is deterministic.  Adversary ball members are visited worst-for-c
first (ties broken lexicographically) so defeats are found early; the verdict
is order-independent and the NO counterexample is always taken from the first
manipulator candidate.
"""

import math
from collections import Counter
from dataclasses import dataclass
from itertools import combinations_with_replacement, permutations
from operator import add

from . import rules as _rules
from .deciders import Decision
from .flow import FlowNetwork
from .model import Instance, Profile, Ranking, kendall_tau, max_swap_distance
from .rules import Rule

DEFAULT_EXHAUSTIVE_BUDGET = 200_000_000
DEFAULT_ANONYMOUS_BUDGET = 200_000


class ResourceBudgetError(RuntimeError):
    """Raised when an oracle's enumeration space exceeds its node budget."""


@dataclass(frozen=True)
class KTBall:
    """All rankings within ``radius`` adjacent swaps of ``center``."""

    center: Ranking
    radius: int
    members: tuple[Ranking, ...]


def kt_ball(r: Ranking, delta: int) -> KTBall:
    """Exact ball via BFS over adjacent transpositions."""
    if delta < 0:
        raise ValueError("delta must be non-negative")
    r = tuple(r)
    seen = {r}
    frontier = [r]
    for _ in range(min(delta, max_swap_distance(len(r)))):
        nxt = []
        for cur in frontier:
            for i in range(len(cur) - 1):
                swapped = cur[:i] + (cur[i + 1], cur[i]) + cur[i + 2 :]
                if swapped not in seen:
                    seen.add(swapped)
                    nxt.append(swapped)
        if not nxt:
            break
        frontier = nxt
    return KTBall(r, delta, tuple(sorted(seen)))


def ball_match(p: Profile, deltas, target: dict[Ranking, int]) -> tuple[Ranking, ...] | None:
    """Assign each voter a ranking from ``target`` (with multiplicities)
    inside the voter's ball, or None when impossible.  Bipartite max-flow."""
    n = p.n
    target = {tuple(r): int(mult) for r, mult in target.items() if mult}
    if sum(target.values()) != n:
        raise ValueError("target multiplicities must sum to the voter count")
    targets = sorted(target)
    source, sink = 0, 1 + n + len(targets)
    net = FlowNetwork(sink + 1, source, sink)
    voter_edges = []
    for i, (r, d) in enumerate(zip(p.rankings, deltas)):
        net.add_edge(source, 1 + i, 1)
        row = {}
        for j, t in enumerate(targets):
            if kendall_tau(r, t) <= d:
                row[t] = net.add_edge(1 + i, 1 + n + j, 1)
        voter_edges.append(row)
    for j, t in enumerate(targets):
        net.add_edge(1 + n + j, sink, target[t])
    if net.max_flow() != n:
        return None
    assigned = []
    for row in voter_edges:
        assigned.append(next(t for t, eid in row.items() if net.flow_on(eid) == 1))
    return tuple(assigned)


def feasible_assignment(p: Profile, deltas, target: dict[Ranking, int]) -> bool:
    """True iff voters can realise the anonymous profile ``target`` within
    their Kendall-Tau budgets."""
    return ball_match(p, deltas, target) is not None


# --- exhaustive adversary search -------------------------------------------


def _witness_rankings(m: int, c: int, rule: Rule) -> list[Ranking]:
    if rule is None or rule.places_c_first_safely:
        others = [a for a in range(m) if a != c]
        return [(c, *p) for p in permutations(others)]
    # STV is not monotone, so c-first is not a safe normalisation there;
    # enumerate everything, c-near-the-top first.
    return sorted(permutations(range(m)), key=lambda r: (r.index(c), r))


def witness_candidates(m: int, c: int, ell: int, rule: Rule) -> list[tuple[Ranking, ...]]:
    """Manipulator profiles to try.  All rules here are anonymous, so for
    ell > 1 multisets of ballots suffice."""
    singles = _witness_rankings(m, c, rule)
    if ell == 1:
        return [(r,) for r in singles]
    return list(combinations_with_replacement(singles, ell))


def _checker(rule: Rule, m: int, n_total: int):
    """(per-ranking contribution, defeated(total, c)) for additive rules,
    or None when only the generic winner routine applies (STV)."""
    if rule.is_scoring:
        vector = rule.vector_for(m)

        def contrib(r):
            return _rules.score_contrib(r, vector)

        def defeated(acc, c):
            return max(acc) > acc[c]

    elif rule.kind == "maximin":
        contrib = _rules.margin_contrib

        def defeated(acc, c):
            scores = _rules.maximin_scores_from_margins(acc, m)
            return max(scores) > scores[c]

    elif rule.kind == "copeland":
        contrib = _rules.margin_contrib
        alpha = rule.alpha

        def defeated(acc, c):
            scores = _rules.copeland_scores_from_margins(acc, m, alpha)
            return max(scores) > scores[c]

    elif rule.kind in ("bucklin", "simplified-bucklin"):
        contrib = _rules.topk_contrib
        simplified = rule.kind == "simplified-bucklin"

        def defeated(acc, c):
            return c not in _rules.winners_from_topk(acc, m, n_total, simplified)

    else:
        return None
    return contrib, defeated


class _AdversarySearch:
    """Shared state for scanning the product of per-voter balls."""

    def __init__(self, inst: Instance):
        self.inst = inst
        self.m, self.c = inst.m, inst.c
        # worst-for-c first: c as low as possible, lexicographic tie-break
        self.balls = [
            sorted(kt_ball(r, d).members, key=lambda q: (-q.index(inst.c), q))
            for r, d in zip(inst.profile.rankings, inst.deltas)
        ]
        self.space = math.prod(len(b) for b in self.balls)
        n_total = inst.n + inst.manipulators
        checker = _checker(inst.rule, self.m, n_total)
        if checker is None:
            self._contrib, self._defeated, self._contribs = None, None, None
        else:
            self._contrib, self._defeated = checker
            self._contribs = [[(q, self._contrib(q)) for q in ball] for ball in self.balls]
        self._hot: tuple[Ranking, ...] | None = None  # last defeating profile

    def _base(self, witness) -> tuple[int, ...]:
        acc = self._contrib(witness[0])
        for w in witness[1:]:
            acc = tuple(map(add, acc, self._contrib(w)))
        return acc

    def _generic_defeated(self, combo, witness) -> bool:
        rankings = tuple(combo) + tuple(witness)
        return self.c not in _rules.winners(Profile(self.m, rankings), self.inst.rule)

    def find_defeat(self, witness) -> tuple[Ranking, ...] | None:
        """First adversary profile (in scan order) defeating ``witness``."""
        if self._hot is not None and self._defeats(self._hot, witness):
            return self._hot
        found = self._scan(witness)
        if found is not None:
            self._hot = found
        return found

    def _defeats(self, combo, witness) -> bool:
        if self._contribs is None:
            return self._generic_defeated(combo, witness)
        acc = self._base(witness)
        for q in combo:
            acc = tuple(map(add, acc, self._contrib(q)))
        return self._defeated(acc, self.c)

    def _scan(self, witness) -> tuple[Ranking, ...] | None:
        n = len(self.balls)
        chosen: list[Ranking] = [None] * n
        if self._contribs is None:
            def rec_generic(i, combo):
                if i == n:
                    return self._generic_defeated(tuple(combo), witness)
                for q in self.balls[i]:
                    combo.append(q)
                    if rec_generic(i + 1, combo):
                        return True
                    combo.pop()
                return False

            combo: list[Ranking] = []
            return tuple(combo) if rec_generic(0, combo) else None

        base = self._base(witness)
        defeated, contribs, c = self._defeated, self._contribs, self.c

        def rec(i, acc):
            if i == n:
                return defeated(acc, c)
            for q, qc in contribs[i]:
                chosen[i] = q
                if rec(i + 1, tuple(map(add, acc, qc))):
                    return True
            return False

        return tuple(chosen) if rec(0, base) else None


def decide_exhaustive(inst: Instance, budget: int = DEFAULT_EXHAUSTIVE_BUDGET) -> Decision:
    """Definition-level decider: YES iff some manipulator profile keeps c a
    co-winner against the whole product of adversary balls.

    NO answers carry (first manipulator candidate, defeating profile)."""
    if inst.m == 1:
        return Decision(True, witness=((0,),) * inst.manipulators)
    candidates = witness_candidates(inst.m, inst.c, inst.manipulators, inst.rule)
    search = _AdversarySearch(inst)
    space = len(candidates) * search.space
    if space > budget:
        raise ResourceBudgetError(
            f"search space {space} exceeds budget {budget} "
            f"({len(candidates)} manipulator profiles x {search.space} adversary profiles)"
        )
    first = None
    for witness in candidates:
        defeat = search.find_defeat(witness)
        if defeat is None:
            return Decision(True, witness=witness)
        if first is None:
            first = (witness, defeat)
    return Decision(False, counterexample=first)


def verify_witness(
    inst: Instance, witness: tuple[Ranking, ...], budget: int = DEFAULT_EXHAUSTIVE_BUDGET
) -> tuple[Ranking, ...] | None:
    """Exhaustively look for an adversary profile defeating ``witness``.
    None means the witness survives every in-ball perturbation."""
    search = _AdversarySearch(inst)
    if search.space > budget:
        raise ResourceBudgetError(f"adversary space {search.space} exceeds budget {budget}")
    return search.find_defeat(tuple(tuple(w) for w in witness))


# --- anonymous enumeration (constant m) -------------------------------------


def decide_anonymous(inst: Instance, budget: int = DEFAULT_ANONYMOUS_BUDGET) -> Decision:
    """Enumerate anonymous manipulator and adversary profiles; an adversary
    profile counts only if a bipartite flow certifies the voters can reach it
    within their budgets.  Exact for every anonymous rule, practical only for
    small m (the default budget admits m <= 3 comfortably)."""
    m, n, c, ell = inst.m, inst.n, inst.c, inst.manipulators
    if m == 1:
        return Decision(True, witness=((0,),) * ell)
    fact = math.factorial(m)
    n_adversary = math.comb(n + fact - 1, fact - 1)
    n_witness = math.comb(ell + fact - 1, fact - 1)
    if n_adversary > budget or n_witness > budget:
        raise ResourceBudgetError(
            f"anonymous enumeration needs {n_adversary} adversary and "
            f"{n_witness} manipulator profiles; budget is {budget}"
        )
    all_rankings = sorted(permutations(range(m)))
    feasible = []
    for combo in combinations_with_replacement(all_rankings, n):
        assigned = ball_match(inst.profile, inst.deltas, Counter(combo))
        if assigned is not None:
            feasible.append((combo, assigned))

    first = None
    for witness in combinations_with_replacement(all_rankings, ell):
        beat = None
        for combo, assigned in feasible:
            if c not in _rules.winners(Profile(m, combo + witness), inst.rule):
                beat = assigned
                break
        if beat is None:
            return Decision(True, witness=witness)
        if first is None:
            first = (witness, beat)
    return Decision(False, counterexample=first)
