"""Shared independent oracles for the test suite.

These deliberately avoid the library's own closed forms: costs come from BFS
shortest paths in the adjacent-transposition graph, distances from exhaustive
pair counting, and balls from filtering all permutations by that distance.
"""

import math
from itertools import permutations

import numpy as np
import pytest

from stablemanip import Instance, Profile, Rule


def adjacent_swaps(r):
    for i in range(len(r) - 1):
        yield r[:i] + (r[i + 1], r[i]) + r[i + 2 :]


def bfs_min_swaps(r, predicate):
    """Fewest adjacent swaps from r to any ranking satisfying predicate."""
    r = tuple(r)
    if predicate(r):
        return 0
    seen = {r}
    frontier = [r]
    dist = 0
    while frontier:
        dist += 1
        nxt = []
        for cur in frontier:
            for swapped in adjacent_swaps(cur):
                if swapped in seen:
                    continue
                if predicate(swapped):
                    return dist
                seen.add(swapped)
                nxt.append(swapped)
        frontier = nxt
    return math.inf


def kt_pairs(r1, r2):
    """Discordant-pair count, the definitional Kendall-Tau distance."""
    m = len(r1)
    pos1 = {a: i for i, a in enumerate(r1)}
    pos2 = {a: i for i, a in enumerate(r2)}
    return sum(
        1
        for x in range(m)
        for y in range(x + 1, m)
        if (pos1[x] < pos1[y]) != (pos2[x] < pos2[y])
    )


def ball_brute(r, delta):
    """KT ball by filtering all permutations on pair-count distance."""
    return sorted(p for p in permutations(sorted(r)) if kt_pairs(r, p) <= delta)


def random_ranking(rng, m):
    return tuple(int(x) for x in rng.permutation(m))


def random_profile_of(rng, m, n):
    return Profile(m, tuple(random_ranking(rng, m) for _ in range(n)))


def random_instance(rng, rule, m=None, m_max=4, n_max=4, delta_max=2, manipulators=1):
    if m is None:
        m = int(rng.integers(2, m_max + 1))
    n = int(rng.integers(1, n_max + 1))
    profile = random_profile_of(rng, m, n)
    cap = min(delta_max, m * (m - 1) // 2)
    deltas = tuple(int(rng.integers(0, cap + 1)) for _ in range(n))
    c = int(rng.integers(0, m))
    return Instance(profile, c, deltas, manipulators, rule)


def rule_sampler(kind, rng, m):
    """A concrete Rule of the given kind, valid for m alternatives."""
    if kind == "k-approval":
        return Rule.k_approval(int(rng.integers(1, m)))
    if kind == "scoring":
        steps = [int(rng.integers(0, 3)) for _ in range(m - 1)]
        if not any(steps):
            steps[int(rng.integers(0, m - 1))] = 1
        vec = [0]
        for s in reversed(steps):
            vec.append(vec[-1] + s)
        return Rule.scoring(tuple(reversed(vec)))
    return Rule.parse(kind)


@pytest.fixture
def rng():
    return np.random.default_rng(20260808)
