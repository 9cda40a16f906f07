import math
from itertools import permutations

import pytest

from stablemanip import kendall_tau
from stablemanip.model import rank
from stablemanip.perturb import (
    KApprovalType,
    bucklin_counter_options,
    bucklin_metatype,
    bucklin_type_of,
    classify_kapproval,
    cost_place_after,
    cost_pull_into_topk,
    cost_push_and_pull,
    cost_push_out_topk,
    min_swaps_two_zones,
    worst_delta_scoring,
)
from conftest import ball_brute, bfs_min_swaps

C, X, Y, Z = 0, 1, 2, 3


def test_cost_push_out_examples():
    assert cost_push_out_topk((C, X, Y, Z), C, 2) == 2
    assert cost_push_out_topk((X, Y, C, Z), C, 2) == 0  # already outside
    assert cost_push_out_topk((X, C, Y, Z), C, 2) == 1  # one swap across the boundary
    assert cost_push_out_topk((C, X, Y), C, 3) == math.inf


def test_cost_pull_into_examples():
    assert cost_pull_into_topk((X, C, Y, Z), C, 2) == 0
    assert cost_pull_into_topk((X, Y, Z, C), C, 1) == 3
    assert cost_pull_into_topk((X, Y, Z, C), Z, 2) == 1
    assert cost_pull_into_topk((C, X, Y, Z), Z, 2) == 2


def test_cost_push_and_pull_examples():
    assert cost_push_and_pull((C, X, Y), C, X, 1) == 1  # the crossing swap serves both
    assert cost_push_and_pull((C, Y, X), C, X, 1) == 2
    assert cost_push_and_pull((X, C, Y), C, X, 1) == 0


def test_cost_place_after_examples():
    assert cost_place_after((X, C, Y, Z), C, X) == 0
    assert cost_place_after((C, X, Y, Z), C, X) == 1
    assert cost_place_after((C, X, Y, Z), C, Z) == 3


def _bfs_grid(m):
    """Compare all closed-form costs to the BFS oracle for every ranking."""
    for r in permutations(range(m)):
        for x in range(m):
            for k in range(1, m + 1):
                assert cost_push_out_topk(r, x, k) == bfs_min_swaps(
                    r, lambda q: rank(q, x) > k
                ), (r, x, k)
                assert cost_pull_into_topk(r, x, k) == bfs_min_swaps(
                    r, lambda q: rank(q, x) <= k
                )
            for a in range(m):
                if a == x:
                    continue
                assert cost_place_after(r, x, a) == bfs_min_swaps(
                    r, lambda q: rank(q, a) < rank(q, x)
                )
                for k in range(1, m + 1):
                    assert cost_push_and_pull(r, x, a, k) == bfs_min_swaps(
                        r, lambda q: rank(q, x) > k and rank(q, a) <= k
                    ), (r, x, a, k)


def test_costs_match_bfs_oracle_m4():
    # acceptance extends this sweep to m = 5
    for m in (2, 3, 4):
        _bfs_grid(m)


def test_zone_costs_match_bfs_oracle_m4():
    m = 4
    zones = [(1, 1), (1, 2), (2, 3), (3, 4), (4, 4), (2, 2), (1, 4)]
    for r in permutations(range(m)):
        for xz in zones:
            for yz in zones:
                got = min_swaps_two_zones(r, C, X, xz, yz)
                want = bfs_min_swaps(
                    r,
                    lambda q: xz[0] <= rank(q, C) <= xz[1]
                    and yz[0] <= rank(q, X) <= yz[1],
                )
                assert got == want, (r, xz, yz)


def test_worst_delta_scoring_examples():
    borda = (2, 1, 0)
    delta, witness = worst_delta_scoring((C, X, Y), C, X, 1, borda)
    assert delta == 2 and witness == (X, C, Y)
    delta, witness = worst_delta_scoring((C, X, Y), C, X, 0, borda)
    assert delta == 0 and witness == (C, X, Y)
    one_approval = (1, 0, 0)
    delta, _ = worst_delta_scoring((C, X, Y), C, X, 1, one_approval)
    assert delta == 2  # c leaves the top spot and x takes it in one swap


def test_worst_delta_scoring_matches_ball_enumeration():
    vectors = {3: [(2, 1, 0), (1, 0, 0), (1, 1, 0)], 4: [(3, 2, 1, 0), (1, 1, 0, 0)]}
    for m, vecs in vectors.items():
        for r in permutations(range(m)):
            for delta in range(0, 4):
                for vector in vecs:
                    got, witness = worst_delta_scoring(r, C, X, delta, vector)
                    assert kendall_tau(r, witness) <= delta
                    want = max(
                        (vector[rank(r, C) - 1] - vector[rank(q, C) - 1])
                        + (vector[rank(q, X) - 1] - vector[rank(r, X) - 1])
                        for q in ball_brute(r, delta)
                    )
                    assert got == want, (r, delta, vector)
                    assert got >= 0


def test_classify_kapproval_examples():
    assert classify_kapproval((C, X, Y), 1, C, X, 1) is KApprovalType.BOTH
    # pulling x from rank 3 into the top spot costs 2, so only c-out fits delta=1
    assert classify_kapproval((C, Y, X), 1, C, X, 1) is KApprovalType.C_OUT_ONLY
    # first either-or case needs delta >= 2: singles cost 2 each, joint costs 3
    assert classify_kapproval((C, Y, Z, X), 2, C, X, 2) is KApprovalType.EITHER
    assert classify_kapproval((X, Y, C), 0, C, X, 1) is KApprovalType.BOTH


def test_classify_kapproval_partitions_and_matches_costs():
    m = 4
    for r in permutations(range(m)):
        for delta in range(0, 7):
            for k in range(1, m):
                tp = classify_kapproval(r, delta, C, X, k)
                out_c = cost_push_out_topk(r, C, k) <= delta
                in_x = cost_pull_into_topk(r, X, k) <= delta
                both = cost_push_and_pull(r, C, X, k) <= delta
                expected = (
                    KApprovalType.BOTH
                    if both
                    else KApprovalType.EITHER
                    if out_c and in_x
                    else KApprovalType.C_OUT_ONLY
                    if out_c
                    else KApprovalType.A_IN_ONLY
                    if in_x
                    else KApprovalType.NEITHER
                )
                assert tp is expected
                if both:
                    assert out_c and in_x  # joint feasibility implies each move fits


def test_bucklin_metatype_examples():
    r = (C, X, Y, Z)
    assert bucklin_metatype(r, 0, C, X, 2) == frozenset({bucklin_type_of(r, C, X, 2)})
    # with the full swap budget every type is reachable except those placing
    # c and a on the same slot: both exactly at k, and (for k=2) both on top
    assert len(bucklin_metatype(r, 6, C, X, 3)) == 7  # top-3 out-zone is the single slot 4
    assert len(bucklin_metatype(r, 6, C, X, 2)) == 7
    reached = bucklin_metatype((C, X, Y, Z), 1, C, X, 2)
    assert any(t.a_in_k and not t.c_out_k for t in reached)


def test_bucklin_metatype_matches_ball_enumeration():
    m = 4
    for r in permutations(range(m)):
        for delta in (0, 1, 2, 3):
            for k in (1, 2, 3, 4):
                got = bucklin_metatype(r, delta, C, X, k)
                want = frozenset(
                    bucklin_type_of(q, C, X, k) for q in ball_brute(r, delta)
                )
                assert got == want, (r, delta, k)


def test_bucklin_metatype_monotone_in_delta():
    r = (Y, C, Z, X)
    for k in (1, 2, 3):
        for delta in range(0, 6):
            assert bucklin_metatype(r, delta, C, X, k) <= bucklin_metatype(
                r, delta + 1, C, X, k
            )


def test_bucklin_counter_options_project_the_metatype():
    m = 4
    for r in permutations(range(m)):
        for delta in (0, 1, 2):
            for k in (1, 2, 3, 4):
                got = bucklin_counter_options(r, delta, C, X, k)
                want = {
                    (int(t.a_in_k), int(not t.c_out_k1), int(not t.c_out_k))
                    for t in bucklin_metatype(r, delta, C, X, k)
                }
                assert got == want


def test_push_and_pull_bounds():
    for r in permutations(range(4)):
        for k in range(1, 4):
            joint = cost_push_and_pull(r, C, X, k)
            single = (cost_push_out_topk(r, C, k), cost_pull_into_topk(r, X, k))
            assert max(single) <= joint <= sum(single)


def test_invalid_inputs():
    with pytest.raises(ValueError):
        cost_push_out_topk((C, X), C, 0)
    with pytest.raises(ValueError):
        cost_push_and_pull((C, X), C, C, 1)
    with pytest.raises(ValueError):
        worst_delta_scoring((C, X), C, X, -1, (1, 0))
