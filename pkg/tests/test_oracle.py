import random

import pytest

from degedit.errors import CapacityError
from degedit.generator import generate_random_planar_instance
from degedit.instance import CONNECTED, PLAIN, Solution, check_solution, is_efficient
from degedit.oracle import brute_force_min_cost, equivalence_check

from conftest import cycle_instance, make_instance, path_instance


def test_triangle_trivial_yes():
    inst = make_instance([1, 2, 3], [(1, 2), (1, 3), (2, 3)], 2)
    rep = brute_force_min_cost(inst)
    assert rep.feasible and rep.min_cost == 0
    assert [s.canonical() for s in rep.optima] == [((), ())]


def test_c4_plain_two_matchings():
    # Hand-enumerated over C4's 16 edge subsets: exactly the two perfect
    # matchings fix all degrees at 1 within the budgets.
    inst = cycle_instance(4, 1, k_e=2, cost_budget=2)
    rep = brute_force_min_cost(inst)
    assert rep.feasible and rep.min_cost == 2
    assert [s.canonical() for s in rep.optima] == [
        ((), ((1, 2), (3, 4))), ((), ((1, 4), (2, 3)))]
    assert not rep.truncated


def test_c4_connected_infeasible():
    inst = cycle_instance(4, 1, k_e=2, cost_budget=2, variant=CONNECTED)
    rep = brute_force_min_cost(inst)
    assert not rep.feasible and rep.min_cost is None


def test_p3_connected_full_deletion():
    inst = path_instance(3, 0, k_v=3, cost_budget=9, variant=CONNECTED,
                         cost_v={1: 0, 2: 0, 3: 0},
                         cost_e={(1, 2): 0, (2, 3): 0})
    rep = brute_force_min_cost(inst)
    assert rep.feasible
    assert {tuple(sorted(s.deleted_vertices)) for s in rep.optima} >= {(1, 2, 3)}


def test_optima_all_valid_and_efficient(rng):
    for seed in range(60):
        inst = generate_random_planar_instance(
            rng.randint(2, 8), rng.randint(0, 2), rng.randint(0, 2),
            rng.randint(0, 5), rng.choice((PLAIN, CONNECTED)), seed=seed)
        rep = brute_force_min_cost(inst)
        for sol in rep.optima:
            assert check_solution(inst, sol).ok
            assert is_efficient(inst, sol)
            assert sol.total_cost == rep.min_cost


def test_efficiency_closure(rng):
    # Dropping U-incident edges from any valid solution keeps it valid and
    # never raises cost, so restricting the search to efficient pairs is
    # lossless.
    for seed in range(40):
        inst = generate_random_planar_instance(
            rng.randint(2, 7), 2, 2, 6, PLAIN, seed=1000 + seed)
        rep = brute_force_min_cost(inst)
        if not rep.feasible:
            continue
        best = rep.optima[0]
        for extra in inst.graph.incident_edges(next(iter(best.deleted_vertices), -1)) \
                if best.deleted_vertices else []:
            padded = Solution.of(inst, best.deleted_vertices,
                                 set(best.deleted_edges) | {extra})
            if inst.edge_weight(padded.deleted_edges) > inst.k_e \
                    or padded.total_cost > inst.cost_budget:
                continue
            assert check_solution(inst, padded).ok
            assert padded.total_cost >= best.total_cost


def test_isomorphism_invariance(rng):
    for seed in range(25):
        inst = generate_random_planar_instance(
            rng.randint(2, 8), 1, 2, 5, PLAIN, seed=2000 + seed)
        perm = {v: i + 101 for i, v in enumerate(inst.graph.sorted_vertices())}
        rng.shuffle(order := list(perm))
        g2_edges = [(perm[a], perm[b]) for a, b in inst.graph.edges()]
        relabeled = make_instance(
            perm.values(), g2_edges,
            {perm[v]: inst.delta[v] for v in perm},
            inst.k_v, inst.k_e, inst.cost_budget, inst.variant,
            weight_v={perm[v]: inst.weight_v[v] for v in perm},
            weight_e={tuple(sorted((perm[a], perm[b]))): inst.weight_e[(a, b)]
                      for a, b in inst.graph.edges()},
            cost_v={perm[v]: inst.cost_v[v] for v in perm},
            cost_e={tuple(sorted((perm[a], perm[b]))): inst.cost_e[(a, b)]
                    for a, b in inst.graph.edges()})
        a, b = brute_force_min_cost(inst), brute_force_min_cost(relabeled)
        assert a.feasible == b.feasible
        assert a.min_cost == b.min_cost
        assert len(a.optima) == len(b.optima)


def test_caps_enforced():
    inst = generate_random_planar_instance(13, 1, 1, 3, PLAIN, seed=7,
                                           keep_prob=0.3)
    with pytest.raises(CapacityError):
        brute_force_min_cost(inst, vertex_cap=12)
    # generous caps allow it
    rep = brute_force_min_cost(inst, vertex_cap=20, edge_cap=40)
    assert isinstance(rep.feasible, bool)


def test_equivalence_check_reflexive():
    inst = cycle_instance(4, 1, k_e=2, cost_budget=2)
    assert equivalence_check(inst, inst)


def test_optima_truncation_flag():
    inst = cycle_instance(4, 1, k_e=2, cost_budget=2)
    rep = brute_force_min_cost(inst, optima_cap=1)
    assert rep.feasible and rep.truncated
    assert len(rep.optima) == 1
