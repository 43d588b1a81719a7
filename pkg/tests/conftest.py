import random

import pytest

from degedit.generator import generate_random_planar_instance
from degedit.graph import Graph
from degedit.instance import CONNECTED, PLAIN, Instance
from degedit.oracle import DEFAULT_EDGE_CAP, DEFAULT_VERTEX_CAP


def random_corpus(count, base_seed, n_lo=1, n_hi=9, k_sum_max=3, raw=False,
                  variants=(PLAIN, CONNECTED), cost_hi=6):
    """Seeded random instances kept within the oracle's default caps."""
    rng = random.Random(base_seed)
    out = []
    attempt = 0
    while len(out) < count:
        k_v = rng.randint(0, k_sum_max)
        k_e = rng.randint(0, k_sum_max - k_v)
        inst = generate_random_planar_instance(
            rng.randint(n_lo, n_hi), k_v, k_e, rng.randint(0, cost_hi),
            rng.choice(variants), seed=base_seed + attempt, raw=raw)
        attempt += 1
        if inst.graph.n <= DEFAULT_VERTEX_CAP and inst.graph.m <= DEFAULT_EDGE_CAP:
            out.append(inst)
    return out


def make_instance(vertices, edges, delta, k_v=0, k_e=0, cost_budget=0,
                  variant=PLAIN, weight_v=None, weight_e=None,
                  cost_v=None, cost_e=None):
    """Instance builder with uniform defaults: weights 1, costs 1."""
    g = Graph(vertices, edges)
    if isinstance(delta, int):
        delta = {v: delta for v in g.vertices}
    wv = weight_v if weight_v is not None else {v: 1 for v in g.vertices}
    cv = cost_v if cost_v is not None else {v: 1 for v in g.vertices}
    we = weight_e if weight_e is not None else {e: 1 for e in g.edge_set()}
    ce = cost_e if cost_e is not None else {e: 1 for e in g.edge_set()}
    return Instance(g, delta, wv, we, cv, ce, k_v, k_e, cost_budget, variant)


def path_instance(n, delta, **kw):
    return make_instance(range(1, n + 1), [(i, i + 1) for i in range(1, n)],
                         delta, **kw)


def cycle_instance(n, delta, **kw):
    edges = [(i, i + 1) for i in range(1, n)] + [(1, n)]
    return make_instance(range(1, n + 1), edges, delta, **kw)


@pytest.fixture
def rng():
    return random.Random(0xDE6ED1)
