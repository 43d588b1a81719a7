import random

import pytest

from degedit.generator import random_planar_graph
from degedit.graph import (Graph, apply_edit, edge_key, is_planar,
                           planarity_certificate, verify_bipartite_planar_bound,
                           verify_certificate)


def k(n):
    vs = range(1, n + 1)
    return Graph(vs, [(i, j) for i in vs for j in vs if i < j])


def test_edge_key_canonical_and_loop_rejected():
    assert edge_key(3, 1) == (1, 3)
    with pytest.raises(ValueError):
        edge_key(2, 2)


def test_delete_vertex_from_path():
    g = Graph([1, 2, 3], [(1, 2), (2, 3)])
    h = g.delete_vertex(2)
    assert h.vertices == {1, 3}
    assert h.m == 0
    # original untouched
    assert g.m == 2


def test_contract_triangle_merges_parallel_edges():
    g = Graph([1, 2, 3], [(1, 2), (1, 3), (2, 3)])
    h, z = g.contract_edge(1, 2)
    assert z == 4
    assert h.vertices == {3, 4}
    assert h.edge_set() == {(3, 4)}


def test_delete_edge_from_cycle():
    g = Graph([1, 2, 3, 4], [(1, 2), (2, 3), (3, 4), (1, 4)])
    h = g.delete_edge(1, 2)
    assert h.edge_set() == {(2, 3), (3, 4), (1, 4)}
    assert h.degree(1) == h.degree(2) == 1


def test_apply_edit_dispatch_and_errors():
    g = Graph([1, 2], [(1, 2)])
    assert apply_edit(g, ("delete-vertex", 1)).vertices == {2}
    assert apply_edit(g, ("delete-edge", 1, 2)).m == 0
    assert apply_edit(g, ("add-vertex", 5, [1])).has_edge(1, 5)
    with pytest.raises(ValueError):
        apply_edit(g, ("delete-vertex", 9))
    with pytest.raises(ValueError):
        apply_edit(g, ("delete-edge", 1, 9))
    with pytest.raises(ValueError):
        apply_edit(g, ("frobnicate", 1))


def test_contraction_never_creates_loops_or_parallels(rng):
    for trial in range(50):
        g = random_planar_graph(rng.randint(3, 10), rng)
        edges = list(g.edges())
        if not edges:
            continue
        u, v = rng.choice(edges)
        h, z = g.contract_edge(u, v)
        for x in h.vertices:
            assert x not in h.neighbors(x)
            assert len(h.neighbors(x)) == len(set(h.neighbors(x)))


def test_planarity_basics():
    assert is_planar(k(4))
    assert not is_planar(k(5))
    # K3,3 minus one edge is planar
    left, right = [1, 2, 3], [4, 5, 6]
    edges = [(a, b) for a in left for b in right]
    assert not is_planar(Graph(range(1, 7), edges))
    assert is_planar(Graph(range(1, 7), edges[1:]))


def test_planarity_certificates_verify(rng):
    graphs = [k(4), k(5), Graph(), Graph([1, 2, 3], [])]
    left, right = [1, 2, 3], [4, 5, 6]
    graphs.append(Graph(range(1, 7), [(a, b) for a in left for b in right]))
    for _ in range(40):
        graphs.append(random_planar_graph(rng.randint(1, 12), rng))
    for g in graphs:
        ok, cert = planarity_certificate(g)
        assert verify_certificate(g, ok, cert), f"bad certificate for {g!r}"


def test_planarity_preserved_by_edits(rng):
    for trial in range(1000):
        g = random_planar_graph(rng.randint(4, 10), rng)
        for _ in range(4):
            choices = []
            if g.n > 1:
                choices.append("dv")
            edges = list(g.edges())
            if edges:
                choices += ["de", "ce"]
            if not choices:
                break
            op = rng.choice(choices)
            if op == "dv":
                g = g.delete_vertex(rng.choice(g.sorted_vertices()))
            elif op == "de":
                g = g.delete_edge(*rng.choice(edges))
            else:
                g, _ = g.contract_edge(*rng.choice(edges))
            assert is_planar(g)


def cube_graph():
    # Q3: vertices 0..7 as bitstrings, edges between Hamming distance 1
    edges = [(a, b) for a in range(8) for b in range(8)
             if a < b and bin(a ^ b).count("1") == 1]
    return Graph(range(8), edges)


def test_bipartite_planar_bound_cube():
    g = cube_graph()
    v1 = [v for v in range(8) if bin(v).count("1") % 2 == 0]
    v2 = [v for v in range(8) if bin(v).count("1") % 2 == 1]
    assert is_planar(g)
    assert all(g.degree(v) == 3 for v in v2)
    assert verify_bipartite_planar_bound(g, v1, v2)  # 4 <= 2*4 - 4


def test_bipartite_planar_bound_small_star():
    g = Graph([1, 2, 3, 4], [(1, 4), (2, 4), (3, 4)])
    assert verify_bipartite_planar_bound(g, [1, 2, 3], [4])  # 1 <= 2


def test_bipartite_planar_bound_rejects_low_degree():
    g = Graph([1, 2, 3], [(1, 3), (2, 3)])
    with pytest.raises(ValueError, match="degree"):
        verify_bipartite_planar_bound(g, [1, 2], [3])


def test_bipartite_planar_bound_rejects_non_bipartition():
    g = Graph([1, 2, 3, 4], [(1, 2), (1, 3), (1, 4)])
    with pytest.raises(ValueError, match="bipartition"):
        verify_bipartite_planar_bound(g, [1, 2], [2, 3, 4])
    with pytest.raises(ValueError, match="bipartite"):
        verify_bipartite_planar_bound(Graph([1, 2, 3], [(1, 2), (1, 3), (2, 3)]),
                                      [1, 2], [3])
