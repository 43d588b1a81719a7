"""Instance families that drive specific kernel-phase rules.

Random planar instances rarely survive to the late reduction phases, so
each rare rule gets a shaped family built around a common trick set:

* the decorated hub sits at the centre of two spine tails, so the greedy
  dominating set picks it (largest distance-2 ball) and it stays in the
  decomposition core instead of collapsing into a boundaryless part;
* heavy weights (budget + 1) price chosen vertices and edges out of every
  subsolution, keeping them outside the candidate sets;
* "fix" edges (a light edge whose deletion is the locally unique repair)
  enter the candidate edge set and shield their endpoints from the early
  no-answer rules.

Decoration (costs, occasionally shape toggles) is randomized per seed.
"""

import random

from degedit.graph import Graph
from degedit.instance import CONNECTED, PLAIN, Instance


def _build(vs, edges, delta, k_v, k_e, cbudget, variant, heavy_v=(), heavy_e=(),
           rng=None):
    rng = rng or random.Random(0)
    g = Graph(vs, edges)
    heavy_v = set(heavy_v)
    heavy_e = {tuple(sorted(e)) for e in heavy_e}
    wv = {v: (k_v + 1 if v in heavy_v else 1) for v in g.vertices}
    we = {e: (k_e + 1 if e in heavy_e else 1) for e in g.edge_set()}
    cv = {v: rng.choice((0, 1, 2)) for v in g.sorted_vertices()}
    ce = {e: rng.choice((0, 1, 2)) for e in sorted(g.edge_set())}
    return Instance(g, delta, wv, we, cv, ce, k_v, k_e, cbudget, variant)


def _tail(edges, delta, heavy_e, hub, ids):
    """hub - m1 - m2 - b - r.  The light (m1, m2) edge repairs both middles
    and the light (b, r) edge repairs the far end, so the whole tail is
    shielded; heavy edges at the joints isolate it from the decorations."""
    m1, m2, b, r = ids
    edges += [(hub, m1), (m1, m2), (m2, b), (b, r)]
    delta.update({m1: 1, m2: 1, b: 1, r: 0})
    heavy_e.update({tuple(sorted((hub, m1))), (m2, b)})


def _centered(vs_extra, edges, delta, heavy_e, hub=1):
    """Attach two tails to the hub and return the full vertex list."""
    base = max([hub] + vs_extra) + 1
    left = tuple(range(base, base + 4))
    right = tuple(range(base + 4, base + 8))
    _tail(edges, delta, heavy_e, hub, left)
    _tail(edges, delta, heavy_e, hub, right)
    return sorted({hub, *vs_extra, *left, *right})


def forge_twin_pair(seed, variant=PLAIN, adjacent_twins=False):
    """Heavy same-signature unsatisfied twins over two candidate vertices.

    Drives twin-reduction (plain), t-prime-deletion (connected), and with
    ``adjacent_twins`` t-prime-contraction."""
    rng = random.Random(seed)
    # hub a(1); light c(2); twins t1(3), t2(4) adjacent to both a and c
    edges = [(1, 2), (1, 3), (1, 4), (2, 3), (2, 4)]
    heavy_e = {(1, 2), (1, 3), (1, 4), (2, 3), (2, 4)}
    delta = {1: 5, 2: 2, 3: 1, 4: 1}
    heavy_v = {3, 4}
    if adjacent_twins:
        edges.append((3, 4))
        heavy_e.add((3, 4))
        delta[3] = delta[4] = 2
    vs = _centered([2, 3, 4], edges, delta, heavy_e)
    return _build(vs, edges, delta, 1, 1, rng.randint(3, 9), variant,
                  heavy_v, heavy_e, rng), None


def forge_t_prime_contraction(seed):
    return forge_twin_pair(seed, CONNECTED, adjacent_twins=True)


def _sat_tails_pair(edges, delta, heavy_e, hub, base):
    """Two anchor tails hub - m1 - m2 - b - r with rigid satisfied middles.

    Each tail end pair (b, r) repairs itself by deleting its light edge,
    and cross-chords r -> opposite m2 keep the loose ends connected when
    that happens, so the tails stay shielded through every phase while
    anchoring the hub in the decomposition core.  Returns the 8 tail ids."""
    left = tuple(range(base, base + 4))
    right = tuple(range(base + 4, base + 8))
    for (m1, m2, b, r) in (left, right):
        edges += [(hub, m1), (m1, m2), (m2, b), (b, r)]
        delta.update({m1: 2, m2: 3, b: 1, r: 1})
        heavy_e.update({tuple(sorted((hub, m1))), (m1, m2), (m2, b)})
    for r, other_m2 in ((left[3], right[1]), (right[3], left[1])):
        edges.append(tuple(sorted((r, other_m2))))
        heavy_e.add(tuple(sorted((r, other_m2))))
    return left + right


def forge_s_neighbour(seed):
    """Hub with satisfied heavy pendants and a target below their count,
    shielded from the candidate-count rule by a chorded fix edge."""
    rng = random.Random(seed)
    # hub 1; satisfied heavy pendants 2, 3; fix 4 chorded to a rigid middle
    edges = [(1, 2), (1, 3), (1, 4)]
    heavy_e = {(1, 2), (1, 3)}
    delta = {1: 1, 2: 1, 3: 1, 4: 1}
    tails = _sat_tails_pair(edges, delta, heavy_e, 1, 5)
    edges.append((4, tails[1]))  # chord keeps the fix vertex connected
    heavy_e.add((4, tails[1]))
    delta[tails[1]] += 1
    vs = sorted({v for e in edges for v in e})
    inst = _build(vs, edges, delta, 2, 2, rng.randint(2, 7), CONNECTED,
                  {2, 3}, heavy_e, rng)
    return inst, {1, tails[1], tails[5]}


def forge_s_deletion(seed):
    """A satisfied heavy pendant that survives to the satisfied-vertex phase.

    The hub's surplus resolves by cascading deletion of its light fix
    pendant, after which the pendant fires the degree-one branch."""
    rng = random.Random(seed)
    # hub 1; satisfied heavy pendant 2; light fix pendant 3
    edges = [(1, 2), (1, 3)]
    heavy_e = {(1, 2)}
    delta = {1: 3, 2: 1, 3: 0}
    tails = _sat_tails_pair(edges, delta, heavy_e, 1, 4)
    vs = sorted({v for e in edges for v in e})
    inst = _build(vs, edges, delta, 2, 1, rng.randint(2, 7), CONNECTED,
                  {2}, heavy_e, rng)
    return inst, {1, tails[1], tails[5]}


def forge_s_contraction_2(seed):
    """A rigid degree-three vertex beyond the simpler satisfied-vertex rules.

    Its neighbourhood is pulled out of the candidates by the adjustment
    rule, so every neighbour carries a candidate-edge shield; the ball-rich
    anchor u1 lands in the core and hosts the merge."""
    rng = random.Random(seed)
    # anchor u1(1); rigid v(2); u2(3), u3(4); shields f1(5), f2(6), f3(7)
    edges = [(1, 2), (2, 3), (2, 4), (1, 5), (3, 6), (4, 7)]
    heavy_e = {(1, 2), (2, 3), (2, 4)}
    delta = {1: 3, 2: 3, 3: 1, 4: 1, 5: 1, 6: 1, 7: 1}
    tails = _sat_tails_pair(edges, delta, heavy_e, 1, 8)
    # chords keep the shields connected when their fix edges are deleted
    for x, anchor in ((5, tails[1]), (6, tails[5]), (7, tails[5])):
        edges.append((x, anchor))
        heavy_e.add((x, anchor))
        delta[anchor] += 1
    if rng.random() < 0.5:
        # a common neighbour of the rigid vertex and the anchor forces the
        # subdivision branch of the contraction
        edges.append((1, 3))
        heavy_e.add((1, 3))
        delta[1] += 1
        delta[3] += 1
    vs = sorted({v for e in edges for v in e})
    inst = _build(vs, edges, delta, 1, 2, rng.randint(2, 7), CONNECTED,
                  {2}, heavy_e, rng)
    return inst, {1, tails[1], tails[5]}


def forge_set_adjustment(seed, variant=PLAIN):
    """A satisfied heavy pendant adjacent to a core candidate."""
    rng = random.Random(seed)
    edges = [(1, 2), (1, 3)]
    heavy_e = {(1, 2)}
    delta = {1: 1, 2: 1, 3: 0}
    vs = _centered([2, 3], edges, delta, heavy_e)
    return _build(vs, edges, delta, 0, 3, rng.randint(2, 7), variant,
                  {2}, heavy_e, rng), None


def forge_stopping_no(seed):
    """Two components that both keep non-candidate vertices."""
    rng = random.Random(seed)
    vs = list(range(1, 7))
    edges = [(1, 2), (1, 3), (2, 3), (4, 5), (4, 6), (5, 6)]
    heavy_e = {(1, 3), (2, 3), (4, 6), (5, 6)}
    delta = {1: 1, 2: 1, 3: 2, 4: 1, 5: 1, 6: 2}
    return _build(vs, edges, delta, 0, 1, rng.randint(0, 5), CONNECTED,
                  set(), heavy_e, rng), None


def forge_stopping_isolate(seed):
    """A forced candidate deletion strands a heavy vertex as sole survivor."""
    rng = random.Random(seed)
    vs = [1, 2]
    edges = [(1, 2)]
    heavy_e = {(1, 2)}
    delta = {1: 1, 2: 0}
    return _build(vs, edges, delta, 1, rng.randint(0, 1), rng.randint(1, 5),
                  CONNECTED, {2}, heavy_e, rng), None


def forge_vertex_deletion_c(seed):
    """A remnant vertex whose candidate neighbours must all be deleted."""
    rng = random.Random(seed)
    edges = [(1, 2), (1, 3)]
    heavy_e = {(1, 2), (1, 3)}
    delta = {1: rng.choice((0, 1)), 2: 1, 3: 1}
    vs = _centered([2, 3], edges, delta, heavy_e)
    return _build(vs, edges, delta, 2, 1, rng.randint(2, 7), CONNECTED,
                  {1}, heavy_e, rng), None


def forge_s_contraction_1(seed):
    """An adjacent satisfied pair that survives normalization because each
    member keeps an unsatisfied neighbour."""
    rng = random.Random(seed)
    # hub 1 - u(2) - v(3) - y(4); hub fix 5; light chord shields y
    edges = [(1, 2), (2, 3), (3, 4), (1, 5)]
    heavy_e = {(1, 2), (2, 3), (3, 4)}
    delta = {1: 3, 2: 2, 3: 2, 4: 1, 5: 0}
    tails = _sat_tails_pair(edges, delta, heavy_e, 1, 6)
    edges.append((4, tails[1]))  # light: deleting it is y's repair
    delta[tails[1]] += 1
    heavy_e.add(tuple(sorted((tails[1], tails[2]))))
    vs = sorted({v for e in edges for v in e})
    inst = _build(vs, edges, delta, 2, 1, rng.randint(2, 7), CONNECTED,
                  {2, 3}, heavy_e, rng)
    return inst, {1, tails[1], tails[5]}


def forge_t_prime_reduction(seed):
    """Adjacent heavy unsatisfied twins in the plain variant: the edge
    between them is removed with both targets decremented."""
    return forge_twin_pair(seed, PLAIN, adjacent_twins=True)


FAMILIES = [
    ("twin-plain", lambda s: forge_twin_pair(s, PLAIN)),
    ("t-prime-reduction", forge_t_prime_reduction),
    ("s-contraction-1", forge_s_contraction_1),
    ("twin-connected", lambda s: forge_twin_pair(s, CONNECTED)),
    ("t-prime-contraction", forge_t_prime_contraction),
    ("s-neighbour", forge_s_neighbour),
    ("s-deletion", forge_s_deletion),
    ("s-contraction-2", forge_s_contraction_2),
    ("set-adjustment-plain", lambda s: forge_set_adjustment(s, PLAIN)),
    ("set-adjustment-connected", lambda s: forge_set_adjustment(s, CONNECTED)),
    ("stopping-no", forge_stopping_no),
    ("stopping-isolate", forge_stopping_isolate),
    ("vertex-deletion-c", forge_vertex_deletion_c),
]
