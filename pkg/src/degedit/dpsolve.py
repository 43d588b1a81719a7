"""Exact solvers over nice tree decompositions, plain and connected.

Bottom-up tables are kept per node.  A key records, for the subgraph below
the node: which bag vertices are deleted, which bag edges are deleted, the
degree damage already inflicted on each kept bag vertex from below (deleted
below-bag neighbours plus deleted below-bag edges), and the exact vertex
and edge weight spent so far.  The connected solver additionally tracks the
partition of kept bag vertices into components of the partial graph, plus a
flag for a component that no longer meets the bag (legal only while no kept
bag vertex remains; at most one such component can ever survive).

Keys use exact spent weight rather than a remaining-budget allowance; the
two forms determine each other (an allowance answer is the best entry over
all spent weights within it), and ``lookup`` exposes that view.  Values are
minimum-cost deletion pairs with deterministic lexicographic tie-breaking
on (sorted vertex ids, sorted edge pairs).
"""

from __future__ import annotations

from bisect import bisect_left
from dataclasses import dataclass

from .instance import CONNECTED, PLAIN, Instance, Solution
from .treewidth import (FORGET, INTRODUCE, JOIN, LEAF, NiceTreeDecomposition,
                        decompose, to_nice, validate)


@dataclass
class _Ctx:
    inst: Instance
    ntd: NiceTreeDecomposition
    ids: list[int]                      # index -> vertex id (ascending)
    idx: dict[int, int]
    adj: list[int]                      # index -> neighbour bitmask
    deg: list[int]
    delta: list[int]
    wv: list[int]
    cv: list[int]
    edges: list[tuple[int, int]]        # edge number -> id pair (lex sorted)
    we: list[int]
    ce: list[int]
    span: int                           # damage cap k_v + k_e
    connected: bool
    bag_idx: list[tuple[int, ...]]      # node -> sorted bag (as indices)
    bag_mask: list[int]
    incident: list[list[tuple[int, int, int]]]  # node -> (edge_no, other, bit)

    def vertex_sig(self, mask: int) -> tuple[int, ...]:
        out = []
        i = 0
        while mask:
            if mask & 1:
                out.append(self.ids[i])
            mask >>= 1
            i += 1
        return tuple(out)

    def edge_sig(self, mask: int) -> tuple[tuple[int, int], ...]:
        out = []
        i = 0
        while mask:
            if mask & 1:
                out.append(self.edges[i])
            mask >>= 1
            i += 1
        return tuple(out)

    def mask_vertex_weight(self, mask: int) -> int:
        total = 0
        i = 0
        while mask:
            if mask & 1:
                total += self.wv[i]
            mask >>= 1
            i += 1
        return total

    def mask_vertex_cost(self, mask: int) -> int:
        total = 0
        i = 0
        while mask:
            if mask & 1:
                total += self.cv[i]
            mask >>= 1
            i += 1
        return total

    def mask_edge_weight(self, mask: int) -> int:
        total = 0
        i = 0
        while mask:
            if mask & 1:
                total += self.we[i]
            mask >>= 1
            i += 1
        return total

    def mask_edge_cost(self, mask: int) -> int:
        total = 0
        i = 0
        while mask:
            if mask & 1:
                total += self.ce[i]
            mask >>= 1
            i += 1
        return total


def _prepare(inst: Instance, ntd: NiceTreeDecomposition) -> _Ctx:
    ids = inst.graph.sorted_vertices()
    idx = {v: i for i, v in enumerate(ids)}
    adj = [0] * len(ids)
    for v in ids:
        for u in inst.graph.neighbors(v):
            adj[idx[v]] |= 1 << idx[u]
    edges = sorted(inst.graph.edges())
    eno = {(idx[a], idx[b]): i for i, (a, b) in enumerate(edges)}
    ctx = _Ctx(
        inst=inst, ntd=ntd, ids=ids, idx=idx, adj=adj,
        deg=[inst.graph.degree(v) for v in ids],
        delta=[inst.delta[v] for v in ids],
        wv=[inst.weight_v[v] for v in ids],
        cv=[inst.cost_v[v] for v in ids],
        edges=edges,
        we=[inst.weight_e[e] for e in edges],
        ce=[inst.cost_e[e] for e in edges],
        span=inst.k_v + inst.k_e,
        connected=inst.connected_variant,
        bag_idx=[], bag_mask=[], incident=[])
    for node in range(len(ntd)):
        bag = tuple(sorted(idx[v] for v in ntd.bags[node]))
        ctx.bag_idx.append(bag)
        ctx.bag_mask.append(sum(1 << i for i in bag))
        inc: list[tuple[int, int, int]] = []
        if ntd.kinds[node] in (INTRODUCE, FORGET) and ntd.vertex[node] is not None:
            v = idx[ntd.vertex[node]]
            others = bag if ntd.kinds[node] == INTRODUCE else \
                ctx.bag_idx[ntd.children[node][0]]
            for u in others:
                if u != v and (adj[v] >> u) & 1:
                    key = (u, v) if u < v else (v, u)
                    inc.append((eno[key], u, 1 << u))
        ctx.incident.append(inc)
    return ctx


# entry: (cost, u_sig, d_sig, u_mask, d_mask)

def _update(table: dict, key: tuple, cost: int, u_mask: int, d_mask: int,
            ctx: _Ctx) -> None:
    cur = table.get(key)
    if cur is not None and cur[0] < cost:
        return
    cand = (cost, ctx.vertex_sig(u_mask), ctx.edge_sig(d_mask), u_mask, d_mask)
    if cur is None or cand[:3] < cur[:3]:
        table[key] = cand


def _kept(bag: tuple[int, ...], x_mask: int) -> tuple[int, ...]:
    return tuple(i for i in bag if not (x_mask >> i) & 1)


def _relabel(labels: list[int]) -> tuple[int, ...]:
    seen: dict[int, int] = {}
    out = []
    for lab in labels:
        if lab not in seen:
            seen[lab] = len(seen)
        out.append(seen[lab])
    return tuple(out)


def _guard(ctx: _Ctx, node: int, table: dict) -> None:
    # key count can never exceed the size of the key space
    b = len(ctx.bag_idx[node])
    bag_mask = ctx.bag_mask[node]
    be = sum(1 for i, (a, c) in enumerate(ctx.edges)
             if (bag_mask >> ctx.idx[a]) & 1 and (bag_mask >> ctx.idx[c]) & 1)
    bound = (2 ** b) * (2 ** be) * (ctx.span + 1) ** b \
        * (ctx.inst.k_v + 1) * (ctx.inst.k_e + 1)
    if ctx.connected:
        bound *= 2 * (b + 1) ** b
    if len(table) > bound:
        raise RuntimeError(
            f"table at node {node} has {len(table)} keys, bound {bound}")


def process_node(ctx: _Ctx, node: int, child_tables: list[dict]) -> dict:
    """Build one node's table from its children's tables."""
    kind = ctx.ntd.kinds[node]
    if kind == LEAF:
        key = (0, 0, (), 0, 0) + (((), False) if ctx.connected else ())
        table = {key: (0, (), (), 0, 0)}
    elif kind == INTRODUCE:
        table = _introduce(ctx, node, child_tables[0])
    elif kind == FORGET:
        table = _forget(ctx, node, child_tables[0])
    elif kind == JOIN:
        table = _join(ctx, node, child_tables[0], child_tables[1])
    else:
        raise AssertionError(f"unknown node kind {kind!r}")
    _guard(ctx, node, table)
    return table


def _introduce(ctx: _Ctx, node: int, child: dict) -> dict:
    inst = ctx.inst
    v = ctx.idx[ctx.ntd.vertex[node]]
    v_bit = 1 << v
    cand = ctx.incident[node]  # edges from v into the child bag
    child_bag = ctx.bag_idx[ctx.ntd.children[node][0]]
    table: dict = {}
    for key, ent in child.items():
        x, y, dmg, uv, ue = key[:5]
        cost, _, _, u_mask, d_mask = ent
        # branch: delete v
        uv2 = uv + ctx.wv[v]
        if uv2 <= inst.k_v:
            key2 = (x | v_bit, y, dmg, uv2, ue) + key[5:]
            _update(table, key2, cost + ctx.cv[v], u_mask | v_bit, d_mask, ctx)
        # branch: keep v, choosing the subset of its kept-bag edges to delete
        if ctx.connected and key[6]:
            continue  # a closed component tolerates no new kept vertex
        live = [(e, u, ub) for (e, u, ub) in cand if not (x >> u) & 1]
        kept_before = _kept(child_bag, x)
        pos = bisect_left(kept_before, v)
        n_live = len(live)
        for pick in range(1 << n_live):
            ue2, extra_cost, l_mask, survivors = ue, 0, 0, []
            ok = True
            for j in range(n_live):
                e, u, ub = live[j]
                if (pick >> j) & 1:
                    ue2 += ctx.we[e]
                    if ue2 > inst.k_e:
                        ok = False
                        break
                    extra_cost += ctx.ce[e]
                    l_mask |= 1 << e
                else:
                    survivors.append(u)
            if not ok:
                continue
            dmg2 = dmg[:pos] + (0,) + dmg[pos:]
            if ctx.connected:
                blocks = key[5]
                labels = list(blocks[:pos]) + [len(blocks) + 1] + list(blocks[pos:])
                kept_after = kept_before[:pos] + (v,) + kept_before[pos:]
                if survivors:
                    target = labels[pos]
                    merged = {labels[kept_after.index(u)] for u in survivors}
                    labels = [target if l in merged else l for l in labels]
                key2 = (x, y | l_mask, dmg2, uv, ue2, _relabel(labels), False)
            else:
                key2 = (x, y | l_mask, dmg2, uv, ue2)
            _update(table, key2, cost + extra_cost, u_mask, d_mask | l_mask, ctx)
    return table


def _forget(ctx: _Ctx, node: int, child: dict) -> dict:
    v = ctx.idx[ctx.ntd.vertex[node]]
    v_bit = 1 << v
    child_bag = ctx.bag_idx[ctx.ntd.children[node][0]]
    v_edges = ctx.incident[node]  # edges from v into the child bag
    table: dict = {}
    for key, ent in child.items():
        x, y, dmg, uv, ue = key[:5]
        cost, _, _, u_mask, d_mask = ent
        kept_before = _kept(child_bag, x)
        if (x >> v) & 1:
            # v was deleted: its kept bag neighbours take one damage each
            dmg2 = list(dmg)
            ok = True
            for i, u in enumerate(kept_before):
                if (ctx.adj[v] >> u) & 1:
                    dmg2[i] += 1
                    if dmg2[i] > ctx.span:
                        ok = False
                        break
            if not ok:
                continue
            key2 = (x & ~v_bit, y, tuple(dmg2), uv, ue) + key[5:]
            _update(table, key2, cost, u_mask, d_mask, ctx)
            continue
        # v kept: its final degree is fixed now
        pos = bisect_left(kept_before, v)
        l_mask = 0
        l_count = 0
        bumps = []
        for e, u, _ub in v_edges:
            if (y >> e) & 1:
                l_mask |= 1 << e
                l_count += 1
                bumps.append(u)
        deleted_nbrs = bin(ctx.adj[v] & x).count("1")
        if ctx.delta[v] != ctx.deg[v] - deleted_nbrs - l_count - dmg[pos]:
            continue
        dmg2 = list(dmg[:pos] + dmg[pos + 1:])
        kept_after = kept_before[:pos] + kept_before[pos + 1:]
        ok = True
        for u in bumps:
            i = kept_after.index(u)
            dmg2[i] += 1
            if dmg2[i] > ctx.span:
                ok = False
                break
        if not ok:
            continue
        if ctx.connected:
            blocks, closed = key[5], key[6]
            mine = blocks[pos]
            rest = list(blocks[:pos]) + list(blocks[pos + 1:])
            if mine not in rest:
                if rest:
                    continue  # a bag-less component beside open blocks
                closed = True
            key2 = (x, y & ~l_mask, tuple(dmg2), uv, ue,
                    _relabel(rest), closed)
        else:
            key2 = (x, y & ~l_mask, tuple(dmg2), uv, ue)
        _update(table, key2, cost, u_mask, d_mask, ctx)
    return table


def _join(ctx: _Ctx, node: int, left: dict, right: dict) -> dict:
    inst = ctx.inst
    bag = ctx.bag_idx[node]
    groups: dict[tuple[int, int], list] = {}
    for key, ent in right.items():
        groups.setdefault((key[0], key[1]), []).append((key, ent))
    table: dict = {}
    xw_cache: dict[int, tuple[int, int]] = {}
    yw_cache: dict[int, tuple[int, int]] = {}
    for keyl, entl in left.items():
        x, y = keyl[0], keyl[1]
        partners = groups.get((x, y))
        if not partners:
            continue
        if x not in xw_cache:
            xw_cache[x] = (ctx.mask_vertex_weight(x), ctx.mask_vertex_cost(x))
        if y not in yw_cache:
            yw_cache[y] = (ctx.mask_edge_weight(y), ctx.mask_edge_cost(y))
        xw, xc = xw_cache[x]
        yw, yc = yw_cache[y]
        dmgl, uvl, uel = keyl[2], keyl[3], keyl[4]
        costl, _, _, uml, dml = entl
        kept = _kept(bag, x)
        for keyr, entr in partners:
            uv2 = uvl + keyr[3] - xw
            if uv2 > inst.k_v:
                continue
            ue2 = uel + keyr[4] - yw
            if ue2 > inst.k_e:
                continue
            dmgr = keyr[2]
            dmg2 = tuple(a + b for a, b in zip(dmgl, dmgr))
            if any(d > ctx.span for d in dmg2):
                continue
            if ctx.connected:
                if keyl[6] and keyr[6]:
                    continue  # two components that can never meet again
                closed = keyl[6] or keyr[6]
                parent = list(range(len(kept)))

                def find(a):
                    while parent[a] != a:
                        parent[a] = parent[parent[a]]
                        a = parent[a]
                    return a

                for blocks in (keyl[5], keyr[5]):
                    first: dict[int, int] = {}
                    for i, lab in enumerate(blocks):
                        if lab in first:
                            ra, rb = find(first[lab]), find(i)
                            if ra != rb:
                                parent[rb] = ra
                        else:
                            first[lab] = i
                key2 = (x, y, dmg2, uv2, ue2,
                        _relabel([find(i) for i in range(len(kept))]), closed)
            else:
                key2 = (x, y, dmg2, uv2, ue2)
            costr = entr[0]
            cost2 = costl + costr - xc - yc
            _update(table, key2, cost2, uml | entr[3], dml | entr[4], ctx)
    return table


def run_tables(ctx: _Ctx) -> list[dict]:
    tables: list[dict] = []
    for node in range(len(ctx.ntd)):
        kids = [tables[c] for c in ctx.ntd.children[node]]
        tables.append(process_node(ctx, node, kids))
        for c in ctx.ntd.children[node]:
            tables[c] = None  # free child tables once consumed
    return tables


def lookup(table: dict, x_mask: int, y_mask: int, dmg: tuple, h_v: int, h_e: int,
           connected_key: tuple = ()):
    """Allowance view of a table: best entry with spent weight within budget."""
    best = None
    for key, ent in table.items():
        if key[0] != x_mask or key[1] != y_mask or key[2] != dmg:
            continue
        if key[3] > h_v or key[4] > h_e:
            continue
        if connected_key and key[5:] != connected_key:
            continue
        if best is None or ent[:3] < best[:3]:
            best = ent
    return best


def root_answers(ctx: _Ctx, root_table: dict) -> list[tuple[int, int, tuple]]:
    """Feasible (spent_v, spent_e, entry) rows at the empty root bag."""
    out = []
    for key, ent in sorted(root_table.items()):
        if key[0] == 0 and key[1] == 0 and key[2] == ():
            out.append((key[3], key[4], ent))
    return out


def best_within(ctx: _Ctx, answers, h_v: int, h_e: int) -> Solution | None:
    best = None
    for uv, ue, ent in answers:
        if uv > h_v or ue > h_e or ent[0] > ctx.inst.cost_budget:
            continue
        if best is None or ent[:3] < best[:3]:
            best = ent
    if best is None:
        return None
    u = frozenset(best[1])
    d = frozenset(best[2])
    return Solution(u, d, best[0])


class PreparedSolve:
    """One DP run; answers can be sliced per budget allowance afterwards."""

    def __init__(self, inst: Instance, ntd: NiceTreeDecomposition | None = None,
                 *, check: bool = True):
        if ntd is None:
            ntd = to_nice(decompose(inst.graph), inst.graph)
        elif check:
            verdict = validate(inst.graph, ntd)
            if not verdict:
                raise ValueError(f"invalid decomposition: {verdict.reason}")
        self.ctx = _prepare(inst, ntd)
        tables = run_tables(self.ctx)
        self.root_table = tables[-1]
        self.answers = root_answers(self.ctx, self.root_table)

    def solve(self, h_v: int | None = None, h_e: int | None = None) -> Solution | None:
        inst = self.ctx.inst
        return best_within(self.ctx, self.answers,
                           inst.k_v if h_v is None else h_v,
                           inst.k_e if h_e is None else h_e)


def _solve(inst: Instance, ntd, variant: str, enforce_window: bool) -> Solution | None:
    if inst.variant != variant:
        raise ValueError(f"instance variant is {inst.variant!r}, expected {variant!r}")
    if enforce_window and not inst.in_degree_window():
        raise ValueError("degrees violate the solvable window; normalize first")
    return PreparedSolve(inst, ntd).solve()


def solve_dpggd_tw(inst: Instance, ntd: NiceTreeDecomposition | None = None,
                   *, enforce_window: bool = True) -> Solution | None:
    """Minimum-cost efficient solution of a plain instance, or None."""
    return _solve(inst, ntd, PLAIN, enforce_window)


def solve_dcpggd_tw(inst: Instance, ntd: NiceTreeDecomposition | None = None,
                    *, enforce_window: bool = True) -> Solution | None:
    """Connected variant of ``solve_dpggd_tw``."""
    return _solve(inst, ntd, CONNECTED, enforce_window)


def solve_auto(inst: Instance, ntd: NiceTreeDecomposition | None = None,
               *, enforce_window: bool = True) -> Solution | None:
    if inst.connected_variant:
        return solve_dcpggd_tw(inst, ntd, enforce_window=enforce_window)
    return solve_dpggd_tw(inst, ntd, enforce_window=enforce_window)
