"""Tree decompositions: construction, nice form, validation, PACE text format.

``decompose`` offers two modes.  The heuristic takes the better of the
min-degree and min-fill elimination orders; downstream correctness never
depends on width optimality, only running time does.  ``exact-small``
determines the true treewidth by iterative deepening over elimination
orders with memoized failure states, and is refused above a size cap.
"""

from __future__ import annotations

from dataclasses import dataclass
from .errors import CapacityError, ParseError
from .graph import Graph

LEAF = "leaf"
INTRODUCE = "introduce"
FORGET = "forget"
JOIN = "join"

EXACT_CAP = 20


@dataclass(frozen=True)
class TreeDecomposition:
    bags: tuple[frozenset[int], ...]
    tree_edges: frozenset[tuple[int, int]]

    @property
    def width(self) -> int:
        return max((len(b) for b in self.bags), default=0) - 1

    def neighbors(self, i: int) -> list[int]:
        out = []
        for a, b in self.tree_edges:
            if a == i:
                out.append(b)
            elif b == i:
                out.append(a)
        return sorted(out)


@dataclass(frozen=True)
class NiceTreeDecomposition:
    """Rooted binary decomposition in postorder (children precede parents).

    Node kinds: empty-bag leaves, introduce/forget of a single vertex, and
    joins of two equal-bag children.  The root is the last node and is a
    forget node with an empty bag (a lone empty leaf for the empty graph).
    """
    kinds: tuple[str, ...]
    bags: tuple[frozenset[int], ...]
    children: tuple[tuple[int, ...], ...]
    vertex: tuple[int | None, ...]

    @property
    def root(self) -> int:
        return len(self.kinds) - 1

    @property
    def width(self) -> int:
        return max((len(b) for b in self.bags), default=0) - 1

    def __len__(self) -> int:
        return len(self.kinds)


@dataclass(frozen=True)
class DecompositionVerdict:
    ok: bool
    reason: str = ""

    def __bool__(self) -> bool:
        return self.ok


# -- elimination machinery ----------------------------------------------------


def _adj_dict(g: Graph) -> dict[int, set[int]]:
    return {v: set(g.neighbors(v)) for v in g.vertices}


def _eliminate(adj: dict[int, set[int]], v: int) -> None:
    nbrs = adj[v]
    for a in nbrs:
        adj[a] |= nbrs - {a}
        adj[a].discard(v)
    del adj[v]


def _fill_count(adj: dict[int, set[int]], v: int) -> int:
    nbrs = sorted(adj[v])
    missing = 0
    for i, a in enumerate(nbrs):
        for b in nbrs[i + 1:]:
            if b not in adj[a]:
                missing += 1
    return missing


def _min_degree_order(g: Graph) -> list[int]:
    adj = _adj_dict(g)
    order = []
    while adj:
        v = min(adj, key=lambda x: (len(adj[x]), x))
        order.append(v)
        _eliminate(adj, v)
    return order


def _min_fill_order(g: Graph) -> list[int]:
    adj = _adj_dict(g)
    order = []
    while adj:
        v = min(adj, key=lambda x: (_fill_count(adj, x), x))
        order.append(v)
        _eliminate(adj, v)
    return order


def from_elimination_order(g: Graph, order: list[int]) -> TreeDecomposition:
    """Decomposition whose bags are the elimination neighborhoods."""
    if not order:
        return TreeDecomposition((frozenset(),), frozenset())
    adj = _adj_dict(g)
    pos = {v: i for i, v in enumerate(order)}
    bags: list[frozenset[int]] = []
    parents: list[int | None] = []
    for v in order:
        bag = frozenset(adj[v] | {v})
        bags.append(bag)
        rest = bag - {v}
        parents.append(min((pos[u] for u in rest), default=None))
        _eliminate(adj, v)
    edges = {tuple(sorted((i, p))) for i, p in enumerate(parents) if p is not None}
    # chain the component roots so the result is a single tree
    roots = [i for i, p in enumerate(parents) if p is None]
    for a, b in zip(roots, roots[1:]):
        edges.add((a, b))
    return TreeDecomposition(tuple(bags), frozenset(edges))


# -- exact treewidth by iterative deepening ----------------------------------


def _degeneracy(g: Graph) -> int:
    adj = _adj_dict(g)
    best = 0
    while adj:
        v = min(adj, key=lambda x: (len(adj[x]), x))
        best = max(best, len(adj[v]))
        for u in adj[v]:
            adj[u].discard(v)
        del adj[v]
    return best


def _is_simplicial(adj: dict[int, set[int]], v: int) -> bool:
    nbrs = adj[v]
    return all(nbrs - {a} <= adj[a] for a in nbrs)


def _can_eliminate(adj: dict[int, set[int]], width: int,
                   failed: set[frozenset[int]]) -> bool:
    if len(adj) <= width + 1:
        return True
    key = frozenset(adj)
    if key in failed:
        return False
    candidates = sorted(v for v in adj if len(adj[v]) <= width)
    for v in candidates:
        if _is_simplicial(adj, v):
            sub = {x: set(ns) for x, ns in adj.items()}
            _eliminate(sub, v)
            ok = _can_eliminate(sub, width, failed)
            if not ok:
                failed.add(key)
            return ok
    for v in candidates:
        sub = {x: set(ns) for x, ns in adj.items()}
        _eliminate(sub, v)
        if _can_eliminate(sub, width, failed):
            return True
    failed.add(key)
    return False


def exact_treewidth(g: Graph, cap: int = EXACT_CAP) -> int:
    if g.n > cap:
        raise CapacityError(f"exact treewidth refused for n={g.n} > cap {cap}")
    if g.n == 0:
        return -1
    upper = min(from_elimination_order(g, _min_degree_order(g)).width,
                from_elimination_order(g, _min_fill_order(g)).width)
    width = _degeneracy(g)
    while width < upper:
        if _can_eliminate(_adj_dict(g), width, set()):
            break
        width += 1
    return width


def _exact_order(g: Graph, width: int) -> list[int]:
    adj = _adj_dict(g)
    order = []
    failed: set[frozenset[int]] = set()
    while adj:
        if len(adj) <= width + 1:
            order.extend(sorted(adj))
            break
        for v in sorted(adj):
            if len(adj[v]) > width:
                continue
            sub = {x: set(ns) for x, ns in adj.items()}
            _eliminate(sub, v)
            if _can_eliminate(sub, width, failed):
                order.append(v)
                adj = sub
                break
        else:
            raise AssertionError("no elimination extends a feasible prefix")
    return order


def decompose(g: Graph, mode: str = "heuristic", *, exact_cap: int = EXACT_CAP
              ) -> TreeDecomposition:
    """Build a valid tree decomposition of g."""
    if mode == "heuristic":
        best = None
        for order_fn in (_min_degree_order, _min_fill_order):
            td = from_elimination_order(g, order_fn(g))
            if best is None or td.width < best.width:
                best = td
        return best
    if mode == "exact-small":
        width = exact_treewidth(g, cap=exact_cap)
        if g.n == 0:
            return TreeDecomposition((frozenset(),), frozenset())
        return from_elimination_order(g, _exact_order(g, width))
    raise ValueError(f"unknown mode: {mode!r}")


# -- validation ---------------------------------------------------------------


def _is_tree(n_nodes: int, edges: frozenset[tuple[int, int]]) -> bool:
    if n_nodes == 0:
        return False
    if len(edges) != n_nodes - 1:
        return False
    adj: dict[int, set[int]] = {i: set() for i in range(n_nodes)}
    for a, b in edges:
        if a == b or not (0 <= a < n_nodes and 0 <= b < n_nodes):
            return False
        adj[a].add(b)
        adj[b].add(a)
    seen = {0}
    stack = [0]
    while stack:
        x = stack.pop()
        for y in adj[x]:
            if y not in seen:
                seen.add(y)
                stack.append(y)
    return len(seen) == n_nodes


def validate(g: Graph, td: TreeDecomposition | NiceTreeDecomposition
             ) -> DecompositionVerdict:
    """Check the decomposition conditions; names the first failure."""
    if isinstance(td, NiceTreeDecomposition):
        nice_verdict = _validate_nice_shape(td)
        if not nice_verdict:
            return nice_verdict
        bags = td.bags
        edges = _nice_tree_edges(td)
    else:
        bags = td.bags
        edges = td.tree_edges
        if not _is_tree(len(bags), edges):
            return DecompositionVerdict(False, "tree structure invalid")
    covered = frozenset().union(*bags) if bags else frozenset()
    if covered != g.vertices:
        return DecompositionVerdict(
            False, "condition (i) failed: bag union differs from vertex set")
    for u, v in g.edges():
        if not any(u in b and v in b for b in bags):
            return DecompositionVerdict(
                False, f"condition (ii) failed: edge ({u}, {v}) not in any bag")
    adj: dict[int, set[int]] = {i: set() for i in range(len(bags))}
    for a, b in edges:
        adj[a].add(b)
        adj[b].add(a)
    for x in g.vertices:
        nodes = {i for i, b in enumerate(bags) if x in b}
        start = min(nodes)
        seen = {start}
        stack = [start]
        while stack:
            i = stack.pop()
            for j in adj[i]:
                if j in nodes and j not in seen:
                    seen.add(j)
                    stack.append(j)
        if seen != nodes:
            return DecompositionVerdict(
                False, f"condition (iii) failed: vertex {x} spans a "
                       "disconnected set of bags")
    return DecompositionVerdict(True)


def _nice_tree_edges(ntd: NiceTreeDecomposition) -> frozenset[tuple[int, int]]:
    out = set()
    for i, cs in enumerate(ntd.children):
        for c in cs:
            out.add(tuple(sorted((i, c))))
    return frozenset(out)


def _validate_nice_shape(ntd: NiceTreeDecomposition) -> DecompositionVerdict:
    n = len(ntd)
    if n == 0:
        return DecompositionVerdict(False, "empty decomposition")
    seen_as_child: set[int] = set()
    for i in range(n):
        kind, bag, cs, v = ntd.kinds[i], ntd.bags[i], ntd.children[i], ntd.vertex[i]
        for c in cs:
            if not c < i:
                return DecompositionVerdict(False, "children must precede parents")
            if c in seen_as_child:
                return DecompositionVerdict(False, f"node {c} has two parents")
            seen_as_child.add(c)
        if kind == LEAF:
            if cs or bag:
                return DecompositionVerdict(False, f"leaf node {i} malformed")
        elif kind == INTRODUCE:
            if len(cs) != 1 or v is None or v in ntd.bags[cs[0]] \
                    or bag != ntd.bags[cs[0]] | {v}:
                return DecompositionVerdict(False, f"introduce node {i} malformed")
        elif kind == FORGET:
            if len(cs) != 1 or v is None or v not in ntd.bags[cs[0]] \
                    or bag != ntd.bags[cs[0]] - {v}:
                return DecompositionVerdict(False, f"forget node {i} malformed")
        elif kind == JOIN:
            if len(cs) != 2 or ntd.bags[cs[0]] != bag or ntd.bags[cs[1]] != bag:
                return DecompositionVerdict(False, f"join node {i} malformed")
        else:
            return DecompositionVerdict(False, f"unknown node kind {kind!r}")
    root = ntd.root
    if root in seen_as_child:
        return DecompositionVerdict(False, "root has a parent")
    if len(seen_as_child) != n - 1:
        return DecompositionVerdict(False, "not a single tree")
    if ntd.bags[root]:
        return DecompositionVerdict(False, "root bag must be empty")
    if ntd.kinds[root] == LEAF and n == 1:
        return DecompositionVerdict(True)  # degenerate: empty graph
    if ntd.kinds[root] != FORGET:
        return DecompositionVerdict(False, "root must be a forget node")
    return DecompositionVerdict(True)


# -- nice-form conversion -----------------------------------------------------


class _NiceBuilder:
    def __init__(self):
        self.kinds: list[str] = []
        self.bags: list[frozenset[int]] = []
        self.children: list[tuple[int, ...]] = []
        self.vertex: list[int | None] = []

    def add(self, kind, bag, children=(), vertex=None) -> int:
        self.kinds.append(kind)
        self.bags.append(frozenset(bag))
        self.children.append(tuple(children))
        self.vertex.append(vertex)
        return len(self.kinds) - 1

    def chain(self, node: int, source: frozenset[int], target: frozenset[int]) -> int:
        """Forget source-only vertices then introduce target-only ones."""
        bag = set(source)
        for v in sorted(source - target):
            bag.discard(v)
            node = self.add(FORGET, bag, (node,), v)
        for v in sorted(target - source):
            bag.add(v)
            node = self.add(INTRODUCE, bag, (node,), v)
        return node

    def leaf_chain(self, bag: frozenset[int]) -> int:
        node = self.add(LEAF, frozenset())
        return self.chain(node, frozenset(), bag)

    def build(self) -> NiceTreeDecomposition:
        return NiceTreeDecomposition(tuple(self.kinds), tuple(self.bags),
                                     tuple(self.children), tuple(self.vertex))


def to_nice(td: TreeDecomposition, g: Graph | None = None) -> NiceTreeDecomposition:
    """Convert to nice form of the same width.

    Rejects structurally invalid input; full condition checking against the
    graph happens when one is supplied.
    """
    if g is not None:
        verdict = validate(g, td)
        if not verdict:
            raise ValueError(f"invalid decomposition: {verdict.reason}")
    elif not _is_tree(len(td.bags), td.tree_edges):
        raise ValueError("invalid decomposition: tree structure invalid")

    if len(td.bags) == 1 and not td.bags[0]:
        b = _NiceBuilder()
        b.add(LEAF, frozenset())
        return b.build()

    b = _NiceBuilder()
    root = 0
    order: list[tuple[int, int | None]] = []
    stack = [(root, None)]
    while stack:  # postorder over the decomposition tree
        i, parent = stack.pop()
        order.append((i, parent))
        for j in td.neighbors(i):
            if j != parent:
                stack.append((j, i))
    done: dict[int, int] = {}
    for i, parent in reversed(order):
        kids = [j for j in td.neighbors(i) if j != parent]
        bag = td.bags[i]
        if not kids:
            done[i] = b.leaf_chain(bag)
            continue
        arms = [b.chain(done[j], td.bags[j], bag) for j in kids]
        node = arms[0]
        for arm in arms[1:]:
            node = b.add(JOIN, bag, (node, arm))
        done[i] = node
    top = done[root]
    b.chain(top, td.bags[root], frozenset())
    return b.build()


# -- PACE-style text format ---------------------------------------------------


def write_pace(td: TreeDecomposition, n_vertices: int) -> str:
    lines = [f"s td {len(td.bags)} {max((len(b) for b in td.bags), default=0)} "
             f"{n_vertices}"]
    for i, bag in enumerate(td.bags, 1):
        lines.append("b " + " ".join([str(i)] + [str(v) for v in sorted(bag)]))
    for a, c in sorted(td.tree_edges):
        lines.append(f"{a + 1} {c + 1}")
    return "\n".join(lines) + "\n"


def read_pace(text: str) -> TreeDecomposition:
    header = None
    bags: dict[int, frozenset[int]] = {}
    edges: set[tuple[int, int]] = set()
    for no, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line or line.startswith("c"):
            continue
        parts = line.split()
        if parts[0] == "s":
            if header is not None:
                raise ParseError("duplicate solution line", no)
            if len(parts) != 5 or parts[1] != "td":
                raise ParseError("solution line must be 's td bags width+1 n'", no)
            header = tuple(int(x) for x in parts[2:])
        elif parts[0] == "b":
            if header is None:
                raise ParseError("bag line before solution line", no)
            idx = int(parts[1])
            if idx in bags:
                raise ParseError(f"duplicate bag {idx}", no)
            bags[idx] = frozenset(int(x) for x in parts[2:])
        else:
            if header is None:
                raise ParseError("edge line before solution line", no)
            a, c = int(parts[0]), int(parts[1])
            edges.add(tuple(sorted((a, c))))
    if header is None:
        raise ParseError("missing 's td' line")
    n_bags = header[0]
    if set(bags) != set(range(1, n_bags + 1)):
        raise ParseError(f"expected bags 1..{n_bags}")
    return TreeDecomposition(
        tuple(bags[i] for i in range(1, n_bags + 1)),
        frozenset((a - 1, c - 1) for a, c in edges))
