"""Problem instances and solution checking for degree-constrained deletion.

An instance asks for a vertex set and an edge set to delete, within separate
weight budgets and a joint cost budget, so that every surviving vertex ends
at exactly its target degree (and, for the connected variant, the surviving
graph is connected; the empty graph counts as connected).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping

from .graph import Graph, edge_key

PLAIN = "plain"
CONNECTED = "connected"


@dataclass(frozen=True)
class Instance:
    graph: Graph
    delta: Mapping[int, int]
    weight_v: Mapping[int, int]
    weight_e: Mapping[tuple[int, int], int]
    cost_v: Mapping[int, int]
    cost_e: Mapping[tuple[int, int], int]
    k_v: int
    k_e: int
    cost_budget: int
    variant: str = PLAIN

    def __post_init__(self):
        vs = self.graph.vertices
        es = self.graph.edge_set()
        for name, m, keys in (("delta", self.delta, vs),
                              ("weight_v", self.weight_v, vs),
                              ("cost_v", self.cost_v, vs)):
            if set(m) != set(keys):
                raise ValueError(f"{name} must be defined exactly on the vertex set")
        for name, m in (("weight_e", self.weight_e), ("cost_e", self.cost_e)):
            if set(m) != set(es):
                raise ValueError(f"{name} must be defined exactly on the edge set")
        if any(x < 0 for x in self.delta.values()):
            raise ValueError("degree targets must be non-negative")
        if any(x < 1 for x in self.weight_v.values()) or any(x < 1 for x in self.weight_e.values()):
            raise ValueError("weights must be positive integers")
        if any(x < 0 for x in self.cost_v.values()) or any(x < 0 for x in self.cost_e.values()):
            raise ValueError("costs must be non-negative")
        if self.k_v < 0 or self.k_e < 0 or self.cost_budget < 0:
            raise ValueError("budgets must be non-negative")
        if self.variant not in (PLAIN, CONNECTED):
            raise ValueError(f"unknown variant: {self.variant!r}")

    @property
    def connected_variant(self) -> bool:
        return self.variant == CONNECTED

    def cost_of(self, vertices: Iterable[int], edges: Iterable[tuple[int, int]]) -> int:
        return (sum(self.cost_v[v] for v in vertices)
                + sum(self.cost_e[edge_key(*e)] for e in edges))

    def vertex_weight(self, vertices: Iterable[int]) -> int:
        return sum(self.weight_v[v] for v in vertices)

    def edge_weight(self, edges: Iterable[tuple[int, int]]) -> int:
        return sum(self.weight_e[edge_key(*e)] for e in edges)

    def in_degree_window(self) -> bool:
        """Whether every vertex v satisfies delta(v) <= deg(v) <= delta(v)+k_v+k_e."""
        span = self.k_v + self.k_e
        return all(self.delta[v] <= self.graph.degree(v) <= self.delta[v] + span
                   for v in self.graph.vertices)


@dataclass(frozen=True)
class Solution:
    deleted_vertices: frozenset[int] = frozenset()
    deleted_edges: frozenset[tuple[int, int]] = frozenset()
    total_cost: int = 0

    @classmethod
    def of(cls, inst: Instance, vertices: Iterable[int] = (),
           edges: Iterable[tuple[int, int]] = ()) -> "Solution":
        u = frozenset(vertices)
        d = frozenset(edge_key(*e) for e in edges)
        return cls(u, d, inst.cost_of(u, d))

    def canonical(self) -> tuple[tuple[int, ...], tuple[tuple[int, int], ...]]:
        return tuple(sorted(self.deleted_vertices)), tuple(sorted(self.deleted_edges))


@dataclass(frozen=True)
class Verdict:
    ok: bool
    violations: tuple[str, ...] = field(default_factory=tuple)

    def __bool__(self) -> bool:
        return self.ok


def check_solution(inst: Instance, sol: Solution) -> Verdict:
    """Validate a solution against every budget, degree and connectivity rule."""
    g = inst.graph
    u, d = sol.deleted_vertices, sol.deleted_edges
    problems: list[str] = []
    if not u <= g.vertices:
        return Verdict(False, (f"unknown vertices in solution: {sorted(u - g.vertices)}",))
    if not d <= g.edge_set():
        return Verdict(False, (f"unknown edges in solution: {sorted(d - g.edge_set())}",))
    if inst.vertex_weight(u) > inst.k_v:
        problems.append(f"vertex weight {inst.vertex_weight(u)} exceeds budget {inst.k_v}")
    if inst.edge_weight(d) > inst.k_e:
        problems.append(f"edge weight {inst.edge_weight(d)} exceeds budget {inst.k_e}")
    cost = inst.cost_of(u, d)
    if cost > inst.cost_budget:
        problems.append(f"cost {cost} exceeds budget {inst.cost_budget}")
    remaining = g.delete_vertices(u)
    live_deleted = [e for e in sorted(d) if remaining.has_edge(*e)]
    remaining = remaining.delete_edges(live_deleted)
    for v in remaining.sorted_vertices():
        if remaining.degree(v) != inst.delta[v]:
            problems.append(
                f"vertex {v} has degree {remaining.degree(v)}, target {inst.delta[v]}")
    if inst.connected_variant and not remaining.is_connected():
        problems.append("surviving graph is disconnected")
    return Verdict(not problems, tuple(problems))


def is_efficient(inst: Instance, sol: Solution) -> bool:
    """True iff no deleted edge touches a deleted vertex."""
    u = sol.deleted_vertices
    return all(a not in u and b not in u for a, b in sol.deleted_edges)


def efficient_counterpart(inst: Instance, sol: Solution) -> Solution:
    """Drop deleted edges incident to deleted vertices; never raises cost."""
    u = sol.deleted_vertices
    d = frozenset(e for e in sol.deleted_edges if e[0] not in u and e[1] not in u)
    return Solution(u, d, inst.cost_of(u, d))
