"""Graph and hypergraph data model.

Bipartite graphs index their two colour classes separately: S-nodes are
``0..s_count-1`` and T-nodes are ``0..t_count-1``, and an edge is the pair
``(s, t)``.  Where a node has to be named without context it is written as a
:class:`Node`, i.e. ``Node("S", 3)``.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Literal, NamedTuple

Side = Literal["S", "T"]
Edge = tuple[int, int]


class Node(NamedTuple):
    side: str
    index: int

    def __str__(self) -> str:
        return f"{self.side.lower()}{self.index}"


def other_side(side: str) -> str:
    if side not in ("S", "T"):
        raise ValueError(f"side must be 'S' or 'T', got {side!r}")
    return "T" if side == "S" else "S"


@dataclass(frozen=True)
class BipartiteGraph:
    """A simple bipartite graph ``G = (S, T; E)``."""

    s_count: int
    t_count: int
    edges: tuple[Edge, ...]

    def __post_init__(self):
        object.__setattr__(self, "edges", tuple((int(s), int(t)) for s, t in self.edges))
        if self.s_count < 0 or self.t_count < 0:
            raise ValueError("node counts must be non-negative")
        seen = set()
        for s, t in self.edges:
            if not (0 <= s < self.s_count and 0 <= t < self.t_count):
                raise ValueError(f"edge ({s}, {t}) out of range")
            if (s, t) in seen:
                raise ValueError(f"duplicate edge ({s}, {t})")
            seen.add((s, t))

    @cached_property
    def edge_set(self) -> frozenset[Edge]:
        return frozenset(self.edges)

    @cached_property
    def adj_s(self) -> tuple[tuple[int, ...], ...]:
        adj: list[list[int]] = [[] for _ in range(self.s_count)]
        for s, t in self.edges:
            adj[s].append(t)
        return tuple(tuple(sorted(a)) for a in adj)

    @cached_property
    def adj_t(self) -> tuple[tuple[int, ...], ...]:
        adj: list[list[int]] = [[] for _ in range(self.t_count)]
        for s, t in self.edges:
            adj[t].append(s)
        return tuple(tuple(sorted(a)) for a in adj)

    def neighbours(self, side: str, v: int) -> tuple[int, ...]:
        return self.adj_s[v] if side == "S" else self.adj_t[v]

    def degree(self, side: str, v: int) -> int:
        return len(self.neighbours(side, v))

    def count(self, side: str) -> int:
        return self.s_count if side == "S" else self.t_count

    def max_degree(self) -> int:
        return max((len(a) for a in self.adj_s + self.adj_t), default=0)

    def has_edge(self, s: int, t: int) -> bool:
        return (s, t) in self.edge_set

    def subgraph(self, edges: Iterable[Edge]) -> BipartiteGraph:
        """Same node sets, restricted edge set (kept in host order)."""
        keep = set(edges)
        return BipartiteGraph(self.s_count, self.t_count,
                              tuple(e for e in self.edges if e in keep))


@dataclass(frozen=True)
class Multigraph:
    """Undirected multigraph; each entry of ``edges`` is one parallel copy.

    ``edges[i] = (u, v, witness)`` where ``witness`` is an optional hyperedge
    id explaining where the edge came from.
    """

    n: int
    edges: tuple[tuple[int, int, int | None], ...] = ()

    def __post_init__(self):
        norm = []
        for e in self.edges:
            u, v = int(e[0]), int(e[1])
            w = e[2] if len(e) > 2 else None
            if u == v:
                raise ValueError(f"self-loop at {u}")
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise ValueError(f"edge ({u}, {v}) out of range")
            norm.append((min(u, v), max(u, v), w))
        object.__setattr__(self, "edges", tuple(norm))

    @cached_property
    def support(self) -> dict[Edge, int | None]:
        """Distinct node pairs mapped to their lowest witness label."""
        out: dict[Edge, int | None] = {}
        for u, v, w in self.edges:
            key = (u, v)
            if key not in out:
                out[key] = w
            elif w is not None and (out[key] is None or w < out[key]):
                out[key] = w
        return dict(sorted(out.items()))

    @cached_property
    def multiplicity(self) -> dict[Edge, int]:
        out: dict[Edge, int] = defaultdict(int)
        for u, v, _ in self.edges:
            out[(u, v)] += 1
        return dict(out)

    @cached_property
    def adj(self) -> tuple[tuple[int, ...], ...]:
        adj: list[set[int]] = [set() for _ in range(self.n)]
        for u, v in self.support:
            adj[u].add(v)
            adj[v].add(u)
        return tuple(tuple(sorted(a)) for a in adj)

    def degree(self, v: int) -> int:
        """Degree counting parallel edges."""
        return sum(m for (a, b), m in self.multiplicity.items() if v in (a, b))

    @classmethod
    def simple(cls, n: int, pairs: Iterable[Edge]) -> Multigraph:
        return cls(n, tuple((u, v, None) for u, v in pairs))

    def induced(self, nodes: Iterable[int]) -> tuple[Multigraph, list[int]]:
        """Induced subgraph, relabelled densely; returns it with the id map."""
        keep = sorted(set(nodes))
        index = {v: i for i, v in enumerate(keep)}
        sub = tuple((index[u], index[v], w) for u, v, w in self.edges
                    if u in index and v in index)
        return Multigraph(len(keep), sub), keep


@dataclass(frozen=True)
class Hypergraph:
    """Hypergraph on nodes ``0..n-1``; hyperedge ids are list positions.

    Parallel hyperedges are kept as distinct entries.
    """

    n: int
    hyperedges: tuple[tuple[int, ...], ...] = ()

    def __post_init__(self):
        norm = []
        for i, e in enumerate(self.hyperedges):
            members = tuple(sorted(int(v) for v in e))
            if len(set(members)) != len(members):
                raise ValueError(f"hyperedge {i} repeats a node")
            if any(not 0 <= v < self.n for v in members):
                raise ValueError(f"hyperedge {i} has a node out of range")
            norm.append(members)
        object.__setattr__(self, "hyperedges", tuple(norm))

    @property
    def m(self) -> int:
        return len(self.hyperedges)

    @property
    def oddly_uniform(self) -> bool:
        return all(len(e) % 2 == 1 for e in self.hyperedges)

    @cached_property
    def incidence(self) -> tuple[tuple[int, ...], ...]:
        """Hyperedge ids containing each node, ascending."""
        inc: list[list[int]] = [[] for _ in range(self.n)]
        for i, e in enumerate(self.hyperedges):
            for v in e:
                inc[v].append(i)
        return tuple(tuple(x) for x in inc)

    def degree(self, v: int) -> int:
        return len(self.incidence[v])

    def witness(self, u: int, v: int) -> int | None:
        """Lowest id of a hyperedge containing both ``u`` and ``v``."""
        common = set(self.incidence[u]).intersection(self.incidence[v])
        return min(common) if common else None


@dataclass(frozen=True)
class SLink:
    """Path ``u - center - w`` with ``u, w`` in S and ``center`` in T."""

    u: int
    center: int
    w: int

    def __post_init__(self):
        if self.u == self.w:
            raise ValueError("S-link endpoints must differ")
        if self.u > self.w:
            u, w = self.w, self.u
            object.__setattr__(self, "u", u)
            object.__setattr__(self, "w", w)

    @property
    def edges(self) -> tuple[Edge, Edge]:
        return ((self.u, self.center), (self.w, self.center))


def degrees(edges: Iterable[Edge]) -> tuple[dict[int, int], dict[int, int]]:
    """Per-side degree counts of a bipartite edge set."""
    ds: dict[int, int] = defaultdict(int)
    dt: dict[int, int] = defaultdict(int)
    for s, t in edges:
        ds[s] += 1
        dt[t] += 1
    return ds, dt


def is_matching(edges: Iterable[Edge]) -> bool:
    ds, dt = degrees(edges)
    return all(d <= 1 for d in ds.values()) and all(d <= 1 for d in dt.values())


def covered_t(edges: Iterable[Edge]) -> frozenset[int]:
    return frozenset(t for _, t in edges)


@dataclass(frozen=True)
class Component:
    """Connected piece of an edge set.

    For a path, ``nodes`` runs from one end to the other; for a cycle the
    first node is not repeated at the end.
    """

    kind: str  # "path" | "cycle" | "other"
    nodes: tuple[Node, ...]
    edges: tuple[Edge, ...] = field(default=())

    @property
    def length(self) -> int:
        return len(self.edges)

    @property
    def is_vpath(self) -> bool:
        return (self.kind == "path" and len(self.edges) == 2
                and self.nodes[0].side == "T" and self.nodes[-1].side == "T")

    def describe(self) -> str:
        return "-".join(str(v) for v in self.nodes)


def components(edges: Iterable[Edge], host: BipartiteGraph | None = None) -> list[Component]:
    """Split a bipartite edge set into connected components.

    Components with every degree at most 2 come back as ordered paths or
    cycles; anything else is labelled ``"other"`` with its nodes sorted.
    Output order follows the smallest node (S before T) of each component.
    """
    edge_list = sorted(set(edges))
    if host is not None:
        missing = [e for e in edge_list if e not in host.edge_set]
        if missing:
            raise ValueError(f"edges not in host graph: {missing}")
    adj: dict[Node, list[Node]] = defaultdict(list)
    for s, t in edge_list:
        adj[Node("S", s)].append(Node("T", t))
        adj[Node("T", t)].append(Node("S", s))
    for v in adj:
        adj[v].sort()

    seen: set[Node] = set()
    out: list[Component] = []
    for start in sorted(adj):
        if start in seen:
            continue
        comp = {start}
        stack = [start]
        while stack:
            v = stack.pop()
            for u in adj[v]:
                if u not in comp:
                    comp.add(u)
                    stack.append(u)
        seen |= comp
        comp_edges = tuple(sorted((a.index, b.index) for a in comp if a.side == "S"
                                  for b in adj[a]))
        if any(len(adj[v]) > 2 for v in comp):
            out.append(Component("other", tuple(sorted(comp)), comp_edges))
            continue
        ends = sorted(v for v in comp if len(adj[v]) == 1)
        kind = "path" if ends else "cycle"
        first = ends[0] if ends else min(comp)
        order = [first]
        prev = None
        cur = first
        while True:
            nxt = [u for u in adj[cur] if u != prev]
            if not nxt or nxt[0] == first:
                break
            prev, cur = cur, nxt[0]
            order.append(cur)
        seq_edges = []
        closing = len(order) if kind == "cycle" else len(order) - 1
        for i in range(closing):
            a, b = order[i], order[(i + 1) % len(order)]
            seq_edges.append((a.index, b.index) if a.side == "S" else (b.index, a.index))
        out.append(Component(kind, tuple(order), tuple(seq_edges)))
    return out


@dataclass(frozen=True)
class TwoMatching:
    """Bipartite edge set with every degree at most 2."""

    edges: frozenset[Edge]

    def __post_init__(self):
        object.__setattr__(self, "edges", frozenset((int(s), int(t)) for s, t in self.edges))
        ds, dt = degrees(self.edges)
        bad = [("S", v) for v, d in ds.items() if d > 2] + [("T", v) for v, d in dt.items() if d > 2]
        if bad:
            raise ValueError(f"degree above 2 at {bad}")

    def components(self) -> list[Component]:
        comps = components(self.edges)
        assert all(c.kind != "other" for c in comps)
        return comps

    def vpaths(self) -> list[Component]:
        return [c for c in self.components() if c.is_vpath]

    @property
    def is_vfree(self) -> bool:
        return not self.vpaths()

    def covers(self, required_t: Iterable[int]) -> bool:
        cov = covered_t(self.edges)
        return all(t in cov for t in required_t)

    def __len__(self) -> int:
        return len(self.edges)


@dataclass(frozen=True)
class LeviMap:
    """Id correspondence recorded by the bipartite/hypergraph conversions."""

    anchor_side: str
    node_of: tuple[int, ...]       # hypergraph node -> bipartite index on anchor side
    hyperedge_of: tuple[int, ...]  # hyperedge id -> bipartite index on the other side


def hypergraph_from_bipartite(g: BipartiteGraph, anchor_side: str = "S") -> tuple[Hypergraph, LeviMap]:
    """Read ``g`` as the Levi graph of a hypergraph.

    Nodes on ``anchor_side`` become hypergraph nodes; hyperedge ``i`` is the
    neighbour set of the ``i``-th node on the other side.
    """
    other = other_side(anchor_side)
    n = g.count(anchor_side)
    hyperedges = tuple(g.neighbours(other, i) for i in range(g.count(other)))
    return (Hypergraph(n, hyperedges),
            LeviMap(anchor_side, tuple(range(n)), tuple(range(len(hyperedges)))))


def bipartite_from_hypergraph(h: Hypergraph) -> BipartiteGraph:
    """Levi graph of ``h``: S-node ``v`` per node, T-node ``i`` per hyperedge."""
    edges = tuple((v, i) for i, e in enumerate(h.hyperedges) for v in e)
    return BipartiteGraph(h.n, h.m, edges)
