"""Maximum matchings, saturating matchings and the Gallai-Edmonds decomposition.

Bipartite matchings are sets of ``(s, t)`` pairs; matchings of a
:class:`~vfree.graph.Multigraph` are sets of ``(u, v)`` pairs with ``u < v``.
Ties are always broken towards the lowest node id.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable

from .errors import InternalTheoremViolation, NoSaturation, PreconditionViolated
from .graph import BipartiteGraph, Edge, Multigraph, components, other_side

Matching = frozenset[Edge]

_INF = float("inf")


# ---------------------------------------------------------------------------
# Bipartite
# ---------------------------------------------------------------------------

def max_matching_bipartite(g: BipartiteGraph) -> Matching:
    """Maximum-cardinality matching by Hopcroft-Karp."""
    mate_s = [-1] * g.s_count
    mate_t = [-1] * g.t_count
    adj = g.adj_s
    dist = [0.0] * g.s_count

    def bfs() -> bool:
        q = deque()
        for s in range(g.s_count):
            if mate_s[s] == -1:
                dist[s] = 0
                q.append(s)
            else:
                dist[s] = _INF
        found = False
        while q:
            s = q.popleft()
            for t in adj[s]:
                s2 = mate_t[t]
                if s2 == -1:
                    found = True
                elif dist[s2] == _INF:
                    dist[s2] = dist[s] + 1
                    q.append(s2)
        return found

    def dfs(root: int) -> bool:
        # iterative layered DFS; avoids recursion limits on long paths
        stack = [(root, iter(adj[root]))]
        path: list[tuple[int, int]] = []
        while stack:
            s, it = stack[-1]
            advanced = False
            for t in it:
                s2 = mate_t[t]
                if s2 == -1:
                    path.append((s, t))
                    for a, b in path:
                        mate_s[a] = b
                        mate_t[b] = a
                    return True
                if dist[s2] == dist[s] + 1:
                    path.append((s, t))
                    stack.append((s2, iter(adj[s2])))
                    advanced = True
                    break
            if not advanced:
                dist[s] = _INF
                stack.pop()
                if path:
                    path.pop()
        return False

    while bfs():
        for s in range(g.s_count):
            if mate_s[s] == -1:
                dfs(s)
    return frozenset((s, t) for s, t in enumerate(mate_s) if t != -1)


def saturating_matching(g: BipartiteGraph, x: Iterable[int], side: str = "S") -> Matching:
    """A matching covering every node of ``x`` (all on ``side``).

    Augmenting paths are grown from the nodes of ``x`` in ascending order.
    When one of them cannot be matched, the ``x``-nodes reachable from it by
    alternating paths form a Hall violator, raised as :class:`NoSaturation`.
    """
    other_side(side)
    xs = sorted(set(x))
    count = g.count(side)
    if any(not 0 <= v < count for v in xs):
        raise PreconditionViolated(f"x contains nodes outside side {side}")
    adj_x = g.adj_s if side == "S" else g.adj_t
    mate_x: dict[int, int] = {}
    mate_y: dict[int, int] = {}

    for root in xs:
        parent: dict[int, int] = {}   # y-node -> x-node it was reached from
        visited_x = [root]
        seen_x = {root}
        q = deque([root])
        end = None
        while q and end is None:
            u = q.popleft()
            for y in adj_x[u]:
                if y in parent:
                    continue
                parent[y] = u
                if y not in mate_y:
                    end = y
                    break
                nxt = mate_y[y]
                if nxt not in seen_x:
                    seen_x.add(nxt)
                    visited_x.append(nxt)
                    q.append(nxt)
        if end is None:
            raise NoSaturation(frozenset(visited_x), frozenset(parent))
        y = end
        while True:
            u = parent[y]
            prev = mate_x.get(u)
            mate_x[u] = y
            mate_y[y] = u
            if u == root:
                break
            y = prev
    if side == "S":
        return frozenset((u, y) for u, y in mate_x.items())
    return frozenset((y, u) for u, y in mate_x.items())


def dm_merge(g: BipartiteGraph, m_x: Iterable[Edge], x: Iterable[int],
             m_y: Iterable[Edge], y: Iterable[int]) -> Matching:
    """Combine a matching covering ``x`` (S-side) and one covering ``y`` (T-side).

    The symmetric difference splits into alternating paths and cycles; each
    piece keeps its ``m_x`` edges if it holds an ``x``-node missed by ``m_y``
    and its ``m_y`` edges otherwise.
    """
    m_x, m_y = frozenset(m_x), frozenset(m_y)
    x, y = frozenset(x), frozenset(y)
    for m in (m_x, m_y):
        if not m <= g.edge_set:
            raise PreconditionViolated("matching uses edges outside the graph")
        if len({s for s, _ in m}) != len(m) or len({t for _, t in m}) != len(m):
            raise PreconditionViolated("input is not a matching")
    cov_x = {s for s, _ in m_x}
    cov_y_s = {s for s, _ in m_y}
    cov_y = {t for _, t in m_y}
    if not x <= cov_x:
        raise PreconditionViolated(f"m_x misses {sorted(x - cov_x)}")
    if not y <= cov_y:
        raise PreconditionViolated(f"m_y misses {sorted(y - cov_y)}")

    result = set(m_x & m_y)
    for comp in components(m_x ^ m_y):
        needs_x = any(v.side == "S" and v.index in x and v.index not in cov_y_s
                      for v in comp.nodes)
        source = m_x if needs_x else m_y
        result.update(e for e in comp.edges if e in source)
    return frozenset(result)


def matching_covering_max_degree(g: BipartiteGraph) -> Matching:
    """A matching covering every node of maximum degree."""
    delta = g.max_degree()
    if delta == 0:
        return frozenset()
    x = [s for s in range(g.s_count) if g.degree("S", s) == delta]
    y = [t for t in range(g.t_count) if g.degree("T", t) == delta]
    try:
        m_x = saturating_matching(g, x, "S")
        m_y = saturating_matching(g, y, "T")
    except NoSaturation as exc:
        raise InternalTheoremViolation(f"max-degree nodes not saturable: {exc}") from exc
    return dm_merge(g, m_x, x, m_y, y)


# ---------------------------------------------------------------------------
# General graphs: Edmonds' blossom algorithm
# ---------------------------------------------------------------------------

class _Blossom:
    """Edmonds' cardinality matching with blossom shrinking, O(n^3)."""

    def __init__(self, n: int, adj: tuple[tuple[int, ...], ...]):
        self.n = n
        self.adj = adj
        self.mate = [-1] * n

    def _lca(self, a: int, b: int) -> int:
        base, mate, p = self.base, self.mate, self.parent
        marked = [False] * self.n
        while True:
            a = base[a]
            marked[a] = True
            if mate[a] == -1:
                break
            a = p[mate[a]]
        while True:
            b = base[b]
            if marked[b]:
                return b
            if mate[b] == -1:
                raise InternalTheoremViolation("even-even edge between different trees")
            b = p[mate[b]]

    def _mark_path(self, v: int, b: int, child: int, in_blossom: list[bool]) -> None:
        base, mate, p = self.base, self.mate, self.parent
        while base[v] != b:
            in_blossom[base[v]] = True
            in_blossom[base[mate[v]]] = True
            p[v] = child
            child = mate[v]
            v = p[mate[v]]

    def search(self, roots: list[int]) -> int:
        """Grow an alternating forest from ``roots``.

        Returns the exposed endpoint of an augmenting path (single root) or
        -1.  Afterwards ``self.outer[v]`` tells whether ``v`` ended up even.
        """
        n, mate, adj = self.n, self.mate, self.adj
        self.base = base = list(range(n))
        self.parent = p = [-1] * n
        self.outer = outer = [False] * n
        root_set = set(roots)
        q = deque()
        for r in roots:
            outer[r] = True
            q.append(r)
        while q:
            v = q.popleft()
            for to in adj[v]:
                if base[v] == base[to] or mate[v] == to:
                    continue
                if to in root_set or (mate[to] != -1 and p[mate[to]] != -1):
                    cur = self._lca(v, to)
                    in_blossom = [False] * n
                    self._mark_path(v, cur, to, in_blossom)
                    self._mark_path(to, cur, v, in_blossom)
                    for i in range(n):
                        if in_blossom[base[i]]:
                            base[i] = cur
                            if not outer[i]:
                                outer[i] = True
                                q.append(i)
                elif p[to] == -1:
                    p[to] = v
                    if mate[to] == -1:
                        if len(roots) > 1:
                            raise InternalTheoremViolation("augmenting path in forest search")
                        return to
                    outer[mate[to]] = True
                    q.append(mate[to])
        return -1

    def _augment(self, v: int) -> None:
        mate, p = self.mate, self.parent
        while v != -1:
            pv = p[v]
            ppv = mate[pv]
            mate[v] = pv
            mate[pv] = v
            v = ppv

    def run(self) -> None:
        mate, adj = self.mate, self.adj
        # greedy start; augmentations then fix it up
        for v in range(self.n):
            if mate[v] == -1:
                for u in adj[v]:
                    if mate[u] == -1:
                        mate[v], mate[u] = u, v
                        break
        for v in range(self.n):
            if mate[v] == -1 and adj[v]:
                end = self.search([v])
                if end != -1:
                    self._augment(end)

    def pairs(self) -> Matching:
        return frozenset((v, u) for v, u in enumerate(self.mate) if u > v)


def max_matching_general(g: Multigraph) -> Matching:
    """Maximum-cardinality matching of a multigraph (parallel edges ignored)."""
    b = _Blossom(g.n, g.adj)
    b.run()
    return b.pairs()


def matching_size(g: Multigraph) -> int:
    return len(max_matching_general(g))


@dataclass(frozen=True)
class GallaiEdmonds:
    D: frozenset[int]
    A: frozenset[int]
    C: frozenset[int]
    d_components: tuple[frozenset[int], ...]
    matching: Matching

    def component_of(self) -> dict[int, int]:
        return {v: i for i, comp in enumerate(self.d_components) for v in comp}


def gallai_edmonds(g: Multigraph, check: bool = __debug__) -> GallaiEdmonds:
    """Gallai-Edmonds decomposition ``(D, A, C)`` with a maximum matching.

    ``D`` is the even set of a final alternating forest grown from all
    exposed nodes of a maximum matching.  With ``check`` the factor-critical
    and perfect-matching properties are re-verified by extra matching runs.
    """
    b = _Blossom(g.n, g.adj)
    b.run()
    exposed = [v for v in range(g.n) if b.mate[v] == -1]
    if exposed:
        b.search(exposed)
        D = frozenset(v for v in range(g.n) if b.outer[v])
    else:
        D = frozenset()
    A = frozenset(u for v in D for u in g.adj[v] if u not in D)
    C = frozenset(range(g.n)) - D - A

    comps: list[frozenset[int]] = []
    seen: set[int] = set()
    for v in sorted(D):
        if v in seen:
            continue
        comp = {v}
        stack = [v]
        while stack:
            a = stack.pop()
            for u in g.adj[a]:
                if u in D and u not in comp:
                    comp.add(u)
                    stack.append(u)
        seen |= comp
        comps.append(frozenset(comp))

    ge = GallaiEdmonds(D, A, C, tuple(comps), b.pairs())
    if check:
        _check_gallai_edmonds(g, ge)
    return ge


def _nu_induced(g: Multigraph, nodes: frozenset[int]) -> int:
    ids = sorted(nodes)
    index = {v: i for i, v in enumerate(ids)}
    adj = tuple(tuple(index[u] for u in g.adj[v] if u in index) for v in ids)
    b = _Blossom(len(ids), adj)
    b.run()
    return len(b.pairs())


def _check_gallai_edmonds(g: Multigraph, ge: GallaiEdmonds) -> None:
    for comp in ge.d_components:
        k = len(comp)
        if k % 2 == 0:
            raise InternalTheoremViolation(f"even D-component {sorted(comp)}")
        if _nu_induced(g, comp) != (k - 1) // 2:
            raise InternalTheoremViolation(f"D-component {sorted(comp)} not near-perfect")
        for v in comp:
            if 2 * _nu_induced(g, comp - {v}) != k - 1:
                raise InternalTheoremViolation(
                    f"D-component {sorted(comp)} not factor-critical at {v}")
    if 2 * _nu_induced(g, ge.C) != len(ge.C):
        raise InternalTheoremViolation("G[C] has no perfect matching")
    covered = {v for e in ge.matching for v in e}
    if not (ge.A | ge.C) <= covered:
        raise InternalTheoremViolation("maximum matching misses A or C")
