"""Matchings plus node-disjoint S-links covering the degree-3 T-nodes.

A solution ``(M, F)`` is a matching ``M`` and a family ``F`` of node-disjoint
S-links (paths ``s - t - s``) whose union covers the required T-nodes.  Such
solutions correspond to V-free 2-matchings covering the same nodes; the two
conversions here go back and forth.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

from .errors import (CoverageGap, DegreeBoundViolated, InternalTheoremViolation,
                     InvalidSolution, NoSaturation, NotVFree)
from .extended import Report, extended_matching_covering_max_quasidegree
from .graph import (BipartiteGraph, Component, Edge, Node, SLink, TwoMatching,
                    covered_t, degrees, hypergraph_from_bipartite, is_matching)
from .matching import saturating_matching


@dataclass(frozen=True)
class LiangSolution:
    m: frozenset[Edge]
    f: tuple[SLink, ...]
    covered: frozenset[int] = field(default=frozenset())

    def edges(self) -> frozenset[Edge]:
        return self.m | {e for link in self.f for e in link.edges}


def required_nodes(g: BipartiteGraph, t_degree: int = 3) -> frozenset[int]:
    return frozenset(t for t in range(g.t_count) if g.degree("T", t) == t_degree)


def _check_bounds(g: BipartiteGraph, s_bound: int = 4, t_bound: int = 3) -> None:
    for s in range(g.s_count):
        if g.degree("S", s) > s_bound:
            raise DegreeBoundViolated(("s", s), g.degree("S", s), s_bound)
    for t in range(g.t_count):
        if g.degree("T", t) > t_bound:
            raise DegreeBoundViolated(("t", t), g.degree("T", t), t_bound)


def solve_liang(g: BipartiteGraph) -> LiangSolution:
    """Cover every degree-3 T-node of ``g`` by a matching and disjoint S-links.

    Requires ``deg(s) <= 4`` and ``deg(t) <= 3``.  The degree-3 T-nodes are
    read as 3-element hyperedges over S; an extended matching covering the
    degree-4 S-nodes becomes S-links (pairs) and S-claws (whole hyperedges),
    the rest of the required T-nodes are matched in the leftover graph, and
    each claw then drops one edge.
    """
    _check_bounds(g)
    required = required_nodes(g)
    req_list = sorted(required)
    core = g.subgraph(e for e in g.edges if e[1] in required)
    h, _ = hypergraph_from_bipartite(
        BipartiteGraph(g.s_count, len(req_list),
                       tuple((s, req_list.index(t)) for s, t in core.edges)), "S")

    links: list[SLink] = []
    claws: list[tuple[int, tuple[int, ...]]] = []
    max_deg = max((h.degree(v) for v in range(h.n)), default=0)
    if max_deg == 4:
        s_prime = {v for v in range(h.n) if h.degree(v) == 4}
        em = extended_matching_covering_max_quasidegree(h)
        for u, w, e in sorted(em.pairs):
            if u in s_prime or w in s_prime:
                links.append(SLink(u, req_list[e], w))
        for e in sorted(em.hyperedges):
            if s_prime.intersection(h.hyperedges[e]):
                claws.append((req_list[e], h.hyperedges[e]))

    n_edges = {edge for link in links for edge in link.edges}
    n_edges.update((s, t) for t, members in claws for s in members)
    t_prime = sorted(t for t in req_list if t not in covered_t(n_edges))
    rest = BipartiteGraph(g.s_count, g.t_count,
                          tuple(e for e in core.edges if e not in n_edges and e[1] in set(t_prime)))
    for t in t_prime:
        if rest.degree("T", t) != 3:
            raise InternalTheoremViolation(f"uncovered T-node {t} lost an edge")
    if rest.max_degree() > 3:
        raise InternalTheoremViolation("leftover graph has an S-node of degree 4")
    try:
        m = set(saturating_matching(rest, t_prime, "T"))
    except NoSaturation as exc:
        raise InternalTheoremViolation(f"leftover T-nodes not saturable: {exc}") from exc

    for t, members in claws:
        u, w = members[1], members[2]  # drop the edge at the lowest S-endpoint
        links.append(SLink(u, t, w))
    link_t = {link.center for link in links}
    m = {e for e in m if e[1] not in link_t}

    sol = LiangSolution(frozenset(m), tuple(sorted(links, key=lambda l: (l.center, l.u, l.w))))
    return LiangSolution(sol.m, sol.f, covered_t(sol.edges()))


def verify_liang(g: BipartiteGraph, sol: LiangSolution, required: Iterable[int] | None = None) -> Report:
    """Check every structural condition of ``sol`` and coverage of ``required``.

    ``required`` defaults to the degree-3 T-nodes of ``g``.
    """
    rep = Report()
    if required is None:
        required = required_nodes(g)
    required = frozenset(required)
    for e in sorted(sol.m):
        if not g.has_edge(*e):
            rep.violations.append(f"matching edge s{e[0]}-t{e[1]} not in graph")
    if not is_matching(sol.m):
        ds, dt = degrees(sol.m)
        bad = [f"s{v}" for v, d in ds.items() if d > 1] + [f"t{v}" for v, d in dt.items() if d > 1]
        rep.violations.append(f"not a matching: {sorted(bad)} have degree > 1")
    used: dict[Node, int] = {}
    link_edges: set[Edge] = set()
    for i, link in enumerate(sol.f):
        for e in link.edges:
            if not g.has_edge(*e):
                rep.violations.append(f"link {i} edge s{e[0]}-t{e[1]} not in graph")
            link_edges.add(e)
        for v in (Node("S", link.u), Node("T", link.center), Node("S", link.w)):
            if v in used:
                rep.violations.append(f"links {used[v]} and {i} share node {v}")
            else:
                used[v] = i
    shared = sol.m & link_edges
    if shared:
        rep.violations.append(f"matching and links share edges {sorted(shared)}")
    cov = covered_t(sol.m | link_edges)
    for t in sorted(required - cov):
        rep.violations.append(f"required node t{t} not covered")
    if sol.covered and not sol.covered <= cov:
        rep.violations.append(f"claimed coverage {sorted(sol.covered - cov)} not realised")
    return rep


def incidental_coverage(g: BipartiteGraph, sol: LiangSolution) -> frozenset[int]:
    """Covered T-nodes that were not required (degree below 3)."""
    return covered_t(sol.edges()) - required_nodes(g)


def links_to_vfree(g: BipartiteGraph, sol: LiangSolution) -> TwoMatching:
    """Union of ``M`` and the links, minus matching edges at doubly covered T-nodes."""
    rep = verify_liang(g, sol, required=())
    if not rep.ok:
        raise InvalidSolution(str(rep))
    link_edges = {e for link in sol.f for e in link.edges}
    link_t = {link.center for link in sol.f}
    union = link_edges | {e for e in sol.m if e[1] not in link_t}
    try:
        n = TwoMatching(frozenset(union))
    except ValueError as exc:
        raise InvalidSolution(str(exc)) from exc
    vp = n.vpaths()
    if vp:
        raise NotVFree(vp[0])
    return n


# Edge labels along a component; a link is two consecutive edges
# meeting at a T-node.
_UNUSED, _MATCH, _LINK1, _LINK2 = range(4)


def _allowed(prev: int, cur: int, shared: Node) -> bool:
    if prev == _LINK1:
        return cur == _LINK2 and shared.side == "T"
    if cur == _LINK2:
        return False
    if prev == _MATCH and cur == _MATCH:
        return False
    if prev == _LINK2 and cur == _LINK1:
        return False  # two links would share this S-node
    if cur == _LINK1 and shared.side == "T":
        return False  # the link's centre must be the node after this edge
    return True


def _cost(label: int) -> tuple[int, int]:
    return {_UNUSED: (0, 0), _MATCH: (0, 1), _LINK1: (1, 1), _LINK2: (0, 1)}[label]


def _plan_component(comp: Component, required: frozenset[int]) -> list[int] | None:
    """Label every edge of a path or cycle component, or None if impossible.

    Dynamic program over the edge sequence; the state is the label of the
    previous edge.  Picks fewest links, then fewest edges.
    """
    nodes, k = comp.nodes, len(comp.edges)
    cyclic = comp.kind == "cycle"
    # edge i joins nodes[i] and nodes[(i + 1) % len(nodes)]

    def need(v: Node) -> bool:
        return v.side == "T" and v.index in required

    def run(first_prev: int | None) -> tuple[tuple[int, int], list[int]] | None:
        # best[label] = (cost, labels)
        best: dict[int, tuple[tuple[int, int], list[int]]] = {}
        for lab in range(4):
            if first_prev is None:
                if lab == _LINK2 or (lab == _LINK1 and nodes[1].side != "T"):
                    continue
                if need(nodes[0]) and lab == _UNUSED:
                    continue
            else:
                if not _allowed(first_prev, lab, nodes[0]):
                    continue
                if need(nodes[0]) and lab == _UNUSED and first_prev == _UNUSED:
                    continue
            best[lab] = (_cost(lab), [lab])
        for i in range(1, k):
            shared = nodes[i]
            nxt: dict[int, tuple[tuple[int, int], list[int]]] = {}
            for prev, (c, labs) in best.items():
                for lab in range(4):
                    if not _allowed(prev, lab, shared):
                        continue
                    if need(shared) and prev == _UNUSED and lab == _UNUSED:
                        continue
                    if lab == _LINK1 and not cyclic and i == k - 1:
                        continue
                    cand = ((c[0] + _cost(lab)[0], c[1] + _cost(lab)[1]), labs + [lab])
                    if lab not in nxt or cand[0] < nxt[lab][0]:
                        nxt[lab] = cand
            best = nxt
        if first_prev is None:
            last = nodes[-1]
            finals = [(c, labs) for lab, (c, labs) in best.items()
                      if lab != _LINK1 and not (need(last) and lab == _UNUSED)]
        else:
            finals = [(c, labs) for lab, (c, labs) in best.items() if lab == first_prev]
        return min(finals, default=None)

    if not cyclic:
        res = run(None)
        return None if res is None else res[1]
    results = [r for r in (run(lab) for lab in range(4)) if r is not None]
    return min(results)[1] if results else None


def vfree_to_links(g: BipartiteGraph, n: TwoMatching, required: Iterable[int]) -> LiangSolution:
    """Extract a matching and disjoint S-links from a V-free cover.

    The result uses only edges of ``n`` and covers ``required``.
    """
    required = frozenset(required)
    if not n.edges <= g.edge_set:
        raise InvalidSolution("2-matching uses edges outside the graph")
    cov = covered_t(n.edges)
    for t in sorted(required):
        if t not in cov:
            raise CoverageGap(Node("T", t))
    m: set[Edge] = set()
    links: list[SLink] = []
    for comp in n.components():
        if comp.is_vpath:
            raise NotVFree(comp)
        labels = _plan_component(comp, required)
        if labels is None:
            gap = next(v for v in comp.nodes if v.side == "T" and v.index in required)
            raise CoverageGap(gap)
        for i, lab in enumerate(labels):
            if lab == _MATCH:
                m.add(comp.edges[i])
            elif lab == _LINK1:
                (a, t), (b, _) = comp.edges[i], comp.edges[(i + 1) % len(comp.edges)]
                links.append(SLink(a, t, b))
    links.sort(key=lambda l: (l.center, l.u, l.w))
    sol = LiangSolution(frozenset(m), tuple(links))
    return LiangSolution(sol.m, sol.f, covered_t(sol.edges()))
