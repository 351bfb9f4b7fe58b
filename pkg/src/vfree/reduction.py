"""Gadget reduction from 3-dimensional matching to V-free 2-matching cover.

Every triple ``e = (x, y, z)`` gets a path ``t1 - s1 - t2 - s2 - t3``; the
path attaches to the anchors ``s_x`` and ``s_y`` through ``t1`` and to
``t_z`` through ``s1``.  A perfect matching of the triples exists exactly
when the gadget graph has a V-free 2-matching covering its whole T-side.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Iterable

from .errors import (CoverageGap, InternalTheoremViolation, InvalidInstance,
                     NotPerfectMatching, NotVFree)
from .graph import BipartiteGraph, Edge, Node, TwoMatching, covered_t


@dataclass(frozen=True)
class ThreeDMInstance:
    """Triples ``(x, y, z)`` over parts of size ``n``; triple id = position."""

    n: int
    triples: tuple[tuple[int, int, int], ...]

    def __post_init__(self):
        object.__setattr__(self, "triples",
                           tuple(tuple(int(c) for c in t) for t in self.triples))

    @property
    def x_count(self) -> int:
        return self.n

    y_count = z_count = x_count

    def validate(self) -> None:
        """Raise :class:`InvalidInstance` unless tripartite and 3-regular."""
        for i, t in enumerate(self.triples):
            if len(t) != 3:
                raise InvalidInstance(f"triple {i} does not have three coordinates")
            if any(not 0 <= c < self.n for c in t):
                raise InvalidInstance(f"triple {i} = {t} has a coordinate outside 0..{self.n - 1}")
        for part, name in enumerate("xyz"):
            counts = Counter(t[part] for t in self.triples)
            for v in range(self.n):
                if counts[v] != 3:
                    raise InvalidInstance(f"node {name}{v} lies in {counts[v]} triples, not 3")

    def is_perfect(self, chosen: Iterable[int]) -> str | None:
        """Name of the first node not covered exactly once, or None."""
        chosen = sorted(set(chosen))
        for part, name in enumerate("xyz"):
            counts = Counter(self.triples[i][part] for i in chosen)
            for v in range(self.n):
                if counts[v] != 1:
                    return f"{name}{v}"
        return None


@dataclass(frozen=True)
class GadgetMap:
    """Role bookkeeping for the gadget graph.

    ``s_roles[i]`` / ``t_roles[j]`` / ``edge_roles[k]`` are ``(role, owner)``
    where the owner is a part index (anchors, ``t_z``) or a triple id.
    """

    n: int
    m: int
    s_roles: tuple[tuple[str, int], ...]
    t_roles: tuple[tuple[str, int], ...]
    edge_roles: tuple[tuple[str, int], ...]

    # index helpers; the layout is fixed by reduce_3dm
    def s_x(self, x: int) -> int:
        return x

    def s_y(self, y: int) -> int:
        return self.n + y

    def s1(self, e: int) -> int:
        return 2 * self.n + 2 * e

    def s2(self, e: int) -> int:
        return 2 * self.n + 2 * e + 1

    def t_x(self, x: int) -> int:
        return x

    def t_y(self, y: int) -> int:
        return self.n + y

    def t_z(self, z: int) -> int:
        return 2 * self.n + z

    def t1(self, e: int) -> int:
        return 3 * self.n + 3 * e

    def t2(self, e: int) -> int:
        return 3 * self.n + 3 * e + 1

    def t3(self, e: int) -> int:
        return 3 * self.n + 3 * e + 2

    def path_edges(self, e: int) -> tuple[Edge, Edge, Edge, Edge]:
        return ((self.s1(e), self.t1(e)), (self.s1(e), self.t2(e)),
                (self.s2(e), self.t2(e)), (self.s2(e), self.t3(e)))


def reduce_3dm(h: ThreeDMInstance) -> tuple[BipartiteGraph, GadgetMap]:
    """Build the gadget graph: ``20n`` nodes, ``23n`` edges, maximum degree 4."""
    h.validate()
    n, m = h.n, len(h.triples)
    s_roles = ([("s_x", x) for x in range(n)] + [("s_y", y) for y in range(n)]
               + [r for e in range(m) for r in (("s1", e), ("s2", e))])
    t_roles = ([("t_x", x) for x in range(n)] + [("t_y", y) for y in range(n)]
               + [("t_z", z) for z in range(n)]
               + [r for e in range(m) for r in (("t1", e), ("t2", e), ("t3", e))])
    probe = GadgetMap(n, m, (), (), ())
    edges: list[Edge] = []
    roles: list[tuple[str, int]] = []
    for x in range(n):
        edges.append((probe.s_x(x), probe.t_x(x)))
        roles.append(("anchor_x", x))
    for y in range(n):
        edges.append((probe.s_y(y), probe.t_y(y)))
        roles.append(("anchor_y", y))
    for e, (x, y, z) in enumerate(h.triples):
        for i, edge in enumerate(probe.path_edges(e), start=1):
            edges.append(edge)
            roles.append((f"path{i}", e))
        edges.append((probe.s_x(x), probe.t1(e)))
        roles.append(("conn_x", e))
        edges.append((probe.s_y(y), probe.t1(e)))
        roles.append(("conn_y", e))
        edges.append((probe.s1(e), probe.t_z(z)))
        roles.append(("conn_z", e))
    g = BipartiteGraph(len(s_roles), len(t_roles), tuple(edges))
    gm = GadgetMap(n, m, tuple(s_roles), tuple(t_roles), tuple(roles))
    if g.max_degree() > 4:
        raise InternalTheoremViolation(f"gadget graph has degree {g.max_degree()} > 4")
    assert g.s_count + g.t_count == 20 * n and len(g.edges) == 23 * n
    return g, gm


def forward_map(h: ThreeDMInstance, gm: GadgetMap, matching: Iterable[int]) -> TwoMatching:
    """V-free 2-matching covering every T-node, built from a perfect matching."""
    chosen = set(matching)
    bad = h.is_perfect(chosen)
    if bad is not None:
        raise NotPerfectMatching(bad)
    out: set[Edge] = set()
    for e, (x, y, z) in enumerate(h.triples):
        path = gm.path_edges(e)
        if e in chosen:
            out.update([(gm.s_x(x), gm.t_x(x)), (gm.s_y(y), gm.t_y(y)),
                        (gm.s_x(x), gm.t1(e)), (gm.s_y(y), gm.t1(e)),
                        (gm.s1(e), gm.t_z(z))])
            out.update(path[1:])
        else:
            out.update(path)
    return TwoMatching(frozenset(out))


def lift_solution(h: ThreeDMInstance, gm: GadgetMap, n: TwoMatching) -> frozenset[int]:
    """Read a perfect matching of ``h`` off a V-free cover of the gadget graph."""
    vpaths = n.vpaths()
    if vpaths:
        raise NotVFree(vpaths[0])
    cov = covered_t(n.edges)
    for j in range(len(gm.t_roles)):
        if j not in cov:
            raise CoverageGap(Node("T", j))
    edges = set(n.edges)
    for e in range(len(h.triples)):
        _, s1t2, t2s2, s2t3 = gm.path_edges(e)
        if s1t2 not in edges or s2t3 not in edges:
            raise InternalTheoremViolation(f"gadget path of triple {e} is not forced as expected")
        edges.add(t2s2)
    chosen = frozenset(e for e, (_, _, z) in enumerate(h.triples)
                       if (gm.s1(e), gm.t_z(z)) in edges)
    bad = h.is_perfect(chosen)
    if bad is not None:
        raise InternalTheoremViolation(f"lifted triples are not a perfect matching at {bad}")
    return chosen
