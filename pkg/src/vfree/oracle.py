"""Exhaustive exponential-time oracles used as ground truth.

Nothing here calls into :mod:`vfree.matching`, :mod:`vfree.extended` or
:mod:`vfree.liang`; the searches only share the data model.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable

from .errors import BudgetExceeded
from .graph import BipartiteGraph, Edge, Hypergraph, Multigraph, TwoMatching


@dataclass(frozen=True)
class OracleBudget:
    max_edges: int = 26
    max_nodes: int = 12
    time_limit: float = 60.0

    def __post_init__(self):
        if self.max_edges <= 0 or self.max_nodes <= 0 or self.time_limit <= 0:
            raise ValueError("budget values must be positive")


DEFAULT_BUDGET = OracleBudget()


class _Clock:
    def __init__(self, budget: OracleBudget):
        self.deadline = time.monotonic() + budget.time_limit
        self.ticks = 0

    def tick(self) -> None:
        self.ticks += 1
        if self.ticks % 1024 == 0 and time.monotonic() > self.deadline:
            raise BudgetExceeded("oracle time limit reached")


def oracle_nu(g: Multigraph, budget: OracleBudget = DEFAULT_BUDGET) -> int:
    """Maximum matching size by memoised exhaustive search over node subsets."""
    if g.n > budget.max_nodes:
        raise BudgetExceeded(f"{g.n} nodes > max_nodes={budget.max_nodes}")
    nbr = [0] * g.n
    for u, v, _ in g.edges:
        nbr[u] |= 1 << v
        nbr[v] |= 1 << u

    @lru_cache(maxsize=None)
    def best(mask: int) -> int:
        # lowest remaining node that still has a neighbour in mask
        while mask:
            v = (mask & -mask).bit_length() - 1
            if nbr[v] & mask:
                break
            mask &= ~(1 << v)
        else:
            return 0
        rest = mask & ~(1 << v)
        result = best(rest)
        cand = nbr[v] & rest
        while cand:
            u = (cand & -cand).bit_length() - 1
            cand &= cand - 1
            result = max(result, 1 + best(rest & ~(1 << u)))
        return result

    return best((1 << g.n) - 1)


def oracle_ge_d_set(g: Multigraph, budget: OracleBudget = DEFAULT_BUDGET) -> frozenset[int]:
    """Nodes missed by at least one maximum matching: ``nu(G - v) == nu(G)``."""
    nu = oracle_nu(g, budget)
    out = set()
    for v in range(g.n):
        rest = [u for u in range(g.n) if u != v]
        sub, _ = g.induced(rest)
        if oracle_nu(sub, budget) == nu:
            out.add(v)
    return frozenset(out)


def oracle_extended_matching(h: Hypergraph, required: Iterable[int],
                             budget: OracleBudget = DEFAULT_BUDGET):
    """Search every disjoint family of hyperedges and witnessed pairs.

    Returns an :class:`~vfree.extended.ExtendedMatching` covering
    ``required`` or ``None`` when none exists.
    """
    from .extended import ExtendedMatching

    if h.n > budget.max_nodes:
        raise BudgetExceeded(f"{h.n} nodes > max_nodes={budget.max_nodes}")
    clock = _Clock(budget)
    req = sorted(set(required))
    # candidate elements per node: whole hyperedges, then pairs
    options: list[list[tuple[frozenset[int], object]]] = [[] for _ in range(h.n)]
    for i, e in enumerate(h.hyperedges):
        for v in e:
            options[v].append((frozenset(e), ("e", i)))
    for v in range(h.n):
        partners = {}
        for i in h.incidence[v]:
            for u in h.hyperedges[i]:
                if u != v and u not in partners:
                    partners[u] = i
        for u in sorted(partners):
            a, b = min(u, v), max(u, v)
            options[v].append((frozenset((u, v)), ("p", a, b, partners[u])))

    chosen: list[object] = []

    def solve(used: frozenset[int], idx: int) -> bool:
        clock.tick()
        while idx < len(req) and req[idx] in used:
            idx += 1
        if idx == len(req):
            return True
        v = req[idx]
        for nodes, tag in options[v]:
            if nodes & used:
                continue
            chosen.append(tag)
            if solve(used | nodes, idx + 1):
                return True
            chosen.pop()
        return False

    if not solve(frozenset(), 0):
        return None
    hyperedges = frozenset(t[1] for t in chosen if t[0] == "e")
    pairs = frozenset(t[1:] for t in chosen if t[0] == "p")
    return ExtendedMatching(hyperedges, pairs)


def oracle_vfree_cover(g: BipartiteGraph, required: Iterable[int],
                       budget: OracleBudget = DEFAULT_BUDGET) -> TwoMatching | None:
    """Decide whether a V-free 2-matching covering ``required`` (T-side) exists.

    Edges are only ever added.  At each step the search picks the most
    constrained open demand and branches over the edges that could settle it:
    an uncovered required T-node needs one of its edges, and a V-path
    component needs an extra edge at one of its two T-ends.  Any solution
    containing the current edge set contains one of the branch edges, so no
    witness is missed; a demand with no candidate edge is a dead end.
    """
    if len(g.edges) > budget.max_edges:
        raise BudgetExceeded(f"{len(g.edges)} edges > max_edges={budget.max_edges}")
    clock = _Clock(budget)
    req = sorted(set(required))
    deg_s = [0] * g.s_count
    deg_t = [0] * g.t_count
    chosen: set[Edge] = set()
    nb_s: list[list[int]] = [[] for _ in range(g.s_count)]
    failed: set[frozenset[Edge]] = set()

    def add(s: int, t: int) -> None:
        chosen.add((s, t))
        deg_s[s] += 1
        deg_t[t] += 1
        nb_s[s].append(t)

    def remove(s: int, t: int) -> None:
        chosen.discard((s, t))
        deg_s[s] -= 1
        deg_t[t] -= 1
        nb_s[s].remove(t)

    def options(t: int, exclude: int = -1) -> list[Edge]:
        if deg_t[t] >= 2:
            return []
        return [(s, t) for s in g.adj_t[t]
                if s != exclude and deg_s[s] < 2 and (s, t) not in chosen]

    def demands():
        """Yield the candidate edge lists of every open demand."""
        for t in req:
            if deg_t[t] == 0:
                yield options(t)
        for s in range(g.s_count):
            if deg_s[s] == 2:
                t1, t2 = nb_s[s]
                if deg_t[t1] == 1 and deg_t[t2] == 1:
                    yield options(t1, s) + options(t2, s)

    def solve() -> bool:
        clock.tick()
        key = frozenset(chosen)
        if key in failed:
            return False
        best = None
        for opts in demands():
            if not opts:
                best = opts
                break
            if best is None or len(opts) < len(best):
                best = opts
        if best is None:
            return True
        for s, t in best:
            add(s, t)
            if solve():
                return True
            remove(s, t)
        if len(failed) > 500_000:
            failed.clear()
        failed.add(key)
        return False

    if solve():
        return TwoMatching(frozenset(chosen))
    return None
