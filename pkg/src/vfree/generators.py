"""Seeded random instance families.

All randomness comes from ``numpy.random.Generator(PCG64(seed))`` so that a
seed plus parameters pins the instance exactly.
"""

from __future__ import annotations

import numpy as np

from .errors import InfeasibleParams
from .graph import BipartiteGraph, Hypergraph
from .reduction import ThreeDMInstance


def make_rng(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(seed))


def random_liang_graph(s_count: int, t_count: int, seed: int | np.random.Generator,
                       p_full: float = 0.85, s_bound: int = 4, t_bound: int = 3) -> BipartiteGraph:
    """Bipartite graph with ``deg(s) <= s_bound`` and ``deg(t) <= t_bound``.

    Each T-node asks for ``t_bound`` neighbours with probability ``p_full``
    (fewer otherwise) and draws them among S-nodes with spare capacity.
    """
    if s_count < 0 or t_count < 0 or not 0 <= p_full <= 1:
        raise InfeasibleParams("counts must be non-negative and 0 <= p_full <= 1")
    rng = seed if isinstance(seed, np.random.Generator) else make_rng(seed)
    cap = [s_bound] * s_count
    edges = []
    for t in range(t_count):
        want = t_bound if rng.random() < p_full else int(rng.integers(0, t_bound))
        free = [s for s in range(s_count) if cap[s] > 0]
        take = min(want, len(free))
        if take == 0:
            continue
        for s in sorted(int(x) for x in rng.choice(free, size=take, replace=False)):
            cap[s] -= 1
            edges.append((s, t))
    return BipartiteGraph(s_count, t_count, tuple(edges))


def _uniform_regular_layer(n: int, k: int, r: int, rng: np.random.Generator,
                           max_tries: int = 10_000) -> list[tuple[int, ...]]:
    if r == 0:
        return []
    if k < 1 or k > n or (n * r) % k:
        raise InfeasibleParams(f"no {k}-uniform {r}-regular hypergraph on {n} nodes")
    stubs = np.repeat(np.arange(n), r)
    for _ in range(max_tries):
        rng.shuffle(stubs)
        groups = stubs.reshape(-1, k)
        if all(len(set(g.tolist())) == k for g in groups):
            return [tuple(sorted(int(v) for v in g)) for g in groups]
    raise InfeasibleParams(f"configuration model kept producing degenerate hyperedges "
                           f"(n={n}, k={k}, r={r})")


def random_quasi_regular(n: int, layers: list[tuple[int, int]],
                         seed: int | np.random.Generator) -> Hypergraph:
    """Union of ``k``-uniform ``r``-regular layers on the same ``n`` nodes.

    Each layer adds ``(k - 1) * r`` to every quasi-degree, so the union is
    quasi-regular; it is oddly uniform when every ``k`` is odd.
    """
    rng = seed if isinstance(seed, np.random.Generator) else make_rng(seed)
    edges: list[tuple[int, ...]] = []
    for k, r in layers:
        edges.extend(_uniform_regular_layer(n, k, r, rng))
    return Hypergraph(n, tuple(edges))


def random_bounded_hypergraph(n: int, m: int, seed: int | np.random.Generator,
                              k: int = 3, max_degree: int = 4) -> Hypergraph:
    """``k``-uniform hypergraph with up to ``m`` hyperedges and degrees <= ``max_degree``."""
    if k < 1:
        raise InfeasibleParams("k must be positive")
    rng = seed if isinstance(seed, np.random.Generator) else make_rng(seed)
    cap = [max_degree] * n
    edges = []
    for _ in range(m):
        free = [v for v in range(n) if cap[v] > 0]
        if len(free) < k:
            break
        e = tuple(sorted(int(x) for x in rng.choice(free, size=k, replace=False)))
        for v in e:
            cap[v] -= 1
        edges.append(e)
    return Hypergraph(n, tuple(edges))


def random_3dm(n: int, seed: int | np.random.Generator, swaps: int = 0) -> ThreeDMInstance:
    """Union of three random perfect matchings, then ``swaps`` coordinate swaps.

    Without swaps the instance always has a perfect matching.  A swap
    exchanges the Y (or Z) coordinate of two triples, which keeps every
    node in exactly three triples.
    """
    if n < 1:
        raise InfeasibleParams("n must be positive")
    rng = seed if isinstance(seed, np.random.Generator) else make_rng(seed)
    triples = []
    for _ in range(3):
        ys = rng.permutation(n)
        zs = rng.permutation(n)
        triples.extend((x, int(ys[x]), int(zs[x])) for x in range(n))
    for _ in range(swaps):
        a, b = (int(i) for i in rng.choice(len(triples), size=2, replace=False))
        part = 1 + int(rng.integers(0, 2))
        ta, tb = list(triples[a]), list(triples[b])
        ta[part], tb[part] = tb[part], ta[part]
        triples[a], triples[b] = tuple(ta), tuple(tb)
    return ThreeDMInstance(n, tuple(triples))
