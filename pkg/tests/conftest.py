import random

import pytest

from vfree.graph import BipartiteGraph, Multigraph


def complete_bipartite(a: int, b: int) -> BipartiteGraph:
    return BipartiteGraph(a, b, tuple((s, t) for s in range(a) for t in range(b)))


def petersen() -> Multigraph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Multigraph.simple(10, outer + spokes + inner)


def random_multigraph(rng: random.Random, max_nodes: int) -> Multigraph:
    n = rng.randint(1, max_nodes)
    p = rng.random()
    edges = []
    for u in range(n):
        for v in range(u + 1, n):
            if rng.random() < p:
                edges.extend([(u, v, None)] * rng.randint(1, 2))
    return Multigraph(n, tuple(edges))


def random_bipartite(rng: random.Random, max_side: int) -> BipartiteGraph:
    a, b = rng.randint(1, max_side), rng.randint(1, max_side)
    p = rng.random()
    return BipartiteGraph(a, b, tuple((s, t) for s in range(a) for t in range(b) if rng.random() < p))


def bipartite_as_multigraph(g: BipartiteGraph) -> Multigraph:
    return Multigraph.simple(g.s_count + g.t_count, [(s, g.s_count + t) for s, t in g.edges])


@pytest.fixture
def k34() -> BipartiteGraph:
    return complete_bipartite(3, 4)
