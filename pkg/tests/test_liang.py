import pytest

from vfree.errors import CoverageGap, DegreeBoundViolated, InvalidSolution, NotVFree
from vfree.generators import random_liang_graph
from vfree.graph import BipartiteGraph, SLink, TwoMatching
from vfree.liang import (LiangSolution, incidental_coverage, links_to_vfree, required_nodes,
                         solve_liang, verify_liang, vfree_to_links)
from vfree.oracle import oracle_vfree_cover


def test_star_needs_one_edge():
    g = BipartiteGraph(3, 1, ((0, 0), (1, 0), (2, 0)))
    sol = solve_liang(g)
    assert sol.m == {(0, 0)} and sol.f == ()
    assert verify_liang(g, sol).ok


def test_k34(k34):
    sol = solve_liang(k34)
    assert verify_liang(k34, sol).ok
    assert sol.covered == {0, 1, 2, 3}
    assert len(sol.f) == 1 and len(sol.m) == 3


def test_nothing_required():
    g = BipartiteGraph(3, 2, ((0, 0), (1, 0), (2, 1)))
    sol = solve_liang(g)
    assert sol.m == frozenset() and sol.f == () and sol.covered == frozenset()


def test_degree_bounds():
    g = BipartiteGraph(1, 5, tuple((0, t) for t in range(5)))
    with pytest.raises(DegreeBoundViolated):
        solve_liang(g)


def test_incidental_coverage_is_separate():
    # t0 has degree 3, t1 degree 1 attached to a free S-node
    g = BipartiteGraph(4, 2, ((0, 0), (1, 0), (2, 0), (3, 1)))
    sol = LiangSolution(frozenset({(0, 0), (3, 1)}), ())
    assert verify_liang(g, sol).ok
    assert incidental_coverage(g, sol) == {1}


def test_links_to_vfree_examples():
    g = BipartiteGraph(2, 3, ((0, 0), (0, 1), (1, 1), (1, 2)))
    assert links_to_vfree(g, LiangSolution(frozenset({(0, 0)}), ())).edges == {(0, 0)}
    sol = LiangSolution(frozenset({(0, 0), (1, 2)}), (SLink(0, 1, 1),))
    n = links_to_vfree(g, sol)
    (comp,) = n.components()
    assert comp.kind == "path" and comp.length == 4
    assert n.is_vfree and n.covers(range(3))


def test_links_to_vfree_drops_doubly_covered_edge():
    g = BipartiteGraph(3, 1, ((0, 0), (1, 0), (2, 0)))
    sol = LiangSolution(frozenset({(2, 0)}), (SLink(0, 0, 1),))
    n = links_to_vfree(g, sol)
    assert n.edges == {(0, 0), (1, 0)}


def test_links_to_vfree_rejects_invalid():
    g = BipartiteGraph(2, 2, ((0, 0), (0, 1)))
    with pytest.raises(InvalidSolution):
        links_to_vfree(g, LiangSolution(frozenset({(0, 0), (0, 1)}), ()))


def test_vfree_to_links_single_edge():
    g = BipartiteGraph(1, 1, ((0, 0),))
    sol = vfree_to_links(g, TwoMatching(frozenset({(0, 0)})), {0})
    assert sol.m == {(0, 0)} and sol.f == ()


def test_vfree_to_links_length_four_path():
    g = BipartiteGraph(2, 3, ((0, 0), (0, 1), (1, 1), (1, 2)))
    sol = vfree_to_links(g, TwoMatching(g.edge_set), range(3))
    assert sol.m == {(0, 0), (1, 2)}
    assert sol.f == (SLink(0, 1, 1),)


def test_vfree_to_links_eight_cycle():
    # s_i - t_i - s_{i+1}
    edges = [(i, i) for i in range(4)] + [((i + 1) % 4, i) for i in range(4)]
    g = BipartiteGraph(4, 4, tuple(edges))
    sol = vfree_to_links(g, TwoMatching(g.edge_set), range(4))
    assert len(sol.m) == 4 and sol.f == ()
    assert sol.covered == {0, 1, 2, 3}


def test_vfree_to_links_errors():
    g = BipartiteGraph(1, 2, ((0, 0), (0, 1)))
    with pytest.raises(NotVFree):
        vfree_to_links(g, TwoMatching(g.edge_set), {0, 1})
    with pytest.raises(CoverageGap):
        vfree_to_links(g, TwoMatching(frozenset({(0, 0)})), {1})


def test_verify_violations(k34):
    bad_links = LiangSolution(frozenset(), (SLink(0, 0, 1), SLink(1, 1, 2)))
    assert any("share node" in v for v in verify_liang(k34, bad_links, ()).violations)
    not_matching = LiangSolution(frozenset({(0, 0), (0, 1)}), ())
    assert any("not a matching" in v for v in verify_liang(k34, not_matching, ()).violations)
    sol = solve_liang(k34)
    assert verify_liang(k34, sol, range(4)).ok


def test_random_pipeline_and_round_trips():
    for seed in range(60):
        g = random_liang_graph(12, 12, seed)
        sol = solve_liang(g)
        req = required_nodes(g)
        assert verify_liang(g, sol, req).ok
        n = links_to_vfree(g, sol)
        assert n.is_vfree and n.covers(req)
        assert all(d <= 2 for d in _t_degrees(n))
        back = vfree_to_links(g, n, req)
        assert verify_liang(g, back, req).ok


def test_round_trip_from_oracle_witness():
    for seed in range(40):
        g = random_liang_graph(5, 6, seed, p_full=0.6)
        req = required_nodes(g)
        w = oracle_vfree_cover(g, req)
        assert w is not None  # guaranteed by the degree bounds
        sol = vfree_to_links(g, w, req)
        assert verify_liang(g, sol, req).ok
        assert sol.edges() <= w.edges
        again = links_to_vfree(g, sol)
        assert again.is_vfree and again.covers(req)


def _t_degrees(n):
    from collections import Counter
    return Counter(t for _, t in n.edges).values()
