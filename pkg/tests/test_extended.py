import random

import pytest
from hypothesis import given, settings, strategies as st

from vfree.errors import NotOddlyUniform, NotQuasiRegular
from vfree.extended import (ExtendedMatching, clique_expansion,
                            extended_matching_covering_max_quasidegree, pad_to_quasi_regular,
                            perfect_extended_matching, quasi_degrees, verify_extended_matching)
from vfree.generators import random_bounded_hypergraph, random_quasi_regular
from vfree.graph import Hypergraph, hypergraph_from_bipartite
from vfree.oracle import oracle_extended_matching

from conftest import complete_bipartite

WHEEL = Hypergraph(4, ((0, 1, 2), (1, 2, 3), (2, 3, 0), (3, 0, 1)))
TWO = Hypergraph(4, ((0, 1, 2), (1, 2, 3)))


def test_quasi_degree_examples():
    p = quasi_degrees(Hypergraph(3, ((0, 1, 2),)))
    assert p.quasi_degree == (2, 2, 2) and p.delta == 2 and p.quasi_regular
    p = quasi_degrees(TWO)
    assert p.quasi_degree == (2, 4, 4, 2)
    assert p.delta == 4 and p.deficiency == (2, 0, 0, 2)
    assert not p.quasi_regular
    p = quasi_degrees(Hypergraph(3))
    assert p.quasi_degree == (0, 0, 0) and p.delta == 0


def test_clique_expansion_examples():
    g = clique_expansion(Hypergraph(3, ((0, 1, 2),)))
    assert g.support == {(0, 1): 0, (0, 2): 0, (1, 2): 0}
    g = clique_expansion(Hypergraph(3, ((0, 1, 2), (0, 1, 2))))
    assert set(g.multiplicity.values()) == {2}
    g = clique_expansion(TWO)
    assert len(g.support) == 5 and g.multiplicity[(1, 2)] == 2
    assert clique_expansion(Hypergraph(2, ((0,), (1,)))).edges == ()


def test_perfect_single_hyperedge():
    em = perfect_extended_matching(Hypergraph(3, ((0, 1, 2),)))
    assert em == ExtendedMatching(frozenset({0}), frozenset())


def test_perfect_wheel_uses_two_pairs():
    em = perfect_extended_matching(WHEEL)
    assert not em.hyperedges and len(em.pairs) == 2
    assert verify_extended_matching(WHEEL, em, range(4)).ok


def test_perfect_disjoint_hyperedges():
    h = Hypergraph(6, ((0, 1, 2), (3, 4, 5)))
    assert perfect_extended_matching(h).hyperedges == {0, 1}


def test_perfect_rejects_bad_input():
    with pytest.raises(NotOddlyUniform):
        perfect_extended_matching(Hypergraph(2, ((0, 1),)))
    with pytest.raises(NotQuasiRegular):
        perfect_extended_matching(TWO)


def test_perfect_singletons_only():
    h = Hypergraph(3, ((0,), (1,), (2,), (1,)))
    em = perfect_extended_matching(h)
    assert verify_extended_matching(h, em, range(3)).ok


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10_000), st.sampled_from([
    [(3, 1)], [(3, 2)], [(3, 4)], [(5, 1)], [(5, 2)], [(1, 2), (3, 2)], [(1, 1), (5, 1), (3, 1)],
]))
def test_perfect_on_generated_quasi_regular(seed, layers):
    rng = random.Random(seed)
    k_lcm = 15
    n = rng.choice([k_lcm, 2 * k_lcm])
    h = random_quasi_regular(n, layers, seed)
    em = perfect_extended_matching(h)
    assert verify_extended_matching(h, em, range(h.n)).ok


def test_pad_already_regular():
    h = Hypergraph(3, ((0, 1, 2),))
    padded, emb = pad_to_quasi_regular(h)
    assert padded.n == 9 and padded.m == 3
    assert emb.original(4) == (1, 1)


def test_pad_two_hyperedges():
    padded, _ = pad_to_quasi_regular(TWO)
    assert padded.n == 12 and padded.m == 8
    assert padded.hyperedges[6:] == ((0, 4, 8), (3, 7, 11))
    p = quasi_degrees(padded)
    assert p.quasi_regular and p.delta == 4


def test_pad_isolated_node():
    padded, _ = pad_to_quasi_regular(Hypergraph(1))
    assert padded.n == 3 and padded.m == 0
    assert quasi_degrees(padded).quasi_regular


@settings(max_examples=80, deadline=None)
@given(st.integers(1, 12), st.integers(0, 10), st.integers(0, 2**31))
def test_pad_always_quasi_regular(n, m, seed):
    h = random_bounded_hypergraph(n, m, seed, k=3 if n >= 3 else 1, max_degree=5)
    padded, _ = pad_to_quasi_regular(h)
    p = quasi_degrees(padded)
    assert p.quasi_regular and p.delta == quasi_degrees(h).delta


def test_max_quasidegree_regular_case():
    h = Hypergraph(6, ((0, 1, 2), (3, 4, 5), (0, 3, 4), (1, 2, 5)))
    em = extended_matching_covering_max_quasidegree(h)
    assert verify_extended_matching(h, em, range(6)).ok


def test_max_quasidegree_two_hyperedges():
    em = extended_matching_covering_max_quasidegree(TWO)
    assert verify_extended_matching(TWO, em, {1, 2}).ok
    assert oracle_extended_matching(TWO, {1, 2}).hyperedges == {0}


def test_max_quasidegree_k34():
    h, _ = hypergraph_from_bipartite(complete_bipartite(3, 4), "S")
    em = extended_matching_covering_max_quasidegree(h)
    assert quasi_degrees(h).quasi_degree == (8, 8, 8)
    assert verify_extended_matching(h, em, range(3)).ok


def test_verify_reports_violations():
    h = Hypergraph(4, ((0, 1, 2),))
    assert verify_extended_matching(h, ExtendedMatching({0}), {0, 1, 2}).ok
    rep = verify_extended_matching(h, ExtendedMatching(pairs={(0, 1, 0), (1, 2, 0)}), ())
    assert any("node 1" in v for v in rep.violations)
    rep = verify_extended_matching(h, ExtendedMatching(pairs={(0, 3, 0)}), ())
    assert any("does not contain [3]" in v for v in rep.violations)
    rep = verify_extended_matching(h, ExtendedMatching(), {3})
    assert not rep.ok


def test_max_quasidegree_against_oracle():
    for seed in range(120):
        rng = random.Random(seed)
        n = rng.randint(3, 9)
        h = random_bounded_hypergraph(n, rng.randint(1, 6), seed)
        req = quasi_degrees(h).maximal_nodes()
        em = extended_matching_covering_max_quasidegree(h)
        assert verify_extended_matching(h, em, req).ok
        assert oracle_extended_matching(h, req) is not None
