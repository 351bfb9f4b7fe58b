"""Extended matchings of oddly uniform hypergraphs.

An extended matching is a node-disjoint family of whole hyperedges and of
node pairs, where each pair must lie inside some hyperedge (its witness).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

from .errors import (InternalTheoremViolation, NoSaturation, NotOddlyUniform,
                     NotQuasiRegular, PreconditionViolated)
from .graph import BipartiteGraph, Hypergraph, Multigraph
from .matching import (dm_merge, gallai_edmonds, max_matching_general,
                       saturating_matching)

Pair = tuple[int, int, int]  # (u, v, witness hyperedge id), u < v


@dataclass(frozen=True)
class ExtendedMatching:
    hyperedges: frozenset[int] = frozenset()
    pairs: frozenset[Pair] = frozenset()

    def __post_init__(self):
        object.__setattr__(self, "hyperedges", frozenset(self.hyperedges))
        norm = set()
        for u, v, w in self.pairs:
            if u == v:
                raise ValueError(f"pair ({u}, {v}) repeats a node")
            norm.add((min(u, v), max(u, v), w))
        object.__setattr__(self, "pairs", frozenset(norm))

    def covered(self, h: Hypergraph) -> frozenset[int]:
        out = {v for i in self.hyperedges for v in h.hyperedges[i]}
        out.update(v for u, w, _ in self.pairs for v in (u, w))
        return frozenset(out)

    def __len__(self) -> int:
        return len(self.hyperedges) + len(self.pairs)


@dataclass
class Report:
    violations: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def __str__(self) -> str:
        return "OK" if self.ok else "\n".join(self.violations)


@dataclass(frozen=True)
class QuasiDegreeProfile:
    quasi_degree: tuple[int, ...]
    delta: int
    deficiency: tuple[int, ...]

    @property
    def quasi_regular(self) -> bool:
        return len(set(self.quasi_degree)) <= 1

    def maximal_nodes(self) -> frozenset[int]:
        return frozenset(v for v, d in enumerate(self.quasi_degree) if d == self.delta)


def quasi_degrees(h: Hypergraph) -> QuasiDegreeProfile:
    """``d(v) = sum(|e| - 1)`` over hyperedges containing ``v``, with deficiencies."""
    qd = [0] * h.n
    for e in h.hyperedges:
        for v in e:
            qd[v] += len(e) - 1
    delta = max(qd, default=0)
    return QuasiDegreeProfile(tuple(qd), delta, tuple(delta - d for d in qd))


def clique_expansion(h: Hypergraph) -> Multigraph:
    """Replace every hyperedge by a complete graph; parallel edges accumulate."""
    edges = []
    for i, e in enumerate(h.hyperedges):
        for a in range(len(e)):
            for b in range(a + 1, len(e)):
                edges.append((e[a], e[b], i))
    return Multigraph(h.n, tuple(edges))


def _require_oddly_uniform(h: Hypergraph) -> None:
    if not h.oddly_uniform:
        bad = next(i for i, e in enumerate(h.hyperedges) if len(e) % 2 == 0)
        raise NotOddlyUniform(f"hyperedge {bad} has even size {len(h.hyperedges[bad])}")


def _perfect_on(g: Multigraph, nodes: Iterable[int]) -> list[tuple[int, int]]:
    """Perfect matching of ``g[nodes]`` in host ids, or raise."""
    nodes = sorted(nodes)
    if not nodes:
        return []
    sub, ids = g.induced(nodes)
    m = max_matching_general(sub)
    if 2 * len(m) != len(nodes):
        raise InternalTheoremViolation(f"no perfect matching on {nodes}")
    return [(ids[a], ids[b]) for a, b in m]


def perfect_extended_matching(h: Hypergraph) -> ExtendedMatching:
    """Perfect extended matching of an oddly uniform quasi-regular hypergraph.

    Works on the clique expansion ``G``.  A perfect matching of ``G`` is
    returned directly; otherwise the Gallai-Edmonds decomposition is used:
    a matching covering ``A`` and every D-component that spans no hyperedge
    is found in the contracted bipartite graph, extended into ``C`` and into
    the touched components, and each remaining component ``K`` is covered by
    one hyperedge ``e`` inside it plus a perfect matching of ``K - e``.
    """
    _require_oddly_uniform(h)
    prof = quasi_degrees(h)
    if not prof.quasi_regular:
        raise NotQuasiRegular(f"quasi-degrees range over {sorted(set(prof.quasi_degree))}")
    if prof.delta == 0 and any(h.degree(v) == 0 for v in range(h.n)):
        raise PreconditionViolated("0-quasi-regular hypergraph with an isolated node")
    delta = prof.delta

    g = clique_expansion(h)
    witness = g.support

    def as_pairs(edges) -> set[Pair]:
        return {(min(u, v), max(u, v), witness[(min(u, v), max(u, v))]) for u, v in edges}

    m0 = max_matching_general(g)
    if 2 * len(m0) == h.n:
        return ExtendedMatching(frozenset(), frozenset(as_pairs(m0)))

    ge = gallai_edmonds(g)
    comp_of = ge.component_of()
    n_comp = len(ge.d_components)

    # a hyperedge is spanned by K iff all of its nodes lie in K
    spanned: dict[int, int] = {}
    for i, e in enumerate(h.hyperedges):
        ks = {comp_of.get(v) for v in e}
        if len(ks) == 1 and None not in ks:
            spanned.setdefault(ks.pop(), i)
    d1 = {k for k in range(n_comp) if k in spanned}
    d2 = [k for k in range(n_comp) if k not in d1]

    # contracted bipartite graph: S = D-components, T = A (indexed densely)
    a_nodes = sorted(ge.A)
    a_index = {a: j for j, a in enumerate(a_nodes)}
    contracted_mult: dict[tuple[int, int], int] = {}
    lift: dict[tuple[int, int], tuple[int, int]] = {}
    for (u, v), mult in sorted(g.multiplicity.items()):
        for d, a in ((u, v), (v, u)):
            if d in comp_of and a in a_index:
                key = (comp_of[d], a_index[a])
                contracted_mult[key] = contracted_mult.get(key, 0) + mult
                if key not in lift or d < lift[key][0]:
                    lift[key] = (d, a)
    for k in d2:
        deg = sum(m for (kk, _), m in contracted_mult.items() if kk == k)
        if deg < delta:
            raise InternalTheoremViolation(
                f"component {sorted(ge.d_components[k])} has only {deg} < {delta} edges to A")
    gp = BipartiteGraph(n_comp, len(a_nodes), tuple(sorted(contracted_mult)))

    try:
        m_d2 = saturating_matching(gp, d2, "S")
    except NoSaturation as exc:
        raise InternalTheoremViolation(f"D2 not saturable: {exc}") from exc
    m_a = set()
    for u, v in ge.matching:
        for d, a in ((u, v), (v, u)):
            if a in a_index:
                if d not in comp_of:
                    raise InternalTheoremViolation(f"A-node {a} matched outside D")
                m_a.add((comp_of[d], a_index[a]))
    m_prime = dm_merge(gp, m_d2, d2, m_a, range(len(a_nodes)))

    pairs: set[Pair] = set()
    hyper: set[int] = set()
    touched: dict[int, int] = {}
    for k, j in sorted(m_prime):
        d, a = lift[(k, j)]
        touched[k] = d
        pairs |= as_pairs([(d, a)])
    pairs |= as_pairs((u, v) for u, v in ge.matching if u in ge.C and v in ge.C)
    for k, comp in enumerate(ge.d_components):
        if k in touched:
            pairs |= as_pairs(_perfect_on(g, comp - {touched[k]}))
        elif k in d1:
            e = spanned[k]
            hyper.add(e)
            pairs |= as_pairs(_perfect_on(g, comp - set(h.hyperedges[e])))
        else:
            raise InternalTheoremViolation(f"D2 component {sorted(comp)} left uncovered")

    em = ExtendedMatching(frozenset(hyper), frozenset(pairs))
    if __debug__:
        rep = verify_extended_matching(h, em, range(h.n))
        if not rep.ok:
            raise InternalTheoremViolation(str(rep))
    return em


@dataclass(frozen=True)
class Padding:
    """Node ``i`` of the padded hypergraph is copy ``i // n`` of node ``i % n``."""

    n: int
    original_m: int

    def original(self, v: int) -> tuple[int, int]:
        """``(copy, node)`` for padded node ``v``."""
        return divmod(v, self.n)


def pad_to_quasi_regular(h: Hypergraph) -> tuple[Hypergraph, Padding]:
    """Three disjoint copies of ``h`` plus ``deficiency/2`` triples ``{v1, v2, v3}``.

    Hyperedge ``i + c*m`` is copy ``c`` of hyperedge ``i``; padding triples
    come after all copies.
    """
    _require_oddly_uniform(h)
    prof = quasi_degrees(h)
    n = h.n
    edges = [tuple(v + c * n for v in e) for c in range(3) for e in h.hyperedges]
    for v in range(n):
        gamma = prof.deficiency[v]
        assert gamma % 2 == 0
        edges.extend([(v, v + n, v + 2 * n)] * (gamma // 2))
    padded = Hypergraph(3 * n, tuple(edges))
    out = quasi_degrees(padded)
    if n and not (out.quasi_regular and out.delta == prof.delta):
        raise InternalTheoremViolation("padding did not reach quasi-regularity")
    return padded, Padding(n, h.m)


def extended_matching_covering_max_quasidegree(h: Hypergraph) -> ExtendedMatching:
    """Extended matching covering every node of maximum quasi-degree.

    Pads ``h`` to a quasi-regular hypergraph, takes a perfect extended
    matching there and keeps the elements that live in the first copy.
    """
    _require_oddly_uniform(h)
    prof = quasi_degrees(h)
    required = prof.maximal_nodes()
    if h.n == 0:
        return ExtendedMatching()
    if prof.delta == 0:
        if any(h.degree(v) == 0 for v in required):
            raise PreconditionViolated("node of quasi-degree 0 lies in no hyperedge")
        return ExtendedMatching(frozenset(h.incidence[v][0] for v in required))

    padded, _ = pad_to_quasi_regular(h)
    full = perfect_extended_matching(padded)
    m = h.m
    em = ExtendedMatching(
        frozenset(i for i in full.hyperedges if i < m),
        frozenset(p for p in full.pairs if p[2] < m),
    )
    rep = verify_extended_matching(h, em, required)
    if not rep.ok:
        raise InternalTheoremViolation(str(rep))
    return em


def verify_extended_matching(h: Hypergraph, em: ExtendedMatching,
                             required: Iterable[int]) -> Report:
    rep = Report()
    owner: dict[int, str] = {}

    def claim(v: int, label: str) -> None:
        if v in owner:
            rep.violations.append(f"node {v} used by both {owner[v]} and {label}")
        else:
            owner[v] = label

    for i in sorted(em.hyperedges):
        if not 0 <= i < h.m:
            rep.violations.append(f"hyperedge {i} does not exist")
            continue
        for v in h.hyperedges[i]:
            claim(v, f"hyperedge {i}")
    for u, v, w in sorted(em.pairs):
        label = f"pair ({u}, {v}) via {w}"
        if not (0 <= u < h.n and 0 <= v < h.n):
            rep.violations.append(f"{label}: node out of range")
            continue
        if w is None or not 0 <= w < h.m:
            rep.violations.append(f"{label}: witness does not exist")
        elif u not in h.hyperedges[w] or v not in h.hyperedges[w]:
            missing = [x for x in (u, v) if x not in h.hyperedges[w]]
            rep.violations.append(f"{label}: witness does not contain {missing}")
        claim(u, label)
        claim(v, label)
    for v in sorted(set(required)):
        if v not in owner:
            rep.violations.append(f"required node {v} not covered")
    return rep
