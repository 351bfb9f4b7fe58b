"""Line-based text formats for instances and certificates.

Instances::

    b <|S|> <|T|> <|E|>      followed by |E| lines "s t"
    h <n> <m>                followed by m lines "k v1 ... vk"
    3dm <n> <m>              followed by m lines "x y z"

Certificates start with ``cert <kind>`` (kind is ``liang``, ``vfree`` or
``extmatch``) and contain ``edge s t``, ``link u c w``, ``hyperedge <id>``
and ``pair u v via <id>`` lines.  ``#`` starts a comment everywhere.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Iterator, Union

from .errors import ParseError
from .extended import ExtendedMatching
from .graph import BipartiteGraph, Hypergraph, SLink, TwoMatching
from .liang import LiangSolution
from .reduction import GadgetMap, ThreeDMInstance

Instance = Union[BipartiteGraph, Hypergraph, ThreeDMInstance]


def _lines(text: str) -> Iterator[tuple[int, list[str]]]:
    for no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield no, line.split()


def _ints(tokens: list[str], no: int) -> list[int]:
    try:
        out = [int(t) for t in tokens]
    except ValueError:
        raise ParseError(f"expected integers, got {' '.join(tokens)!r}", no) from None
    if any(v < 0 for v in out):
        raise ParseError("negative index", no)
    return out


def parse_instance(text: str) -> Instance:
    lines = list(_lines(text))
    if not lines:
        raise ParseError("empty input")
    no, head = lines[0]
    body = lines[1:]
    kind = head[0]
    if kind == "b":
        if len(head) != 4:
            raise ParseError("header must be 'b <S> <T> <E>'", no)
        s_count, t_count, m = _ints(head[1:], no)
        rows = _rows(body, m, 2, no)
        edges = []
        for lno, (s, t) in rows:
            if s >= s_count or t >= t_count:
                raise ParseError(f"edge ({s}, {t}) out of range", lno)
            edges.append((s, t))
        try:
            return BipartiteGraph(s_count, t_count, tuple(edges))
        except ValueError as exc:
            raise ParseError(str(exc)) from None
    if kind == "h":
        if len(head) != 3:
            raise ParseError("header must be 'h <n> <m>'", no)
        n, m = _ints(head[1:], no)
        if len(body) != m:
            raise ParseError(f"expected {m} hyperedge lines, found {len(body)}", no)
        edges = []
        for lno, toks in body:
            vals = _ints(toks, lno)
            if not vals or vals[0] != len(vals) - 1:
                raise ParseError("hyperedge line must be 'k v1 ... vk'", lno)
            if any(v >= n for v in vals[1:]):
                raise ParseError("node out of range", lno)
            if len(set(vals[1:])) != vals[0]:
                raise ParseError("hyperedge repeats a node", lno)
            edges.append(tuple(vals[1:]))
        return Hypergraph(n, tuple(edges))
    if kind == "3dm":
        if len(head) != 3:
            raise ParseError("header must be '3dm <n> <m>'", no)
        n, m = _ints(head[1:], no)
        rows = _rows(body, m, 3, no)
        for lno, vals in rows:
            if any(v >= n for v in vals):
                raise ParseError("coordinate out of range", lno)
        return ThreeDMInstance(n, tuple(tuple(v) for _, v in rows))
    raise ParseError(f"unknown header {kind!r}", no)


def _rows(body, m: int, width: int, head_no: int) -> list[tuple[int, list[int]]]:
    if len(body) != m:
        raise ParseError(f"expected {m} lines, found {len(body)}", head_no)
    out = []
    for lno, toks in body:
        if len(toks) != width:
            raise ParseError(f"expected {width} integers", lno)
        out.append((lno, _ints(toks, lno)))
    return out


def format_bipartite(g: BipartiteGraph) -> str:
    lines = [f"b {g.s_count} {g.t_count} {len(g.edges)}"]
    lines += [f"{s} {t}" for s, t in g.edges]
    return "\n".join(lines) + "\n"


def format_hypergraph(h: Hypergraph) -> str:
    lines = [f"h {h.n} {h.m}"]
    lines += [" ".join(str(x) for x in (len(e), *e)) for e in h.hyperedges]
    return "\n".join(lines) + "\n"


def format_3dm(h: ThreeDMInstance) -> str:
    lines = [f"3dm {h.n} {len(h.triples)}"]
    lines += [f"{x} {y} {z}" for x, y, z in h.triples]
    return "\n".join(lines) + "\n"


def format_instance(inst: Instance) -> str:
    if isinstance(inst, BipartiteGraph):
        return format_bipartite(inst)
    if isinstance(inst, Hypergraph):
        return format_hypergraph(inst)
    return format_3dm(inst)


# -- certificates -----------------------------------------------------------

@dataclass
class Certificate:
    kind: str
    edges: list[tuple[int, int]]
    links: list[SLink]
    hyperedges: list[int]
    pairs: list[tuple[int, int, int]]

    def liang(self) -> LiangSolution:
        sol = LiangSolution(frozenset(self.edges), tuple(self.links))
        return LiangSolution(sol.m, sol.f, frozenset(t for _, t in sol.edges()))

    def two_matching(self) -> TwoMatching:
        return TwoMatching(frozenset(self.edges))

    def extended(self) -> ExtendedMatching:
        return ExtendedMatching(frozenset(self.hyperedges), frozenset(self.pairs))


def parse_certificate(text: str) -> Certificate:
    cert = Certificate("", [], [], [], [])
    for no, toks in _lines(text):
        word = toks[0]
        if word == "cert":
            if len(toks) != 2 or toks[1] not in ("liang", "vfree", "extmatch"):
                raise ParseError("header must be 'cert liang|vfree|extmatch'", no)
            cert.kind = toks[1]
        elif word == "edge" and len(toks) == 3:
            cert.edges.append(tuple(_ints(toks[1:], no)))
        elif word == "link" and len(toks) == 4:
            u, c, w = _ints(toks[1:], no)
            if u == w:
                raise ParseError("link endpoints must differ", no)
            cert.links.append(SLink(u, c, w))
        elif word == "hyperedge" and len(toks) == 2:
            cert.hyperedges.append(_ints(toks[1:], no)[0])
        elif word == "pair" and len(toks) == 5 and toks[3] == "via":
            u, v, w = _ints([toks[1], toks[2], toks[4]], no)
            if u == v:
                raise ParseError("pair repeats a node", no)
            cert.pairs.append((min(u, v), max(u, v), w))
        else:
            raise ParseError(f"unrecognised certificate line {' '.join(toks)!r}", no)
    if not cert.kind:
        cert.kind = "extmatch" if (cert.hyperedges or cert.pairs) else (
            "liang" if cert.links else "vfree")
    return cert


def format_liang(sol: LiangSolution) -> str:
    lines = ["cert liang"]
    lines += [f"edge {s} {t}" for s, t in sorted(sol.m)]
    lines += [f"link {l.u} {l.center} {l.w}" for l in sol.f]
    return "\n".join(lines) + "\n"


def format_two_matching(n: TwoMatching) -> str:
    lines = ["cert vfree"] + [f"edge {s} {t}" for s, t in sorted(n.edges)]
    return "\n".join(lines) + "\n"


def format_extended(em: ExtendedMatching) -> str:
    lines = ["cert extmatch"]
    lines += [f"hyperedge {i}" for i in sorted(em.hyperedges)]
    lines += [f"pair {u} {v} via {w}" for u, v, w in sorted(em.pairs)]
    return "\n".join(lines) + "\n"


def parse_required(text: str) -> frozenset[int]:
    out: set[int] = set()
    for no, toks in _lines(text):
        out.update(_ints(toks, no))
    return frozenset(out)


# -- gadget sidecar ---------------------------------------------------------

def format_gadget_map(gm: GadgetMap) -> str:
    """One line per node/edge: ``<index> <role> <owner>``.

    Indices are ``S<i>``, ``T<j>`` and ``E<k>`` (edge position in the
    bipartite file).
    """
    lines = [f"gadget {gm.n} {gm.m}"]
    lines += [f"S{i} {role} {owner}" for i, (role, owner) in enumerate(gm.s_roles)]
    lines += [f"T{j} {role} {owner}" for j, (role, owner) in enumerate(gm.t_roles)]
    lines += [f"E{k} {role} {owner}" for k, (role, owner) in enumerate(gm.edge_roles)]
    return "\n".join(lines) + "\n"


def parse_gadget_map(text: str) -> GadgetMap:
    lines = list(_lines(text))
    if not lines or lines[0][1][0] != "gadget" or len(lines[0][1]) != 3:
        raise ParseError("header must be 'gadget <n> <m>'", lines[0][0] if lines else None)
    n, m = _ints(lines[0][1][1:], lines[0][0])
    groups: dict[str, list[tuple[int, tuple[str, int]]]] = {"S": [], "T": [], "E": []}
    for no, toks in lines[1:]:
        if len(toks) != 3 or toks[0][:1] not in groups:
            raise ParseError("expected '<index> <role> <owner>'", no)
        idx = _ints([toks[0][1:]], no)[0]
        groups[toks[0][0]].append((idx, (toks[1], _ints([toks[2]], no)[0])))
    roles = {}
    for key, items in groups.items():
        items.sort()
        if [i for i, _ in items] != list(range(len(items))):
            raise ParseError(f"{key}-indices are not 0..{len(items) - 1}")
        roles[key] = tuple(r for _, r in items)
    return GadgetMap(n, m, roles["S"], roles["T"], roles["E"])


def read_text(path: str | Path) -> str:
    return Path(path).read_text(encoding="utf-8")


def write_text(path: str | Path, text: str) -> None:
    Path(path).write_text(text, encoding="utf-8")
