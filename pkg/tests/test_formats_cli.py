import pytest

from vfree import formats
from vfree.cli import main
from vfree.errors import ParseError
from vfree.generators import random_3dm, random_liang_graph, random_quasi_regular
from vfree.graph import BipartiteGraph, Hypergraph
from vfree.reduction import reduce_3dm


def test_bipartite_round_trip():
    g = random_liang_graph(6, 5, 3)
    assert formats.parse_instance(formats.format_bipartite(g)) == g


def test_hypergraph_round_trip():
    h = Hypergraph(4, ((0, 1, 2), (3,), (0, 1, 2)))
    assert formats.parse_instance(formats.format_hypergraph(h)) == h


def test_3dm_round_trip():
    h = random_3dm(3, 5)
    assert formats.parse_instance(formats.format_3dm(h)) == h


def test_comments_and_blank_lines():
    text = "# header\nb 1 1 1   # one edge\n\n0 0\n"
    assert formats.parse_instance(text) == BipartiteGraph(1, 1, ((0, 0),))


@pytest.mark.parametrize("text, line", [
    ("b 1 1 1\n0 5\n", 2),
    ("b 1 1 2\n0 0\n", 1),
    ("h 3 1\n3 0 1\n", 2),
    ("h 3 1\n2 0 0\n", 2),
    ("3dm 1 1\n0 0 x\n", 2),
    ("q 1\n", 1),
])
def test_parse_errors_carry_line_numbers(text, line):
    with pytest.raises(ParseError) as info:
        formats.parse_instance(text)
    assert info.value.line == line


def test_certificate_round_trips():
    text = "cert liang\nedge 0 1\nlink 1 0 2\n"
    cert = formats.parse_certificate(text)
    assert formats.format_liang(cert.liang()) == text
    text = "cert extmatch\nhyperedge 0\npair 1 3 via 2\n"
    cert = formats.parse_certificate(text)
    assert formats.format_extended(cert.extended()) == text
    with pytest.raises(ParseError):
        formats.parse_certificate("pair 1 1 via 0\n")


def test_gadget_sidecar_round_trip():
    _, gm = reduce_3dm(random_3dm(2, 1))
    assert formats.parse_gadget_map(formats.format_gadget_map(gm)) == gm


@pytest.fixture
def k34_file(tmp_path, k34):
    p = tmp_path / "k34.bip"
    p.write_text(formats.format_bipartite(k34))
    return p


def test_cli_solve_then_verify(tmp_path, k34_file):
    cert = tmp_path / "k34.cert"
    assert main(["solve", "--in", str(k34_file), "--out", str(cert), "--quiet"]) == 0
    report = tmp_path / "report"
    assert main(["verify", "--in", str(k34_file), "--in", str(cert), "--out", str(report)]) == 0
    assert report.read_text().strip() == "OK"


def test_cli_verify_rejects_bad_certificate(tmp_path, k34_file):
    cert = tmp_path / "bad.cert"
    cert.write_text("cert liang\nedge 0 0\nedge 0 1\n")
    assert main(["verify", "--in", str(k34_file), "--in", str(cert), "--quiet",
                 "--out", str(tmp_path / "r")]) == 1


def test_cli_oracle_no(tmp_path):
    p = tmp_path / "star.bip"
    p.write_text("b 1 2 2\n0 0\n0 1\n")
    assert main(["oracle", "--in", str(p), "--quiet", "--out", str(tmp_path / "o")]) == 1


def test_cli_oracle_budget(tmp_path):
    g, _ = reduce_3dm(random_3dm(2, 0))
    p = tmp_path / "g.bip"
    p.write_text(formats.format_bipartite(g))
    assert main(["oracle", "--in", str(p), "--quiet"]) == 3
    out = tmp_path / "w.cert"
    assert main(["oracle", "--in", str(p), "--budget-edges", "60", "--out", str(out), "--quiet"]) == 0
    assert main(["verify", "--in", str(p), "--in", str(out), "--required", "all",
                 "--out", str(tmp_path / "r"), "--quiet"]) == 0


def test_cli_reduce3dm_header(tmp_path):
    src = tmp_path / "one.3dm"
    src.write_text("3dm 1 3\n0 0 0\n0 0 0\n0 0 0\n")
    out = tmp_path / "one.bip"
    assert main(["reduce3dm", "--in", str(src), "--out", str(out), "--quiet"]) == 0
    assert out.read_text().splitlines()[0] == "b 8 12 23"
    roles = (tmp_path / "one.bip.roles").read_text().splitlines()
    assert roles[0] == "gadget 1 3" and len(roles) == 1 + 20 + 23


def test_cli_extmatch(tmp_path):
    h = random_quasi_regular(15, [(3, 2)], 4)
    p = tmp_path / "h.hyp"
    p.write_text(formats.format_hypergraph(h))
    cert = tmp_path / "h.cert"
    assert main(["extmatch", "--in", str(p), "--out", str(cert), "--quiet"]) == 0
    assert main(["verify", "--in", str(p), "--in", str(cert), "--required", "all",
                 "--out", str(tmp_path / "r"), "--quiet"]) == 0


def test_cli_input_errors(tmp_path):
    assert main(["solve", "--in", str(tmp_path / "missing"), "--quiet"]) == 2
    bad = tmp_path / "bad.bip"
    bad.write_text("b 1 1 1\n0 3\n")
    assert main(["solve", "--in", str(bad), "--quiet"]) == 2
    assert main(["nonsense"]) == 2


def test_gen_liang_bounds(tmp_path):
    out = tmp_path / "l.bip"
    assert main(["gen", "liang", "--s", "10", "--t", "10", "--seed", "7", "--out", str(out),
                 "--quiet"]) == 0
    g = formats.parse_instance(out.read_text())
    assert all(g.degree("S", s) <= 4 for s in range(10))
    assert all(g.degree("T", t) <= 3 for t in range(10))


def test_gen_hypergraph_quasi_degree(tmp_path):
    from vfree.extended import quasi_degrees
    out = tmp_path / "h.hyp"
    assert main(["gen", "hypergraph", "--n", "12", "--layers", "3:4", "--seed", "1",
                 "--out", str(out), "--quiet"]) == 0
    p = quasi_degrees(formats.parse_instance(out.read_text()))
    assert p.quasi_regular and p.delta == 8


def test_gen_3dm(tmp_path):
    out = tmp_path / "i.3dm"
    assert main(["gen", "3dm", "--n", "3", "--seed", "2", "--out", str(out), "--quiet"]) == 0
    h = formats.parse_instance(out.read_text())
    assert len(h.triples) == 9
    h.validate()


def test_gen_is_byte_identical(tmp_path):
    for kind, extra in [("liang", []), ("hypergraph", ["--layers", "3:2,1:1"]), ("3dm", ["--n", "3"])]:
        a, b = tmp_path / f"{kind}.a", tmp_path / f"{kind}.b"
        for path in (a, b):
            main(["gen", kind, "--seed", "9", *extra, "--out", str(path), "--quiet"])
        assert a.read_bytes() == b.read_bytes()


def test_gen_infeasible(tmp_path):
    assert main(["gen", "hypergraph", "--n", "4", "--layers", "3:1", "--quiet"]) == 2
