"""Command-line front end.

Exit status: 0 success (or YES with witness), 1 verified NO / failed
verification, 2 input error, 3 oracle budget exhausted.
"""

from __future__ import annotations

import argparse
import logging
import sys
from dataclasses import dataclass, field
from pathlib import Path

from . import formats
from .errors import BudgetExceeded, InfeasibleParams, ParseError, PreconditionViolated
from .extended import (extended_matching_covering_max_quasidegree, perfect_extended_matching,
                       quasi_degrees, verify_extended_matching)
from .generators import random_3dm, random_bounded_hypergraph, random_liang_graph, random_quasi_regular
from .graph import BipartiteGraph, Hypergraph
from .liang import required_nodes, solve_liang, verify_liang
from .oracle import OracleBudget, oracle_extended_matching, oracle_vfree_cover
from .reduction import ThreeDMInstance, reduce_3dm

log = logging.getLogger("vfree")

EXIT_OK, EXIT_NO, EXIT_INPUT, EXIT_BUDGET = 0, 1, 2, 3


@dataclass
class RunConfig:
    subcommand: str
    inputs: list[Path] = field(default_factory=list)
    output: Path | None = None
    seed: int = 0
    required: str | None = None
    budget: OracleBudget = field(default_factory=OracleBudget)
    quiet: bool = False
    options: dict = field(default_factory=dict)


class InputError(Exception):
    pass


def _emit(cfg: RunConfig, text: str) -> None:
    if cfg.output is None:
        sys.stdout.write(text)
    else:
        formats.write_text(cfg.output, text)
        log.info("wrote %s", cfg.output)


def _load(path: Path, expect: type | tuple[type, ...]):
    inst = formats.parse_instance(formats.read_text(path))
    if not isinstance(inst, expect):
        raise InputError(f"{path}: wrong instance type {type(inst).__name__}")
    return inst


def _required(cfg: RunConfig, default):
    if cfg.required is None:
        return default
    if cfg.required == "all":
        return None
    return formats.parse_required(formats.read_text(cfg.required))


def _cmd_solve(cfg: RunConfig) -> int:
    g = _load(cfg.inputs[0], BipartiteGraph)
    sol = solve_liang(g)
    log.info("matching %d edges, %d links, %d T-nodes covered",
             len(sol.m), len(sol.f), len(sol.covered))
    _emit(cfg, formats.format_liang(sol))
    return EXIT_OK


def _cmd_extmatch(cfg: RunConfig) -> int:
    h = _load(cfg.inputs[0], Hypergraph)
    mode = cfg.options.get("mode") or ("perfect" if quasi_degrees(h).quasi_regular else "max")
    em = perfect_extended_matching(h) if mode == "perfect" else \
        extended_matching_covering_max_quasidegree(h)
    log.info("%s extended matching: %d hyperedges, %d pairs", mode, len(em.hyperedges), len(em.pairs))
    _emit(cfg, formats.format_extended(em))
    return EXIT_OK


def _cmd_reduce3dm(cfg: RunConfig) -> int:
    h = _load(cfg.inputs[0], ThreeDMInstance)
    g, gm = reduce_3dm(h)
    _emit(cfg, formats.format_bipartite(g))
    sidecar = cfg.options.get("sidecar")
    if sidecar is None and cfg.output is not None:
        sidecar = cfg.output.with_name(cfg.output.name + ".roles")
    if sidecar is not None:
        formats.write_text(sidecar, formats.format_gadget_map(gm))
    return EXIT_OK


def _cmd_oracle(cfg: RunConfig) -> int:
    inst = _load(cfg.inputs[0], (BipartiteGraph, Hypergraph))
    if isinstance(inst, BipartiteGraph):
        req = _required(cfg, None)
        req = range(inst.t_count) if req is None else req
        witness = oracle_vfree_cover(inst, req, cfg.budget)
        text = None if witness is None else formats.format_two_matching(witness)
    else:
        req = _required(cfg, None)
        req = range(inst.n) if req is None else req
        witness = oracle_extended_matching(inst, req, cfg.budget)
        text = None if witness is None else formats.format_extended(witness)
    if text is None:
        log.info("NO")
        _emit(cfg, "# NO\n")
        return EXIT_NO
    log.info("YES")
    _emit(cfg, text)
    return EXIT_OK


def _cmd_verify(cfg: RunConfig) -> int:
    if len(cfg.inputs) != 2:
        raise InputError("verify needs --in <instance> --in <certificate>")
    inst = _load(cfg.inputs[0], (BipartiteGraph, Hypergraph))
    cert = formats.parse_certificate(formats.read_text(cfg.inputs[1]))
    if cert.kind == "liang":
        if not isinstance(inst, BipartiteGraph):
            raise InputError("liang certificate needs a bipartite instance")
        req = _required(cfg, required_nodes(inst))
        rep = verify_liang(inst, cert.liang(), range(inst.t_count) if req is None else req)
    elif cert.kind == "vfree":
        if not isinstance(inst, BipartiteGraph):
            raise InputError("vfree certificate needs a bipartite instance")
        req = _required(cfg, None)
        req = range(inst.t_count) if req is None else req
        rep = _verify_vfree(inst, cert, req)
    else:
        if not isinstance(inst, Hypergraph):
            raise InputError("extmatch certificate needs a hypergraph instance")
        req = _required(cfg, quasi_degrees(inst).maximal_nodes())
        rep = verify_extended_matching(inst, cert.extended(), range(inst.n) if req is None else req)
    _emit(cfg, str(rep) + "\n")
    return EXIT_OK if rep.ok else EXIT_NO


def _verify_vfree(g: BipartiteGraph, cert, required):
    from .extended import Report
    rep = Report()
    missing = [e for e in cert.edges if not g.has_edge(*e)]
    if missing:
        rep.violations.append(f"edges not in graph: {missing}")
    try:
        n = cert.two_matching()
    except ValueError as exc:
        rep.violations.append(str(exc))
        return rep
    for c in n.vpaths():
        rep.violations.append(f"V-path component {c.describe()}")
    cov = {t for _, t in n.edges}
    rep.violations += [f"required node t{t} not covered" for t in sorted(set(required) - cov)]
    return rep


def _cmd_gen(cfg: RunConfig) -> int:
    o = cfg.options
    kind = o["kind"]
    if kind == "liang":
        inst = random_liang_graph(o["s"], o["t"], cfg.seed)
    elif kind == "hypergraph":
        if o.get("layers"):
            layers = [tuple(int(x) for x in part.split(":")) for part in o["layers"].split(",")]
            inst = random_quasi_regular(o["n"], layers, cfg.seed)
        else:
            inst = random_bounded_hypergraph(o["n"], o["m"], cfg.seed, o["k"], o["max_degree"])
    else:
        inst = random_3dm(o["n"], cfg.seed, o.get("swaps", 0))
    _emit(cfg, formats.format_instance(inst))
    return EXIT_OK


COMMANDS = {
    "solve": _cmd_solve,
    "extmatch": _cmd_extmatch,
    "reduce3dm": _cmd_reduce3dm,
    "oracle": _cmd_oracle,
    "verify": _cmd_verify,
    "gen": _cmd_gen,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--in", dest="inputs", action="append", type=Path, default=[],
                        help="input file (verify takes instance then certificate)")
    common.add_argument("--out", type=Path, help="output file (default stdout)")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--required", help="file of required node ids, or 'all'")
    common.add_argument("--budget-edges", type=int, default=OracleBudget.max_edges)
    common.add_argument("--budget-nodes", type=int, default=OracleBudget.max_nodes)
    common.add_argument("--time-limit", type=float, default=OracleBudget.time_limit)
    common.add_argument("--quiet", action="store_true")

    parser = argparse.ArgumentParser(prog="vfree", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="subcommand", required=True)
    sub.add_parser("solve", parents=[common], help="matching + S-links for a bipartite graph")
    p = sub.add_parser("extmatch", parents=[common], help="extended matching of a hypergraph")
    p.add_argument("--mode", choices=("perfect", "max"))
    p = sub.add_parser("reduce3dm", parents=[common], help="3DM instance to gadget graph")
    p.add_argument("--sidecar", type=Path, help="gadget role file (default <out>.roles)")
    sub.add_parser("oracle", parents=[common], help="exhaustive decision with witness")
    sub.add_parser("verify", parents=[common], help="check a certificate against an instance")
    p = sub.add_parser("gen", parents=[common], help="random instance")
    p.add_argument("kind", choices=("liang", "hypergraph", "3dm"))
    p.add_argument("--s", type=int, default=10, help="liang: |S|")
    p.add_argument("--t", type=int, default=10, help="liang: |T|")
    p.add_argument("--n", type=int, default=12, help="hypergraph nodes / 3dm part size")
    p.add_argument("--layers", help="hypergraph: quasi-regular layers 'k:r,k:r'")
    p.add_argument("--m", type=int, default=8, help="hypergraph: hyperedge count (no --layers)")
    p.add_argument("--k", type=int, default=3, help="hypergraph: uniformity (no --layers)")
    p.add_argument("--max-degree", type=int, default=4)
    p.add_argument("--swaps", type=int, default=0, help="3dm: coordinate swaps")
    return parser


def config_from_args(argv: list[str] | None = None) -> RunConfig:
    args = build_parser().parse_args(argv)
    opts = {k: v for k, v in vars(args).items()
            if k not in ("subcommand", "inputs", "out", "seed", "required", "budget_edges",
                         "budget_nodes", "time_limit", "quiet")}
    return RunConfig(args.subcommand, args.inputs, args.out, args.seed, args.required,
                     OracleBudget(args.budget_edges, args.budget_nodes, args.time_limit),
                     args.quiet, opts)


def run(cfg: RunConfig) -> int:
    needs_input = cfg.subcommand != "gen"
    try:
        if needs_input:
            if not cfg.inputs:
                raise InputError("--in is required")
            for p in cfg.inputs:
                if not p.is_file():
                    raise InputError(f"no such file: {p}")
        if cfg.required not in (None, "all") and not Path(cfg.required).is_file():
            raise InputError(f"no such file: {cfg.required}")
        return COMMANDS[cfg.subcommand](cfg)
    except (ParseError, InputError, PreconditionViolated, InfeasibleParams, ValueError) as exc:
        log.error("%s", exc)
        return EXIT_INPUT
    except BudgetExceeded as exc:
        log.error("budget exhausted: %s", exc)
        return EXIT_BUDGET


def main(argv: list[str] | None = None) -> int:
    try:
        cfg = config_from_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    logging.basicConfig(level=logging.WARNING if cfg.quiet else logging.INFO,
                        format="%(levelname)s: %(message)s", stream=sys.stderr)
    return run(cfg)


if __name__ == "__main__":
    sys.exit(main())
