"""``pnsdag`` command line.

Every report is one line of ``key=value`` pairs; infinity prints as ``inf``.
Exit status: 0 success, 1 domain error, 2 usage error. ``-`` names stdin or
stdout wherever a file is expected.
"""

from __future__ import annotations

import argparse
import sys

from . import generators
from .errors import PnsError
from .graph import Status, normalize_mixed, parse_graph, revert, serialize_graph
from .oracle import DEFAULT_LEAF_BUDGET, Mode, available_backends, exact_number
from .pns import SearchMode, graph_as_problem, materialize, run
from .recursive import eval_pd, eval_phi_delta, format_pn
from .sat import parse_dimacs, reduce_cnf, reduce_cnf_dual, sat_brute_force, verify_reduction


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _write(path: str, text: str) -> None:
    if path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


def _load_graph(path):
    return parse_graph(_read(path))


_BOTTOM = {"open": Status.OPEN_LEAF, "proven": Status.PROVEN}


def _bool(v: bool) -> str:
    return "true" if v else "false"


# -- gen ----------------------------------------------------------------------

def _cmd_gen(args):
    what = args.what
    if what == "fixture":
        g = generators.fixture(args.name)
    elif what == "lattice":
        g = generators.lattice(args.layers, _BOTTOM[args.bottom])
    elif what == "comb-lattice":
        g = generators.comb_lattice(args.layers, _BOTTOM[args.bottom])
    elif what == "nim":
        problem = generators.nim_problem(args.piles)
        g = materialize(problem, problem.node_id)
    elif what == "random-dag":
        g = generators.random_dag(args.seed, args.max_nodes, args.leaf_fraction, args.kind_mix,
                                  args.terminal_fraction)
    elif what == "random-tree":
        g = generators.random_tree(args.seed, args.max_nodes, args.kind_mix, args.terminal_fraction)
    else:
        f = generators.random_cnf(args.seed, args.vars, args.clauses, args.clause_len)
        _write(args.output, f.to_dimacs())
        return
    _write(args.output, serialize_graph(g))


# -- graph commands -----------------------------------------------------------

def _cmd_eval(args):
    g = normalize_mixed(_load_graph(args.graph))
    node = args.node or g.root
    if node not in g:
        raise PnsError(f"unknown node {node}")
    if args.how == "recursive":
        if args.phi_delta:
            v = eval_phi_delta(g)[node]
            print(f"phi={format_pn(v.phi)} delta={format_pn(v.delta)}")
        else:
            v = eval_pd(g)[node]
            print(f"p={format_pn(v.p)} d={format_pn(v.d)}")
        return
    mode = Mode(args.mode)
    value, witness = exact_number(g, node, mode, args.budget, args.backend)
    key = "p" if mode is Mode.PROOF else "d"
    line = f"{key}={format_pn(value)}"
    if args.witness:
        line += " witness=" + ("none" if witness is None else ",".join(witness.sorted()))
    print(line)


def _cmd_normalize(args):
    _write(args.output, serialize_graph(normalize_mixed(_load_graph(args.graph))))


def _cmd_revert(args):
    _write(args.output, serialize_graph(revert(normalize_mixed(_load_graph(args.graph)))))


def _cmd_topo(args):
    print("order=" + ",".join(_load_graph(args.graph).topo_order()))


def _parse_resolution(parser, items):
    out = {}
    for item in items or []:
        leaf, sep, verdict = item.partition("=")
        if not sep or verdict not in ("proven", "disproven"):
            parser.error(f"--resolve: expected LEAF=proven|disproven, got {item!r}")
        out[leaf] = verdict
    return out


def _cmd_pns(args, parser):
    resolution = _parse_resolution(parser, args.resolve)
    g = normalize_mixed(_load_graph(args.graph))
    outcome = run(graph_as_problem(g, resolution), SearchMode(args.mode), args.max_expansions)
    print(
        f"verdict={outcome.verdict.value} expansions={outcome.expansions} "
        f"stored_nodes={outcome.stored_nodes}"
    )


# -- CNF commands -------------------------------------------------------------

def _cmd_reduce(args):
    f = parse_dimacs(_read(args.cnf))
    g = reduce_cnf_dual(f) if args.dual else reduce_cnf(f)
    _write(args.output, serialize_graph(g))


def _cmd_sat(args):
    sat, assignment = sat_brute_force(parse_dimacs(_read(args.cnf)))
    if sat:
        lits = ",".join(str(j if v else -j) for j, v in enumerate(assignment, 1))
        print(f"sat=true assignment={lits}")
    else:
        print("sat=false")


def _cmd_verify(args):
    f = parse_dimacs(_read(args.cnf))
    r = verify_reduction(f, args.budget, args.backend)
    witness = "none" if r.witness is None else ",".join(r.witness.sorted())
    print(
        f"sat={_bool(r.satisfiable)} exact_p={format_pn(r.exact_p)} n={r.num_vars} "
        f"consistent={_bool(r.consistent)} witness={witness}"
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="pnsdag", description="Proof-number search on AND/OR DAGs")
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("gen", help="write a generated graph (or CNF)")
    gsub = gen.add_subparsers(dest="what", required=True)

    def out_arg(p):
        p.add_argument("-o", "--output", default="-", help="output path (default stdout)")

    p = gsub.add_parser("fixture")
    p.add_argument("name", choices=generators.FIXTURE_NAMES)
    out_arg(p)
    for name in ("lattice", "comb-lattice"):
        p = gsub.add_parser(name)
        p.add_argument("--layers", type=int, required=True)
        p.add_argument("--bottom", choices=["open", "proven"], default="open")
        out_arg(p)
    p = gsub.add_parser("nim")
    p.add_argument("piles", type=int, nargs="+")
    out_arg(p)
    for name in ("random-dag", "random-tree"):
        p = gsub.add_parser(name)
        p.add_argument("--seed", type=int, required=True)
        p.add_argument("--max-nodes", type=int, default=14)
        p.add_argument("--kind-mix", type=float, default=0.5)
        p.add_argument("--terminal-fraction", type=float, default=0.15)
        if name == "random-dag":
            p.add_argument("--leaf-fraction", type=float, default=0.4)
        out_arg(p)
    p = gsub.add_parser("random-cnf")
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--vars", type=int, required=True)
    p.add_argument("--clauses", type=int, required=True)
    p.add_argument("--clause-len", type=int, default=3)
    out_arg(p)

    ev = sub.add_parser("eval", help="proof/disproof numbers of a graph")
    esub = ev.add_subparsers(dest="how", required=True)
    p = esub.add_parser("recursive")
    p.add_argument("graph")
    p.add_argument("--node")
    p.add_argument("--phi-delta", action="store_true")
    p = esub.add_parser("exact")
    p.add_argument("graph")
    p.add_argument("--node")
    p.add_argument("--mode", choices=["proof", "disproof"], default="proof")
    p.add_argument("--budget", type=int, default=DEFAULT_LEAF_BUDGET)
    p.add_argument("--witness", action="store_true")
    p.add_argument("--backend", choices=available_backends())

    for name, help_ in (("normalize", "split MIX nodes"), ("revert", "swap AND/OR kinds")):
        p = sub.add_parser(name, help=help_)
        p.add_argument("graph")
        out_arg(p)
    p = sub.add_parser("topo", help="print a topological order (children first)")
    p.add_argument("graph")

    p = sub.add_parser("reduce", help="CNF -> AND/OR DAG")
    p.add_argument("cnf")
    p.add_argument("--dual", action="store_true")
    out_arg(p)
    p = sub.add_parser("sat", help="brute-force satisfiability")
    p.add_argument("cnf")
    p = sub.add_parser("verify-reduction", help="compare exact proof number with brute-force SAT")
    p.add_argument("cnf")
    p.add_argument("--budget", type=int, default=DEFAULT_LEAF_BUDGET)
    p.add_argument("--backend", choices=available_backends())

    p = sub.add_parser("pns", help="run proof-number search on a stored graph")
    p.add_argument("graph")
    p.add_argument("--resolve", action="append", metavar="LEAF=proven|disproven")
    p.add_argument("--mode", choices=["tree", "dag"], default="dag")
    p.add_argument("--max-expansions", type=int, default=1_000_000)
    return parser


_HANDLERS = {
    "gen": _cmd_gen,
    "eval": _cmd_eval,
    "normalize": _cmd_normalize,
    "revert": _cmd_revert,
    "topo": _cmd_topo,
    "reduce": _cmd_reduce,
    "sat": _cmd_sat,
    "verify-reduction": _cmd_verify,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "pns" and args.max_expansions < 1:
        parser.error("--max-expansions: must be at least 1")
    for flag in ("budget", "layers"):
        if getattr(args, flag, 1) is not None and getattr(args, flag, 1) < 0:
            parser.error(f"--{flag}: must be non-negative")
    try:
        if args.command == "pns":
            _cmd_pns(args, parser)
        else:
            _HANDLERS[args.command](args)
    except (PnsError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
