"""Command line entry point: ``gsf <subcommand> ...``, one JSON object per report."""
from __future__ import annotations

import argparse
import json
import os
import sys
import time
from typing import Sequence

from . import bench as bench_mod
from .common_neighbor import CnConfig, cn_space_record, run_common_neighbor
from .cvd import CvdParams, cvd_space_report, run_cvd
from .gadgets import GENERATORS, PAD_KIND, DisjInstance, PermInstance, pad_with_disjoint_obstructions
from .graph import GraphFormatError, format_graph, read_graph, read_graphs
from .oracle import OracleBudgetError, Property, oracle_decide
from .pipeline import PROBLEMS, family_for, run_problem
from .solvers import UnsupportedFamilyError, solve_cvd, solve_minor_deletion, solve_subgraph_deletion
from .streams import StreamError, format_stream, read_stream, validate


class CliError(Exception):
    pass


def _default_seed() -> int:
    raw = os.environ.get("GSF_SEED", "0")
    try:
        return int(raw)
    except ValueError:
        raise CliError(f"GSF_SEED must be an integer, got {raw!r}") from None


def _int_list(text: str) -> list[int]:
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _family(args) -> list | None:
    return read_graphs(args.family) if getattr(args, "family", None) else None


def _result_dict(res) -> dict:
    if hasattr(res, "to_dict"):
        return res.to_dict()
    return res.solution.to_dict() | {"sketch_edges": res.sketch.h.m, "ell": res.config.ell, "d": res.config.d}


# -- subcommands ------------------------------------------------------------------

def cmd_run(args) -> dict:
    stream = read_stream(args.stream)
    res = run_problem(stream, args.problem, args.K, args.k, args.seed, _family(args), args.alpha, args.beta)
    return _result_dict(res)


def cmd_cvd(args) -> dict:
    stream = read_stream(args.stream)
    params = CvdParams(stream.n, args.K, args.k, args.alpha, args.beta, args.seed)
    out = run_cvd(stream, params).to_dict()
    out["closed_form_words"] = cvd_space_report(params)
    return out


def cmd_cn(args) -> dict:
    stream = read_stream(args.stream)
    cfg = CnConfig(args.K, args.d, args.ell)
    sk = run_common_neighbor(stream, cfg)
    text = format_graph(sk.h)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    return {
        "graph": text,
        "matching": sorted([u + 1, v + 1] for u, v in sk.matching.pairs),
        "space": cn_space_record(sk, cfg),
    }


def cmd_solve(args) -> dict:
    g = read_graph(args.graph)
    if args.problem == "cvd":
        return solve_cvd(g, args.k).to_dict()
    fam = family_for(args.problem, _family(args))
    solve = solve_minor_deletion if args.problem == "minor" else solve_subgraph_deletion
    return solve(g, fam, args.k).to_dict()


def _oracle_property(args) -> Property:
    if args.problem == "cvd":
        return Property.cluster()
    fam = family_for(args.problem, _family(args))
    return Property.minor_free(fam) if args.problem == "minor" else Property.subgraph_free(fam)


def cmd_oracle(args) -> dict:
    g = read_graph(args.graph)
    return oracle_decide(g, args.k, _oracle_property(args)).to_dict()


def cmd_gen(args) -> dict:
    if args.gadget.startswith("perm"):
        if args.pi is None or args.j is None:
            raise CliError("perm gadgets need --pi and --j")
        pi = _int_list(args.pi)
        inst = PermInstance(args.n if args.n is not None else len(pi), tuple(pi), args.j)
    else:
        if args.x is None or args.y is None:
            raise CliError("disj gadgets need --x and --y")
        inst = DisjInstance.from_strings(args.x, args.y)
        if args.n is not None and args.n != inst.n:
            raise CliError(f"--n {args.n} does not match the length of --x/--y")
    stream = GENERATORS[args.gadget](inst)
    stream = pad_with_disjoint_obstructions(stream, args.pad_k, PAD_KIND[args.gadget])
    header = "".join(f"# {i + 1} {name}\n" for i, name in enumerate(stream.labels or ()))
    text = header + format_stream(stream)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return {"gadget": args.gadget, "n": stream.n, "events": len(stream), "out": args.out}


def cmd_bench(args) -> list[dict]:
    if args.kind == "cvd":
        res = bench_mod.cvd_sweep(args.n, args.Ks, args.trials, args.seed, args.alpha, args.beta)
    else:
        res = bench_mod.cn_sweep(args.Ks, args.ms, args.d, args.trials, args.seed, args.shuffle)
    return [dict(r, cell=i) for i, r in enumerate(res.reports)] + [{"summary": res.summary}]


def cmd_validate(args) -> dict:
    if args.stream:
        validate(read_stream(args.stream))
        return {"valid": True, "kind": "stream"}
    read_graph(args.graph)
    return {"valid": True, "kind": "graph"}


# -- parser -------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="gsf", description="Parameterized streaming graph algorithms.")
    p.add_argument("--pretty", dest="pretty_top", action="store_true",
                   help="human-readable output instead of JSON lines")
    sub = p.add_subparsers(dest="subcommand", required=True)

    def seeded(sp):
        sp.add_argument("--seed", type=int, default=None, help="random seed (default: $GSF_SEED or 0)")
        sp.add_argument("--pretty", action="store_true", help="human-readable output")

    def grid(sp):
        sp.add_argument("--alpha", type=int, default=16)
        sp.add_argument("--beta", type=int, default=10)

    sp = sub.add_parser("run", help="sketch a stream, then solve on the sketch")
    sp.add_argument("--problem", choices=PROBLEMS, required=True)
    sp.add_argument("--stream", required=True)
    sp.add_argument("--K", type=int, required=True)
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--family", help="graph file with one or more pattern blocks")
    seeded(sp)
    grid(sp)
    sp.set_defaults(func=cmd_run)

    sp = sub.add_parser("cvd", help="cluster vertex deletion over an edge stream")
    sp.add_argument("--stream", required=True)
    sp.add_argument("--K", type=int, required=True)
    sp.add_argument("--k", type=int, required=True)
    seeded(sp)
    grid(sp)
    sp.set_defaults(func=cmd_cvd)

    sp = sub.add_parser("cn", help="common-neighbour sketch of an adjacency-list stream")
    sp.add_argument("--stream", required=True)
    sp.add_argument("--K", type=int, required=True)
    sp.add_argument("--d", type=int, required=True)
    sp.add_argument("--ell", type=int, required=True)
    sp.add_argument("--out", help="write the sketch graph here")
    seeded(sp)
    sp.set_defaults(func=cmd_cn)

    sp = sub.add_parser("solve", help="offline solver on a graph file")
    sp.add_argument("--problem", choices=PROBLEMS, required=True)
    sp.add_argument("--graph", required=True)
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--family")
    seeded(sp)
    sp.set_defaults(func=cmd_solve)

    sp = sub.add_parser("oracle", help="exhaustive deletion-set search")
    sp.add_argument("--problem", choices=PROBLEMS, required=True)
    sp.add_argument("--graph", required=True)
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--family")
    seeded(sp)
    sp.set_defaults(func=cmd_oracle)

    sp = sub.add_parser("gen", help="emit a reduction gadget as a stream file")
    sp.add_argument("--gadget", choices=sorted(GENERATORS), required=True)
    sp.add_argument("--n", type=int)
    sp.add_argument("--pi", help="permutation as comma-separated 1-based values")
    sp.add_argument("--j", type=int)
    sp.add_argument("--x", help="bit string")
    sp.add_argument("--y", help="bit string")
    sp.add_argument("--pad-k", type=int, default=0)
    sp.add_argument("--out")
    seeded(sp)
    sp.set_defaults(func=cmd_gen)

    sp = sub.add_parser("bench", help="space-scaling sweep")
    sp.add_argument("--kind", choices=("cvd", "cn"), required=True)
    sp.add_argument("--n", type=int, default=64, help="vertex count for the cvd sweep")
    sp.add_argument("--Ks", type=_int_list, default=[2, 4, 8])
    sp.add_argument("--ms", type=_int_list, default=[100], help="bipartite side sizes for the cn sweep")
    sp.add_argument("--d", type=int, default=2)
    sp.add_argument("--trials", type=int, default=1)
    sp.add_argument("--shuffle", action="store_true", help="random exposure orders in the cn sweep")
    seeded(sp)
    grid(sp)
    sp.set_defaults(func=cmd_bench)

    sp = sub.add_parser("validate", help="check a stream or graph file")
    group = sp.add_mutually_exclusive_group(required=True)
    group.add_argument("--stream")
    group.add_argument("--graph")
    seeded(sp)
    sp.set_defaults(func=cmd_validate)
    return p


def _params(args) -> dict:
    skip = {"func", "pretty", "pretty_top", "subcommand"}
    return {k: v for k, v in vars(args).items() if k not in skip}


def _emit(record: dict, pretty: bool, out) -> None:
    if not pretty:
        out.write(json.dumps(record, sort_keys=True) + "\n")
        return
    result = record.get("result", {})
    out.write(f"[{record['subcommand']}] seed={record['seed']} wall_ms={record['wall_ms']}\n")
    for key in sorted(result):
        val = result[key]
        if isinstance(val, str) and "\n" in val:
            out.write(f"  {key}:\n" + "".join(f"    {line}\n" for line in val.splitlines()))
        else:
            out.write(f"  {key:<22} {val}\n")


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    # gen writes the stream itself to stdout unless --out is given
    out = sys.stderr if args.subcommand == "gen" and not args.out else sys.stdout
    try:
        if args.seed is None:
            args.seed = _default_seed()
        t0 = time.perf_counter()
        result = args.func(args)
        wall = round(1000 * (time.perf_counter() - t0), 3)
    except (CliError, StreamError, GraphFormatError, OracleBudgetError,
            UnsupportedFamilyError, ValueError, OSError) as exc:
        sys.stderr.write(json.dumps({"subcommand": args.subcommand, "error": str(exc)}) + "\n")
        return 1
    results = result if isinstance(result, list) else [result]
    for r in results:
        _emit({
            "subcommand": args.subcommand,
            "params": _params(args),
            "result": r,
            "wall_ms": wall,
            "seed": args.seed,
        }, args.pretty or args.pretty_top, out)
    return 0


if __name__ == "__main__":
    sys.exit(main())
