"""``cmlkit`` command line.

Vertex ids in files and in output are 1-indexed; internally they are 0-based.
Exit codes: 0 ok, 1 negative verdict, 2 input error, 3 cap exceeded,
4 internal property failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import errors
from .contraction import star_sequence, stretch, verify_witness
from .fileio import (
    format_cseq,
    format_dimacs,
    format_order,
    format_partition,
    load_graph,
    load_sequence,
    parse_order,
    parse_pairs,
    parse_partition,
    parse_weights,
    read_text,
)
from .generators import FAMILIES, build_family, mixed_grid
from .graph import component_max_leaf
from .idp import IdpInstance, solve_idp
from .oracles import oracle_idp, oracle_max_leaf, oracle_sigma
from .separator import balanced_separator
from .sigma import SigmaSpec, is_sigma_set, solve_sigma

EXIT_OK, EXIT_NEGATIVE, EXIT_INPUT, EXIT_CAP, EXIT_INTERNAL = range(5)

INPUT_ERRORS = (
    errors.ParseError,
    errors.BadMerge,
    errors.InvalidWitness,
    errors.InvalidInstance,
    errors.InvalidPartition,
    errors.EmptyGraph,
    errors.DisconnectedInput,
    ValueError,
)
CAP_ERRORS = (errors.EnumerationCapExceeded, errors.CapExceeded)


def _one(vs):
    return [v + 1 for v in sorted(vs)]


def _emit(args, payload: dict, text: str) -> None:
    if getattr(args, "json", False):
        print(json.dumps(payload, sort_keys=True))
    else:
        print(text)


def _paths_text(paths) -> str:
    if paths is None:
        return "infeasible"
    return "\n".join(["feasible", *(" ".join(map(str, p)) for p in paths)])


def _parse_param(tok: str):
    for cast in (int, float):
        try:
            return cast(tok)
        except ValueError:
            pass
    return tok


def cmd_gen(args) -> int:
    params = {}
    rest = list(args.params)
    while rest:
        key = rest.pop(0)
        if not key.startswith("--") or not rest:
            raise ValueError(f"family parameters must be '--name value' pairs, got {key!r}")
        params[key[2:].replace("-", "_")] = _parse_param(rest.pop(0))
    if args.seed is not None:
        params["seed"] = args.seed
    if args.family == "mixed-grid":
        og, part = mixed_grid(params["p"], params["q"], params.get("seed", 0))
        g, seq = og.graph, None
        if args.order:
            Path(args.order).write_text(format_order(og))
        if args.partition:
            Path(args.partition).write_text(format_partition(part))
    else:
        g, seq = build_family(args.family, **params)
    if args.seq and seq is None:
        raise ValueError(f"family {args.family!r} has no witness sequence")
    desc = " ".join(f"{k}={v}" for k, v in sorted(params.items()))
    Path(args.out).write_text(format_dimacs(g, [f"{args.family} {desc}".strip()]))
    if args.seq:
        Path(args.seq).write_text(format_cseq(seq, [f"witness for {args.family} {desc}".strip()]))
    print(f"wrote {args.out}: n={g.n} m={g.m}" + (f"; {args.seq}" if args.seq else ""))
    return EXIT_OK


def cmd_verify(args) -> int:
    g = load_graph(args.graph)
    seq = load_sequence(args.seq)
    rep = verify_witness(g, seq, cap=args.cap)
    lines = [f"witnessed {rep.witnessed}"]
    lines += [f"P_{i}: cml {v} red-degree {d}" for i, (v, d) in enumerate(zip(rep.per_step, rep.red_max_degree), 1)]
    _emit(args, {"witnessed": rep.witnessed, "per_step": list(rep.per_step)}, "\n".join(lines))
    return EXIT_OK


def cmd_cml(args) -> int:
    g = load_graph(args.graph)
    val = component_max_leaf(g, cap=args.cap)
    _emit(args, {"size": val}, str(val))
    return EXIT_OK


def _graph_and_seq(args):
    g = load_graph(args.graph)
    seq = load_sequence(args.seq) if args.seq else star_sequence(g)
    return g, seq


def cmd_solve_sigma(args) -> int:
    g, seq = _graph_and_seq(args)
    spec = SigmaSpec.parse(args.sigma)
    res = solve_sigma(g, seq, spec)
    if args.certify:
        if not is_sigma_set(g, spec, res.vertices):
            raise errors.InternalValidityFailure("returned set violates sigma")
        if g.n <= args.oracle_cap:
            size, _ = oracle_sigma(g, spec.sigma, cap=args.oracle_cap)
            if size != res.size:
                raise errors.InternalValidityFailure(f"oracle size {size} differs from {res.size}")
    payload = {"size": res.size, "set": _one(res.vertices), "witnessed": res.stats.t}
    _emit(args, payload, f"size {res.size}\nset {' '.join(map(str, _one(res.vertices)))}")
    return EXIT_OK


def cmd_solve_idp(args) -> int:
    g, seq = _graph_and_seq(args)
    inst = IdpInstance(g, parse_pairs(read_text(args.pairs), g.n))
    res = solve_idp(inst, seq)
    paths = [[v + 1 for v in p] for p in res.paths] if res.feasible else None
    text = _paths_text(paths)
    _emit(args, {"feasible": res.feasible, "paths": paths}, text)
    return EXIT_OK if res.feasible else EXIT_NEGATIVE


def cmd_separator(args) -> int:
    g, seq = _graph_and_seq(args)
    if args.weights:
        g = g.with_weights(parse_weights(read_text(args.weights), g.n))
    res = balanced_separator(g, seq, args.k)
    payload = {"separator": _one(res.S), "dominators": _one(res.D)}
    _emit(
        args,
        payload,
        f"separator {' '.join(map(str, _one(res.S)))}\ndominators {' '.join(map(str, _one(res.D)))}",
    )
    return EXIT_OK


def cmd_stretch(args) -> int:
    g = load_graph(args.graph)
    og = parse_order(read_text(args.order), g)
    part = parse_partition(read_text(args.partition), g.n)
    val = stretch(og, part)
    _emit(args, {"size": val}, str(val))
    return EXIT_OK


def cmd_oracle(args) -> int:
    g = load_graph(args.graph)
    if args.problem == "sigma":
        if not args.sigma:
            raise ValueError("oracle sigma needs --sigma")
        size, vs = oracle_sigma(g, SigmaSpec.parse(args.sigma).sigma)
        _emit(args, {"size": size, "set": _one(vs)}, f"size {size}\nset {' '.join(map(str, _one(vs)))}")
        return EXIT_OK
    if args.problem == "idp":
        if not args.pairs:
            raise ValueError("oracle idp needs --pairs")
        paths = oracle_idp(g, parse_pairs(read_text(args.pairs), g.n))
        out = [[v + 1 for v in p] for p in paths] if paths is not None else None
        text = _paths_text(out)
        _emit(args, {"feasible": out is not None, "paths": out}, text)
        return EXIT_OK if out is not None else EXIT_NEGATIVE
    val = oracle_max_leaf(g)
    _emit(args, {"size": val}, str(val))
    return EXIT_OK


def cmd_report(args) -> int:
    from .report import run_sweep

    csv_path, figs = run_sweep(args.sweep, args.out, jobs=args.jobs)
    print(f"wrote {csv_path}")
    for f in figs:
        print(f"wrote {f}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="cmlkit", description="Witness sequences and solvers for bounded reduced cml.")
    sub = p.add_subparsers(dest="command", required=True)

    def graph_opts(sp, seq=True, seq_required=False):
        sp.add_argument("-g", "--graph", required=True, help="DIMACS graph file")
        if seq:
            sp.add_argument("-s", "--seq", required=seq_required, help="cseq witness (default: star sequence)")
        sp.add_argument("--json", action="store_true", help="machine-readable output")

    sp = sub.add_parser("gen", help="generate a graph family", allow_abbrev=False)
    sp.add_argument("family", choices=sorted([*FAMILIES, "mixed-grid"]))
    sp.add_argument("-o", "--out", required=True)
    sp.add_argument("-s", "--seq", help="also write the witness sequence")
    sp.add_argument("--seed", type=int)
    sp.add_argument("--order", help="mixed-grid: write the canonical ordering")
    sp.add_argument("--partition", help="mixed-grid: write the column partition")
    sp.set_defaults(func=cmd_gen)

    sp = sub.add_parser("verify", help="replay a sequence and report its red-graph cml")
    graph_opts(sp, seq_required=True)
    sp.add_argument("--cap", type=int, default=10**7)
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("cml", help="exact component max-leaf")
    graph_opts(sp, seq=False)
    sp.add_argument("--cap", type=int, default=10**7)
    sp.set_defaults(func=cmd_cml)

    sp = sub.add_parser("solve-sigma", help="largest set with inside degrees in sigma")
    graph_opts(sp)
    sp.add_argument("--sigma", required=True, help="comma-separated degrees, e.g. 0,1")
    sp.add_argument("--certify", action="store_true", help="re-check with the brute-force oracle")
    sp.add_argument("--oracle-cap", type=int, default=20)
    sp.set_defaults(func=cmd_solve_sigma)

    sp = sub.add_parser("solve-idp", help="mutually induced paths between terminal pairs")
    graph_opts(sp)
    sp.add_argument("--pairs", required=True)
    sp.set_defaults(func=cmd_solve_idp)

    sp = sub.add_parser("separator", help="2/3-balanced separator with few dominators")
    graph_opts(sp)
    sp.add_argument("-k", type=int, required=True, help="cml value the sequence witnesses")
    sp.add_argument("--weights", help="lines '<v> <p/q>'")
    sp.set_defaults(func=cmd_separator)

    sp = sub.add_parser("stretch", help="stretch of a partition of an ordered graph")
    graph_opts(sp, seq=False)
    sp.add_argument("--order", required=True)
    sp.add_argument("--partition", required=True)
    sp.set_defaults(func=cmd_stretch)

    sp = sub.add_parser("oracle", help="brute-force reference runs")
    sp.add_argument("problem", choices=["sigma", "idp", "maxleaf"])
    graph_opts(sp, seq=False)
    sp.add_argument("--sigma")
    sp.add_argument("--pairs")
    sp.set_defaults(func=cmd_oracle)

    sp = sub.add_parser("report", help="run a TOML sweep, write CSV and figures")
    sp.add_argument("--sweep", required=True)
    sp.add_argument("-o", "--out", required=True)
    sp.add_argument("--jobs", type=int, default=1)
    sp.set_defaults(func=cmd_report)
    return p


def _exit_code(exc: BaseException) -> int:
    if isinstance(exc, CAP_ERRORS):
        return EXIT_CAP
    if isinstance(exc, INPUT_ERRORS):
        return EXIT_INPUT
    return EXIT_INTERNAL


def main(argv=None) -> int:
    parser = build_parser()
    args, extra = parser.parse_known_args(argv)
    if extra and args.command != "gen":
        parser.error(f"unrecognized arguments: {' '.join(extra)}")
    args.params = extra
    try:
        return args.func(args)
    except (errors.CmlError, ValueError, KeyError, TypeError) as exc:
        code = _exit_code(exc)
        if isinstance(exc, (KeyError, TypeError)) and args.command == "gen":
            code = EXIT_INPUT
        if getattr(args, "json", False):
            err = {"error": {"type": type(exc).__name__, "message": str(exc), "exit": code}}
            print(json.dumps(err, sort_keys=True), file=sys.stderr)
        else:
            print(f"cmlkit: {type(exc).__name__}: {exc}", file=sys.stderr)
        return code


if __name__ == "__main__":
    sys.exit(main())
