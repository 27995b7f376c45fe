"""Command-line interface.

Subcommands: gen ksum|points, reduce ksum|degen, solve exact|approx,
verify ksum|degen, eval, bench.  Results print to stdout as JSON and are
also written to -o when given.  Exit codes: 0 success, 1 a verify
subcommand observed oracle/reduction disagreement (should never happen),
2 usage or input errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import bench as bench_mod
from . import jsonio
from .errors import HsdiscError
from .exactmath import scalar_from_str, scalar_to_str
from .generators import GenSpec, gen_ksum, gen_points
from .geometry import QueryCounter, phi, phi_alpha, phi_parallel, phi_poisson, psi
from .reductions import reduce_degeneracy, reduce_ksum, verify_equivalence_degeneracy, \
    verify_equivalence_ksum
from .solvers import ApproxParams, max_halfspace_approx, max_halfspace_exact, query_report


def _scalar_arg(text: str) -> Fraction:
    try:
        return scalar_from_str(text)
    except HsdiscError as exc:
        raise argparse.ArgumentTypeError(str(exc))


def _emit(obj, out_path=None) -> None:
    text = jsonio.dumps(obj)
    sys.stdout.write(text)
    if out_path:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(text)


def _load_instance(path):
    obj = jsonio.load(path)
    if isinstance(obj, dict) and "instance" in obj:
        return jsonio.instance_from_obj(obj["instance"])
    return jsonio.instance_from_obj(obj)


def _cmd_gen(args) -> int:
    if args.problem == "ksum":
        spec = GenSpec(kind="ksum", n=args.n, bound=args.bound, seed=args.seed,
                       planted=args.planted, k=args.k)
        obj = jsonio.ksum_to_obj(gen_ksum(spec))
    else:
        spec = GenSpec(kind="points", n=args.n, bound=args.bound, seed=args.seed,
                       planted=args.planted, dim=args.dim)
        obj = jsonio.points_to_obj(gen_points(spec))
    _emit(obj, args.output)
    return 0


def _cmd_reduce(args) -> int:
    obj = jsonio.load(args.input)
    if args.problem == "ksum":
        red = reduce_ksum(jsonio.ksum_from_obj(obj), args.gamma)
    else:
        red = reduce_degeneracy(jsonio.points_from_obj(obj))
    _emit(jsonio.reduction_to_obj(red), args.output)
    return 0


def _cmd_solve(args) -> int:
    inst = _load_instance(args.input)
    if args.mode == "exact":
        res = max_halfspace_exact(inst, abs_mode=args.abs, lane=args.lane,
                                  threads=args.threads)
    else:
        params = ApproxParams(epsilon=args.epsilon, delta=args.delta, seed=args.seed,
                              sample_constant=args.sample_constant)
        res = max_halfspace_approx(inst, params, abs_mode=args.abs, lane=args.lane)
    _emit(jsonio.solve_result_to_obj(res), args.output)
    if args.count_queries:
        sys.stdout.write(jsonio.dumps(query_report(res)))
    return 0


def _cmd_verify(args) -> int:
    obj = jsonio.load(args.input)
    if args.problem == "ksum":
        verdict = verify_equivalence_ksum(jsonio.ksum_from_obj(obj), args.gamma)
    else:
        verdict = verify_equivalence_degeneracy(jsonio.points_from_obj(obj))
    _emit(jsonio.verdict_to_obj(verdict), args.output)
    return 0 if verdict.agree else 1


def _cmd_eval(args) -> int:
    inst = _load_instance(args.input)
    h = jsonio.halfspace_from_obj(jsonio.load(args.halfspace))
    qc = QueryCounter()
    if args.stat == "phi":
        out = {"stat": "phi", "value": str(phi(inst, h, qc))}
    elif args.stat == "psi":
        out = {"stat": "psi", "value": scalar_to_str(psi(inst, h, qc))}
    elif args.stat == "parallel":
        out = {"stat": "parallel", "value": scalar_to_str(phi_parallel(inst, h, qc))}
    elif args.stat == "alpha":
        val = phi_alpha(inst, h, args.alpha, qc, signed=args.signed)
        out = {"stat": "alpha", "alpha": scalar_to_str(args.alpha),
               "signed": args.signed, "value": scalar_to_str(val)}
    else:
        enc = phi_poisson(inst, h, qc, bits=args.bits)
        if enc == float("inf"):
            out = {"stat": "poisson", "value": "inf"}
        else:
            out = {"stat": "poisson", "lo": scalar_to_str(enc[0]),
                   "hi": scalar_to_str(enc[1])}
    if args.count_queries:
        out["queries"] = qc.count
    _emit(out, args.output)
    return 0


def _cmd_bench(args) -> int:
    sizes = [int(s) for s in args.sizes.split(",")]
    records, fit = bench_mod.bench_run(args.suite, sizes, args.dim, args.seed,
                                       reps=args.reps, solver=args.solver)
    if args.output:
        bench_mod.write_csv(records, args.output)
    _emit({"suite": args.suite, "d": args.dim, "sizes": sizes,
           "solver": args.solver, **fit})
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="hsdisc")
    sub = parser.add_subparsers(dest="command", required=True)

    p_gen = sub.add_parser("gen", help="generate a base-problem instance")
    gsub = p_gen.add_subparsers(dest="problem", required=True)
    for name in ("ksum", "points"):
        g = gsub.add_parser(name)
        g.add_argument("-n", type=int, required=True)
        if name == "ksum":
            g.add_argument("-k", type=int, required=True)
        else:
            g.add_argument("-d", "--dim", type=int, required=True)
        g.add_argument("--bound", type=int, required=True)
        g.add_argument("--planted", action="store_true")
        g.add_argument("--seed", type=int, required=True)
        g.add_argument("-o", "--output", default=None)
        g.set_defaults(func=_cmd_gen)

    p_red = sub.add_parser("reduce", help="build the colored instance")
    rsub = p_red.add_subparsers(dest="problem", required=True)
    for name in ("ksum", "degen"):
        r = rsub.add_parser(name)
        r.add_argument("-i", "--input", required=True)
        r.add_argument("-o", "--output", default=None)
        if name == "ksum":
            r.add_argument("--gamma", type=_scalar_arg, default=None)
        r.set_defaults(func=_cmd_reduce)

    p_solve = sub.add_parser("solve", help="maximize halfspace discrepancy")
    ssub = p_solve.add_subparsers(dest="mode", required=True)
    for name in ("exact", "approx"):
        s = ssub.add_parser(name)
        s.add_argument("-i", "--input", required=True)
        s.add_argument("-o", "--output", default=None)
        s.add_argument("--abs", action="store_true")
        s.add_argument("--count-queries", action="store_true")
        s.add_argument("--lane", choices=("auto", "vector", "scalar"), default="auto")
        if name == "exact":
            s.add_argument("--threads", type=int, default=1)
        else:
            s.add_argument("--epsilon", type=_scalar_arg, required=True)
            s.add_argument("--delta", type=_scalar_arg, required=True)
            s.add_argument("--seed", type=int, required=True)
            s.add_argument("--sample-constant", type=_scalar_arg, default=Fraction(4))
        s.set_defaults(func=_cmd_solve)

    p_ver = sub.add_parser("verify", help="oracle vs reduction equivalence")
    vsub = p_ver.add_subparsers(dest="problem", required=True)
    for name in ("ksum", "degen"):
        v = vsub.add_parser(name)
        v.add_argument("-i", "--input", required=True)
        v.add_argument("-o", "--output", default=None)
        if name == "ksum":
            v.add_argument("--gamma", type=_scalar_arg, default=None)
        v.set_defaults(func=_cmd_verify)

    p_eval = sub.add_parser("eval", help="evaluate a statistic at a halfspace")
    p_eval.add_argument("--stat", required=True,
                        choices=("phi", "psi", "parallel", "alpha", "poisson"))
    p_eval.add_argument("-i", "--input", required=True)
    p_eval.add_argument("--halfspace", required=True)
    p_eval.add_argument("--alpha", type=_scalar_arg, default=Fraction(1, 2))
    p_eval.add_argument("--signed", action="store_true")
    p_eval.add_argument("--bits", type=int, default=64)
    p_eval.add_argument("--count-queries", action="store_true")
    p_eval.add_argument("-o", "--output", default=None)
    p_eval.set_defaults(func=_cmd_eval)

    p_bench = sub.add_parser("bench", help="measure queries and wall time vs n")
    p_bench.add_argument("--suite", choices=("solver", "reduction"), default="solver")
    p_bench.add_argument("--sizes", required=True, help="comma-separated increasing n")
    p_bench.add_argument("-d", "--dim", type=int, required=True)
    p_bench.add_argument("--seed", type=int, required=True)
    p_bench.add_argument("--reps", type=int, default=3)
    p_bench.add_argument("--solver", choices=sorted(bench_mod._SOLVERS), default="exact")
    p_bench.add_argument("-o", "--output", default=None)
    p_bench.set_defaults(func=_cmd_bench)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    try:
        return args.func(args)
    except HsdiscError as exc:
        sys.stderr.write(json.dumps(
            {"error": {"kind": type(exc).__name__, "message": str(exc)}}) + "\n")
        return 2
    except (OSError, ValueError) as exc:
        sys.stderr.write(json.dumps(
            {"error": {"kind": type(exc).__name__, "message": str(exc)}}) + "\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
