"""Command-line driver: verification campaigns and module construction with
machine-readable JSON reports.

Exit codes: 0 = all checks passed, 1 = a mathematical check failed (the
report is still written), 2 = usage or configuration error.  Identical
invocations produce byte-identical reports; SUPERYANG_THREADS caps the
parallelism of the grid evaluations.
"""

import argparse
import json
import sys
from fractions import Fraction

from .highest import drinfeld_of_module, hw_tensor_product_check, xi_vector
from .reps import (central_series, check_defrel, check_rtt, compute_vplus,
                   fundamental_rep, gl_check, osp_embed, reduce_rep,
                   sample_index_tuples, shift_rep, tensor_rep, twist_rep,
                   vector_rep)
from .scalars import Poly, RationalFunction, rat_str
from .superspace import build_space, check_ybe


class UsageError(Exception):
    pass


def _parse_rat(text):
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise UsageError("not a rational number: %r" % text)


def _parse_poly(text):
    return Poly([_parse_rat(c) for c in text.split(",")])


def _build_module(args, space):
    k = getattr(args, "k", 0) or 0
    rep = vector_rep(space) if k == 0 else fundamental_rep(space, k)
    a = getattr(args, "shift", None)
    if a:
        rep = shift_rep(rep, _parse_rat(a))
    tw = getattr(args, "twist", None)
    if tw:
        den = getattr(args, "twist_den", None)
        if den is None:
            raise UsageError("--twist requires --twist-den")
        rep = twist_rep(rep, RationalFunction(_parse_poly(tw), _parse_poly(den)))
    return rep


def _mutation(args, allowed):
    m = getattr(args, "mutate", None)
    if m is None:
        return None
    if m not in allowed:
        raise UsageError("--mutate %s does not apply to this check "
                         "(allowed: %s)" % (m, ", ".join(sorted(allowed))))
    return m


def _space(args):
    mut = getattr(args, "mutate", None)
    return build_space(args.n, mutate_theta=(mut == "theta"))


def run_command(args):
    "Execute one subcommand; returns a list of report dicts."
    cmd = args.command
    if cmd == "ybe":
        _mutation(args, {"theta", "qsign"})
        sp = _space(args)
        return [check_ybe(sp, grid_size=args.grid or 8,
                          mutate_q=(args.mutate == "qsign"))]
    if cmd == "rtt":
        _mutation(args, {"theta", "qsign", "wrap"})
        rep = _build_module(args, _space(args))
        return [check_rtt(rep, grid_size=args.grid,
                          mutate_wrap=(args.mutate == "wrap"),
                          mutate_q=(args.mutate == "qsign"))]
    if cmd == "defrel":
        _mutation(args, {"theta"})
        rep = _build_module(args, _space(args))
        tuples = None
        seed = None
        if args.tuples:
            seed = args.seed
            tuples = sample_index_tuples(rep.space, args.tuples, seed=seed)
        return [check_defrel(rep, grid_size=args.grid, tuples=tuples, seed=seed)]
    if cmd == "central":
        rep = _build_module(args, build_space(args.n))
        _, report = central_series(rep)
        return [report]
    if cmd == "osp":
        rep = _build_module(args, build_space(args.n))
        _, report = osp_embed(rep)
        return [report]
    if cmd == "gl":
        rep = _build_module(args, build_space(args.n))
        return [gl_check(rep, grid_size=args.grid)]
    if cmd == "vplus":
        rep = _build_module(args, build_space(args.n))
        basis = compute_vplus(rep)
        return [{"check": "vplus", "module": rep.recipe,
                 "dimension": len(basis), "status": "pass",
                 "basis": [[rat_str(x) for x in vec] for vec in basis]}]
    if cmd == "reduce":
        rep = _build_module(args, build_space(args.n))
        reduced, report = reduce_rep(rep)
        report["reduced_dimension"] = reduced.dim
        return [report]
    if cmd == "fundamental":
        if not args.k:
            raise UsageError("fundamental requires --k")
        sp = build_space(args.n)
        rep = fundamental_rep(sp, args.k)
        report, _, _ = drinfeld_of_module(rep, xi=xi_vector(sp, args.k))
        report["check"] = "fundamental"
        report["status"] = "pass" if (
            report["consistency"] == "pass"
            and report["central_crosscheck"] == "pass"
            and not isinstance(report["drinfeld"], dict)) else "fail"
        return [report]
    if cmd == "drinfeld":
        sp = build_space(args.n)
        rep = _build_module(args, sp)
        xi = xi_vector(sp, args.k) if args.k else None
        report, _, _ = drinfeld_of_module(rep, xi=xi)
        report["check"] = "drinfeld"
        report["status"] = "pass" if not isinstance(report["drinfeld"], dict) else "fail"
        return [report]
    if cmd == "tensor":
        sp = build_space(args.n)
        left = fundamental_rep(sp, args.k1)
        right = fundamental_rep(sp, args.k2)
        if args.shift2:
            right = shift_rep(right, _parse_rat(args.shift2))
        return [hw_tensor_product_check(left, right)]
    if cmd == "all":
        return run_all(args.n)
    raise UsageError("unknown command %r" % cmd)


def run_all(n):
    "The full verification battery for one n (never mutated)."
    sp = build_space(n)
    reports = [check_ybe(sp)]
    vec = vector_rep(sp)
    reports.append(check_rtt(vec))
    tuples = None if n == 1 else sample_index_tuples(sp, 50)
    reports.append(check_defrel(vec, tuples=tuples,
                                seed=None if n == 1 else 20240801))
    _, central_rep = central_series(vec)
    reports.append(central_rep)
    _, osp_rep = osp_embed(vec)
    reports.append(osp_rep)
    reports.append(gl_check(vec))
    if n >= 2:
        basis = compute_vplus(vec)
        reports.append({"check": "vplus", "module": vec.recipe,
                        "dimension": len(basis), "status": "pass",
                        "basis": [[rat_str(x) for x in vec_] for vec_ in basis]})
        _, red_rep = reduce_rep(vec)
        reports.append(red_rep)
    for k in range(1, n + 1):
        rep = fundamental_rep(sp, k)
        reports.append(check_rtt(rep))
        _, crep = central_series(rep)
        reports.append(crep)
        reports.append(gl_check(rep))
        hw_report, _, _ = drinfeld_of_module(rep, xi=xi_vector(sp, k))
        hw_report["check"] = "fundamental"
        hw_report["status"] = "pass" if (
            hw_report["consistency"] == "pass"
            and hw_report["central_crosscheck"] == "pass"
            and not isinstance(hw_report["drinfeld"], dict)) else "fail"
        reports.append(hw_report)
    f1 = fundamental_rep(sp, 1)
    reports.append(hw_tensor_product_check(f1, f1))
    return reports


def _summary_line(report):
    kind = report.get("check", "?")
    status = report.get("status", "?")
    bits = []
    mod = report.get("module")
    if mod:
        bits.append("module=%s" % _recipe_name(mod))
    if "n" in report:
        bits.append("n=%d" % report["n"])
    if "grid" in report:
        bits.append("grid=%s" % report["grid"])
    return "[%s] %s %s" % (status, kind, " ".join(bits))


def _recipe_name(recipe):
    kind = recipe.get("kind")
    if kind == "vector":
        return "vector(n=%d)" % recipe["n"]
    if kind == "trivial":
        return "trivial(n=%d)" % recipe["n"]
    if kind == "fundamental":
        return "fundamental(n=%d,k=%d)" % (recipe["n"], recipe["k"])
    if kind == "shift":
        return "shift(%s,%s)" % (recipe["a"], _recipe_name(recipe["base"]))
    if kind == "twist":
        return "twist(%s)" % _recipe_name(recipe["base"])
    if kind == "tensor":
        return "tensor(%s)" % ",".join(_recipe_name(r) for r in recipe["factors"])
    if kind == "reduce":
        return "reduce(%s)" % _recipe_name(recipe["base"])
    return kind or "?"


def build_parser():
    parser = argparse.ArgumentParser(
        prog="superyang",
        description="Exact verification of osp(1|2n) Yangian modules: "
                    "Yang-Baxter/RTT identities, central series, highest "
                    "weights and Drinfeld polynomials.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, k=True, grid=True, mod=True):
        p.add_argument("--n", type=int, required=True, help="rank n >= 1")
        if k:
            p.add_argument("--k", type=int, default=0,
                           help="0 = vector representation, k >= 1 = "
                                "k-th fundamental tensor module")
        if grid:
            p.add_argument("--grid", type=int, default=None,
                           help="grid side (default: degree bound + 2)")
        if mod:
            p.add_argument("--shift", default=None,
                           help="shift the module argument by a rational a")
            p.add_argument("--twist", default=None,
                           help="twist numerator coefficients, lowest first, "
                                "comma-separated rationals")
            p.add_argument("--twist-den", default=None,
                           help="twist denominator coefficients")
        p.add_argument("--out", default=None, help="write the JSON report here")

    p = sub.add_parser("ybe", help="Yang-Baxter equation for R(u)")
    common(p, k=False, mod=False)
    p.add_argument("--mutate", choices=["theta", "qsign"], default=None)

    p = sub.add_parser("rtt", help="RTT relation on a module")
    common(p)
    p.add_argument("--mutate", choices=["theta", "qsign", "wrap"], default=None)

    p = sub.add_parser("defrel", help="explicit defining relations on a module")
    common(p)
    p.add_argument("--mutate", choices=["theta"], default=None)
    p.add_argument("--tuples", type=int, default=0,
                   help="sample this many index tuples (0 = all)")
    p.add_argument("--seed", type=int, default=20240801)

    for name, helptext in (("central", "central series c(u)"),
                           ("osp", "embedded osp generators and brackets"),
                           ("gl", "embedded Yangian gl_n relations"),
                           ("vplus", "basis of the V+ subspace"),
                           ("reduce", "reduction to the next-smaller algebra")):
        p = sub.add_parser(name, help=helptext)
        common(p, grid=(name == "gl"))

    p = sub.add_parser("fundamental",
                       help="highest-weight report of a fundamental module")
    common(p, k=False, grid=False, mod=False)
    p.add_argument("--k", type=int, required=True)

    p = sub.add_parser("drinfeld", help="Drinfeld polynomials of a module")
    common(p, grid=False)

    p = sub.add_parser("tensor", help="tensor-product multiplicativity check")
    common(p, k=False, grid=False, mod=False)
    p.add_argument("--k1", type=int, default=1)
    p.add_argument("--k2", type=int, default=1)
    p.add_argument("--shift2", default=None,
                   help="shift of the second factor (rational)")

    p = sub.add_parser("all", help="full verification battery for one n")
    common(p, k=False, grid=False, mod=False)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.n < 1:
        print("error: n must be >= 1", file=sys.stderr)
        return 2
    if getattr(args, "k", 0) and args.k > args.n:
        print("error: need k <= n", file=sys.stderr)
        return 2
    try:
        reports = run_command(args)
    except UsageError as err:
        print("error: %s" % err, file=sys.stderr)
        return 2
    except (ValueError, ZeroDivisionError) as err:
        print("error: %s" % err, file=sys.stderr)
        return 2
    payload = reports[0] if len(reports) == 1 else {"check": "all",
                                                    "n": args.n,
                                                    "reports": reports}
    text = json.dumps(payload, sort_keys=True, indent=2) + "\n"
    for report in reports:
        print(_summary_line(report))
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    failed = any(r.get("status") != "pass" for r in reports)
    return 1 if failed else 0


if __name__ == "__main__":
    sys.exit(main())
