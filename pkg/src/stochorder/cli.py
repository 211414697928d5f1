"""Command-line interface: one subcommand per library operation.

Every command prints a JSON report to stdout; ``--out`` names the command's
file artifact (points/rows/samples CSV, projection or convergence JSON) or,
for plain verdict commands, a copy of the report itself.

Exit codes: 0 success or verdict holds, 2 input/usage error, 3 verdict
fails, 4 precondition error.
"""

from __future__ import annotations

import argparse
import csv
import hashlib
import json
import sys

from . import __version__
from .distributions import (
    load_bivariate,
    load_univariate,
    write_bivariate_csv,
    write_univariate_csv,
)
from .errors import DomainError, InvalidDistributionError, PreconditionError
from .estimation import bracket_check, quantile_curve, sample, uniform_convergence_check
from .fixtures import (
    FIXTURE_NAMES,
    antidiag,
    diag_uniform,
    gamma_pair,
    gaussian_pair,
    odc_counterexample,
    unif_delta_kernel,
)
from .isotonic import MODE_EXACT, MODE_FLOAT, PRODUCT_RTOL
from .kuiper import kuiper_norm, signed_difference, tp2_project
from .orders import check_lr, check_st
from .roc import odc_curve, odc_is_convex, roc_curve, roc_is_concave
from .tp2 import boundaries, check_tp2, kernel_east, kernel_new, kernel_west

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_FAILS = 3
EXIT_PRECONDITION = 4


def _digest(path: str) -> str:
    with open(path, "rb") as fh:
        return "sha256:" + hashlib.sha256(fh.read()).hexdigest()


def _report(command: str, inputs: dict[str, str], result: dict) -> dict:
    return {
        "command": command,
        "version": __version__,
        "inputs": {k: _digest(v) for k, v in inputs.items()},
        "result": result,
    }


def _emit(report: dict, out_path: str | None = None) -> None:
    text = json.dumps(report, indent=2, sort_keys=True) + "\n"
    sys.stdout.write(text)
    if out_path:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(text)


def _verdict_payload(v) -> dict:
    return {"holds": v.holds, "method": v.method, "witness": v.witness}


def _parse_xs(text: str) -> list[float]:
    return [float(tok) for tok in text.split(",") if tok.strip()]


def _parse_ints(text: str) -> list[int]:
    return [int(tok) for tok in text.split(",") if tok.strip()]


def _parse_seeds(text: str) -> list[int]:
    if ".." in text:
        lo, hi = text.split("..")
        return list(range(int(lo), int(hi) + 1))
    return _parse_ints(text)


def _mode(args) -> str:
    return MODE_EXACT if args.exact else MODE_FLOAT


# ---------------------------------------------------------------------------
# command implementations
# ---------------------------------------------------------------------------


def _cmd_check_st(args) -> int:
    q1 = load_univariate(args.q1, exact=args.exact)
    q2 = load_univariate(args.q2, exact=args.exact)
    verdict = check_st(q1, q2, _mode(args), args.tolerance)
    _emit(_report("check-st", {"q1": args.q1, "q2": args.q2}, _verdict_payload(verdict)), args.out)
    return EXIT_OK if verdict.holds else EXIT_FAILS


def _cmd_check_lr(args) -> int:
    q1 = load_univariate(args.q1, exact=args.exact)
    q2 = load_univariate(args.q2, exact=args.exact)
    verdict = check_lr(q1, q2, args.method, _mode(args), args.tolerance)
    _emit(_report("check-lr", {"q1": args.q1, "q2": args.q2}, _verdict_payload(verdict)), args.out)
    return EXIT_OK if verdict.holds else EXIT_FAILS


def _write_points_csv(path: str, header: tuple[str, str], pts) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(header)
        for u, v in pts:
            writer.writerow([repr(float(u)), repr(float(v))])


def _cmd_roc(args) -> int:
    q1 = load_univariate(args.q1, exact=args.exact)
    q2 = load_univariate(args.q2, exact=args.exact)
    curve = roc_curve(q1, q2)
    result: dict = {"points": [list(p) for p in curve.points]}
    code = EXIT_OK
    if args.verdict:
        verdict = roc_is_concave(curve, _mode(args), args.tolerance)
        result["concave"] = _verdict_payload(verdict)
        code = EXIT_OK if verdict.holds else EXIT_FAILS
    if args.out:
        _write_points_csv(args.out, ("u", "v"), curve.points)
    _emit(_report("roc", {"q1": args.q1, "q2": args.q2}, result))
    return code


def _cmd_odc(args) -> int:
    q1 = load_univariate(args.q1, exact=args.exact)
    q2 = load_univariate(args.q2, exact=args.exact)
    curve = odc_curve(q1, q2)
    result: dict = {
        "alphas": list(curve.alphas),
        "values": list(curve.values),
        "dominated": curve.dominated,
    }
    code = EXIT_OK
    if args.verdict:
        verdict = odc_is_convex(curve, _mode(args), args.tolerance)
        result["convex"] = _verdict_payload(verdict)
        code = EXIT_OK if verdict.holds else EXIT_FAILS
    if args.out:
        _write_points_csv(args.out, ("alpha", "H"), zip(curve.alphas, curve.values))
    _emit(_report("odc", {"q1": args.q1, "q2": args.q2}, result))
    return code


def _cmd_tp2_check(args) -> int:
    r = load_bivariate(args.r, exact=args.exact)
    verdict = check_tp2(r, args.method, _mode(args), args.tolerance)
    _emit(_report("tp2-check", {"r": args.r}, _verdict_payload(verdict)), args.out)
    return EXIT_OK if verdict.holds else EXIT_FAILS


def _cmd_tp2_project(args) -> int:
    r = load_bivariate(args.r, exact=args.exact)
    res = tp2_project(r, seed=args.seed, restarts=args.restarts)
    payload = res.to_dict()
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            json.dump(payload, fh, indent=2, sort_keys=True)
            fh.write("\n")
    _emit(_report("tp2-project", {"r": args.r}, payload))
    return EXIT_OK


def _cmd_kernel(args) -> int:
    r = load_bivariate(args.r, exact=args.exact)
    xs = _parse_xs(args.x) if args.x else None
    if args.flavor == "w":
        kern = kernel_west(r, xs)
    elif args.flavor == "e":
        kern = kernel_east(r, xs)
    else:
        kern = kernel_new(r, xs, rule=args.rule, mode=_mode(args), tol=args.tolerance)
    rows = []
    for x, row in zip(kern.eval_points.tolist(), kern.rows):
        for y, p in zip(row.support.tolist(), row.probs.tolist()):
            rows.append((x, y, p))
    if args.out:
        with open(args.out, "w", newline="", encoding="utf-8") as fh:
            writer = csv.writer(fh)
            writer.writerow(["x", "y", "prob"])
            for x, y, p in rows:
                writer.writerow([repr(x), repr(y), repr(p)])
    result = {
        "flavor": kern.flavor,
        "eval_points": kern.eval_points.tolist(),
        "rows": [[list(t) for t in rows if t[0] == x] for x in kern.eval_points.tolist()],
    }
    _emit(_report("kernel", {"r": args.r}, result))
    return EXIT_OK


def _cmd_boundaries(args) -> int:
    r = load_bivariate(args.r, exact=args.exact)
    xs = _parse_xs(args.x) if args.x else None
    b = boundaries(r, xs)
    records = [
        {
            "x": float(x),
            "s_nw": float(nw),
            "s_se": float(se),
            "crossing": bool(c),
            "in_range": bool(ir),
        }
        for x, nw, se, c, ir in zip(b.xs, b.s_nw, b.s_se, b.in_crossing, b.in_range)
    ]
    if args.out:
        with open(args.out, "w", newline="", encoding="utf-8") as fh:
            writer = csv.writer(fh)
            writer.writerow(["x", "s_nw", "s_se", "crossing", "in_range"])
            for rec in records:
                writer.writerow([
                    repr(rec["x"]), repr(rec["s_nw"]), repr(rec["s_se"]),
                    int(rec["crossing"]), int(rec["in_range"]),
                ])
    _emit(_report("boundaries", {"r": args.r}, {"records": records}))
    return EXIT_OK


def _cmd_kuiper_dist(args) -> int:
    a = load_bivariate(args.a, exact=args.exact)
    b = load_bivariate(args.b, exact=args.exact)
    value = kuiper_norm(signed_difference(a, b), args.method)
    _emit(_report("kuiper-dist", {"a": args.a, "b": args.b},
                  {"distance": float(value), "method": args.method}), args.out)
    return EXIT_OK


def _cmd_sample(args) -> int:
    r = load_bivariate(args.r, exact=args.exact)
    draws = sample(r, args.n, args.seed)
    if args.out:
        with open(args.out, "w", newline="", encoding="utf-8") as fh:
            writer = csv.writer(fh)
            writer.writerow(["x", "y"])
            for x, y in draws.tolist():
                writer.writerow([repr(x), repr(y)])
    _emit(_report("sample", {"r": args.r}, {"n": args.n, "seed": args.seed,
                                            "first": draws[0].tolist()}))
    return EXIT_OK


def _cmd_quantiles(args) -> int:
    r = load_bivariate(args.r, exact=args.exact)
    flavor = {"w": "west-min", "e": "east-max", "emp": "empirical"}[args.flavor]
    xs = _parse_xs(args.x) if args.x else None
    curve = quantile_curve(r, args.beta, flavor, xs)
    result = {"beta": curve.beta, "flavor": curve.flavor,
              "points": [list(p) for p in curve.points]}
    _emit(_report("quantiles", {"r": args.r}, result), args.out)
    return EXIT_OK


def _cmd_converge(args) -> int:
    r = load_bivariate(args.r, exact=args.exact)
    ns = _parse_ints(args.ns)
    seeds = _parse_seeds(args.seeds)
    if args.variant == "bracket":
        reports = [
            bracket_check(r, {"n_list": ns, "seed": s}, args.beta, args.x1, args.x2).to_dict()
            for s in seeds
        ]
        result = {"variant": "bracket", "reports": reports}
    else:
        rep = uniform_convergence_check(r, args.beta, (args.a, args.b), ns, seeds)
        result = {"variant": "uniform", "report": rep.to_dict()}
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            json.dump(result, fh, indent=2, sort_keys=True)
            fh.write("\n")
    _emit(_report("converge", {"r": args.r}, result))
    return EXIT_OK


def _cmd_fixture(args) -> int:
    import os

    name = args.name
    outdir = args.dir
    os.makedirs(outdir, exist_ok=True)
    written: list[str] = []

    def path(suffix: str) -> str:
        p = os.path.join(outdir, f"{name}-{suffix}.csv" if suffix else f"{name}.csv")
        written.append(p)
        return p

    if name == "gauss-pair":
        q1, q2 = gaussian_pair(args.lo, args.hi, args.step)
        write_univariate_csv(q1, path("q1"))
        write_univariate_csv(q2, path("q2"))
    elif name == "gamma-pair":
        lo = 0.05 if args.lo == -15.0 else args.lo
        hi = 9.95 if args.hi == 15.0 else args.hi
        q1, q2 = gamma_pair(lo, hi, args.step)
        write_univariate_csv(q1, path("q1"))
        write_univariate_csv(q2, path("q2"))
    elif name == "odc-counterexample":
        q1, q2 = odc_counterexample(args.points)
        write_univariate_csv(q1, path("q1"))
        write_univariate_csv(q2, path("q2"))
    elif name == "unif-delta-kernel":
        write_bivariate_csv(unif_delta_kernel(args.size if args.size % 3 == 0 else 30), path(""))
    elif name == "diag-uniform":
        write_bivariate_csv(diag_uniform(args.size), path(""))
    elif name == "antidiag":
        write_bivariate_csv(antidiag(), path(""))
    else:
        raise DomainError(f"unknown fixture {name!r}; choose from {FIXTURE_NAMES}")
    _emit(_report("fixture", {}, {"name": name, "files": written,
                                  "digests": {p: _digest(p) for p in written}}))
    return EXIT_OK


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--exact", action="store_true",
                        help="integer-weight mode: exact cross products, no slack")
    parser.add_argument("--tolerance", type=float, default=PRODUCT_RTOL,
                        help="relative slack for float product comparisons")
    parser.add_argument("--out", default=None, help="file artifact / report copy")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="stochorder", description=__doc__)
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="cmd", required=True)

    p = sub.add_parser("check-st", help="usual stochastic order verdict")
    p.add_argument("--q1", required=True)
    p.add_argument("--q2", required=True)
    _add_common(p)
    p.set_defaults(func=_cmd_check_st)

    p = sub.add_parser("check-lr", help="likelihood ratio order verdict")
    p.add_argument("--q1", required=True)
    p.add_argument("--q2", required=True)
    p.add_argument("--method", default="ratio",
                   choices=["ratio", "pairwise", "intervals", "conditional-st"])
    _add_common(p)
    p.set_defaults(func=_cmd_check_lr)

    p = sub.add_parser("roc", help="ROC points and concavity verdict")
    p.add_argument("--q1", required=True)
    p.add_argument("--q2", required=True)
    p.add_argument("--verdict", action="store_true")
    _add_common(p)
    p.set_defaults(func=_cmd_roc)

    p = sub.add_parser("odc", help="ordinal dominance curve and convexity verdict")
    p.add_argument("--q1", required=True)
    p.add_argument("--q2", required=True)
    p.add_argument("--verdict", action="store_true")
    _add_common(p)
    p.set_defaults(func=_cmd_odc)

    p = sub.add_parser("tp2", help="TP2 checks and projection")
    tp2_sub = p.add_subparsers(dest="tp2_cmd", required=True)
    pc = tp2_sub.add_parser("check")
    pc.add_argument("--r", required=True)
    pc.add_argument("--method", default="pmf-allpairs",
                    choices=["pmf-allpairs", "pmf-adjacent", "intervals"])
    _add_common(pc)
    pc.set_defaults(func=_cmd_tp2_check)
    pp = tp2_sub.add_parser("project")
    pp.add_argument("--r", required=True)
    pp.add_argument("--seed", type=int, required=True)
    pp.add_argument("--restarts", type=int, default=8)
    _add_common(pp)
    pp.set_defaults(func=_cmd_tp2_project)

    p = sub.add_parser("kernel", help="conditional kernel rows")
    p.add_argument("--r", required=True)
    p.add_argument("--flavor", required=True, choices=["w", "e", "new"])
    p.add_argument("--rule", default="midpoint", choices=["nw", "se", "midpoint"])
    p.add_argument("--x", default=None, help="comma-separated evaluation points")
    _add_common(p)
    p.set_defaults(func=_cmd_kernel)

    p = sub.add_parser("boundaries", help="support boundaries per evaluation point")
    p.add_argument("--r", required=True)
    p.add_argument("--x", default=None, help="comma-separated evaluation points")
    _add_common(p)
    p.set_defaults(func=_cmd_boundaries)

    p = sub.add_parser("kuiper", help="Kuiper distances")
    k_sub = p.add_subparsers(dest="kuiper_cmd", required=True)
    kd = k_sub.add_parser("dist")
    kd.add_argument("--a", required=True)
    kd.add_argument("--b", required=True)
    kd.add_argument("--method", default="kadane", choices=["brute", "kadane"])
    _add_common(kd)
    kd.set_defaults(func=_cmd_kuiper_dist)

    p = sub.add_parser("sample", help="seeded i.i.d. draws")
    p.add_argument("--r", required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    _add_common(p)
    p.set_defaults(func=_cmd_sample)

    p = sub.add_parser("quantiles", help="conditional quantile curve")
    p.add_argument("--r", required=True)
    p.add_argument("--beta", type=float, required=True)
    p.add_argument("--flavor", required=True, choices=["w", "e", "emp"])
    p.add_argument("--x", default=None, help="comma-separated evaluation points")
    _add_common(p)
    p.set_defaults(func=_cmd_quantiles)

    p = sub.add_parser("converge", help="convergence diagnostics")
    c_sub = p.add_subparsers(dest="variant", required=True)
    cb = c_sub.add_parser("bracket")
    cb.add_argument("--r", required=True)
    cb.add_argument("--beta", type=float, required=True)
    cb.add_argument("--ns", required=True, help="comma-separated sample sizes")
    cb.add_argument("--seeds", required=True, help="comma list or lo..hi range")
    cb.add_argument("--x1", type=float, required=True)
    cb.add_argument("--x2", type=float, required=True)
    _add_common(cb)
    cb.set_defaults(func=_cmd_converge)
    cu = c_sub.add_parser("uniform")
    cu.add_argument("--r", required=True)
    cu.add_argument("--beta", type=float, required=True)
    cu.add_argument("--ns", required=True)
    cu.add_argument("--seeds", required=True)
    cu.add_argument("--a", type=float, required=True)
    cu.add_argument("--b", type=float, required=True)
    _add_common(cu)
    cu.set_defaults(func=_cmd_converge)

    p = sub.add_parser("fixture", help="write a named fixture to CSV files")
    p.add_argument("name", choices=list(FIXTURE_NAMES))
    p.add_argument("--dir", default=".")
    p.add_argument("--lo", type=float, default=-15.0)
    p.add_argument("--hi", type=float, default=15.0)
    p.add_argument("--step", type=float, default=0.1)
    p.add_argument("--points", type=int, default=200)
    p.add_argument("--size", type=int, default=5)
    _add_common(p)
    p.set_defaults(func=_cmd_fixture)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code not in (0, None) else 0
    try:
        return args.func(args)
    except PreconditionError as exc:
        sys.stderr.write(f"precondition error: {exc}\n")
        return EXIT_PRECONDITION
    except (DomainError, InvalidDistributionError, OSError, ValueError) as exc:
        sys.stderr.write(f"input error: {exc}\n")
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
