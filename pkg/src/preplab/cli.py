"""``preplab`` command line.

Exit status is 0 on success, 1 when a check fails or a computation gives
up, and 2 on bad usage or invalid input.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from fractions import Fraction
from pathlib import Path

from . import arith, family, lines, prepfind, structure, suite
from .errors import ContractError, InvalidInputError, PreplabError

SCHEMA = "preplab/1"
EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _rationals(text):
    try:
        return [Fraction(x.strip()) for x in text.split(",") if x.strip()]
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"expected comma-separated rationals: {exc}")


def _ints(text):
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers: {exc}")


def _floats(text):
    try:
        return [float(x) for x in text.split(",") if x.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers: {exc}")


def _family(text):
    try:
        kv = dict(part.split("=", 1) for part in text.split(","))
        return family.Family(int(kv["d"]), int(kv["m"]))
    except (KeyError, ValueError) as exc:
        raise argparse.ArgumentTypeError(f"expected d=<int>,m=<int>: {exc}")


def _load_poly(path):
    try:
        return arith.loads(Path(path).read_text())
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc}")
    except (ValueError, KeyError) as exc:
        raise UsageError(f"{path} is not a polynomial document: {exc}")


def _line_args(p):
    p.add_argument("--family", type=_family, help="d=<int>,m=<int>")
    p.add_argument("--points", type=_rationals, help="base points c_1..c_{m-1}")
    p.add_argument("--sigma", type=_ints, help="sigma(1),...,sigma(m-1); default identity")
    p.add_argument("--d", type=int, help="degree when the line comes from --points")
    p.add_argument("--alpha", type=_rationals)
    p.add_argument("--beta", type=_rationals)


def _resolve_line(args):
    """``(family, line)`` from --points/--sigma/--d or --family with --alpha/--beta."""
    if args.points is not None:
        sigma = args.sigma or list(range(1, len(args.points) + 1))
        d = args.d if args.d is not None else (args.family.d if args.family else None)
        if d is None:
            raise UsageError("--points needs --d or --family")
        m = len(sigma) + 1
        if args.family and (args.family.d, args.family.m) != (d, m):
            raise UsageError(f"--family {args.family} does not match d={d}, m={m}")
        return family.Family(d, m), lines.build_line(args.points, sigma, d)
    if args.family is None:
        raise UsageError("give --family (with --alpha/--beta when m > 1) or --points")
    fam = args.family
    if args.alpha is None and args.beta is None:
        if fam.m != 1:
            raise UsageError("m > 1 needs --alpha/--beta or --points")
        return fam, lines.Line.zero(1)
    return fam, lines.Line(args.alpha or [], args.beta or [])


def _emit(args, payload, rows=None):
    """JSON document by default; ``--csv`` prints ``rows`` (list of dicts)."""
    out = sys.stdout
    if args.csv and rows is not None:
        if rows:
            w = csv.DictWriter(out, fieldnames=list(rows[0]), lineterminator="\n")
            w.writeheader()
            for r in rows:
                w.writerow({k: json.dumps(v) if isinstance(v, (list, dict)) else v
                            for k, v in r.items()})
        return
    payload = {"schema": SCHEMA, **payload}
    json.dump(payload, out, indent=2)
    out.write("\n")


def cmd_line_build(args):
    if args.points is None or args.d is None:
        raise UsageError("line-build needs --c and --d")
    sigma = args.sigma or list(range(1, len(args.points) + 1))
    line = lines.build_line(args.points, sigma, args.d)
    A = lines.vanishing_poly(args.points[:len(sigma)])
    B = lines.lagrange_B(args.points, sigma, args.d)
    out = {"d": args.d, "m": line.m, **line.to_json(),
           "A": arith.to_text(A, "z"), "B": arith.to_text(B, "z")}
    _emit(args, out, [out])
    return EXIT_OK


def _verdict_json(v):
    name = type(v).__name__
    return {"verdict": name, **{k: getattr(v, k) for k in v.__dataclass_fields__}}


def cmd_iterate(args):
    if args.poly is not None or args.poly_file is not None:
        p = arith.from_text(args.poly, arith.Ring.Q, "z") if args.poly is not None \
            else _load_poly(args.poly_file)
        if p.ring is not arith.Ring.Q:
            raise UsageError("iterate --poly works over Q; use a line for families")
        x = arith.to_rational(args.c)
        values = [x]
        for _ in range(args.n):
            x = p(x)
            values.append(x)
        verdict = family.is_preperiodic_exact(p, args.c, step_cap=max(args.n, 1))
        rows = [{"n": i, "value": str(v)} for i, v in enumerate(values)]
        _emit(args, {"poly": arith.to_text(p, "z"), "orbit": rows,
                     **_verdict_json(verdict)}, rows)
        return EXIT_OK
    fam, line = _resolve_line(args)
    g = family.specialize_line(fam, line)
    rec = family.orbit(g, arith.to_rational(args.c), args.n, args.deg_cap)
    rows = rec.to_json()
    _emit(args, {"g": arith.to_text(g, "z"), "orbit": rows}, rows)
    return EXIT_OK


def cmd_prep_find(args):
    fam, line = _resolve_line(args)
    g = family.specialize_line(fam, line)
    c = arith.to_rational(args.c)
    hits = prepfind.find_prep_params(g, c, args.N, tol=args.tol,
                                     merge_radius=args.merge_radius,
                                     min_tail=args.min_tail, deg_cap=args.deg_cap)
    rows = []
    for h in hits:
        row = h.to_json()
        conf = prepfind.confirm_exact(h, g, c)
        if conf is not None:
            q, verdict = conf
            row["exact"] = {"t": str(q), **_verdict_json(verdict)}
        rows.append(row)
    _emit(args, {"g": arith.to_text(g, "z"), "c": str(c), "N": args.N, "hits": rows}, rows)
    return EXIT_OK


def cmd_escape_grid(args):
    fam, line = _resolve_line(args)
    if len(args.region) != 4:
        raise UsageError("--region needs re_min,re_max,im_min,im_max")
    res = args.res if len(args.res) == 2 else args.res * 2
    if len(res) != 2:
        raise UsageError("--res needs W or W,H")
    grid = prepfind.escape_grid(fam, line, complex(args.c), args.region, res,
                                n_max=args.nmax, radius=args.radius, workers=args.workers)
    meta = grid.metadata()
    if args.out:
        meta["sidecar"] = str(prepfind.write_pgm(grid, args.out))
        meta["pgm"] = str(args.out)
    never = int((grid.cells == grid.n_max + 1).sum())
    meta["never_escaped_cells"] = never
    meta["backend"] = prepfind.kernels.BACKEND
    meta.pop("schema")
    _emit(args, meta, [meta])
    return EXIT_OK


def cmd_structure(args):
    out = {}
    if args.check_root:
        g = _load_poly(args.check_root)
        res = structure.compositional_root(g, args.e)
        out["root"] = {"e": args.e, "found": bool(res),
                       "h": None if res.root is None else arith.to_json_list(res.root),
                       "h_text": None if res.root is None else arith.to_text(res.root, "z"),
                       "witness": res.witness}
    if args.commutant:
        g = _load_poly(args.commutant)
        found = structure.linear_commutant(g, args.nmax, args.deg_cap)
        out["commutant"] = {"n_max": args.nmax, "maps": [str(mu) for mu in found]}
    if args.exceptional:
        g = _load_poly(args.exceptional)
        out["exceptional"] = structure.is_exceptional(g).to_json()
    if args.normal_form:
        g = _load_poly(args.normal_form)
        mu, ghat = structure.to_normal_form(g)
        out["normal_form"] = {"mu": str(mu), "g": arith.to_json_list(ghat),
                              "g_text": arith.to_text(ghat, "z")}
    if not out:
        raise UsageError("structure needs --check-root, --commutant, --exceptional or --normal-form")
    _emit(args, out)
    return EXIT_OK


def cmd_verify_suite(args):
    cfg = suite.SuiteConfig(seed=args.seed, cases=args.cases,
                            suites=args.suites or None,
                            inject_fault=args.inject_fault, workers=args.workers)
    try:
        names = cfg.selected()
    except KeyError as exc:
        raise UsageError(str(exc.args[0]))
    cfg.suites = names
    summaries = [s.to_json() for s in suite.run_suite(cfg)]
    for s in summaries:
        s.pop("schema")
    failed = sum(s["failures"] for s in summaries)
    rows = [{k: v for k, v in s.items() if k != "messages"} for s in summaries]
    _emit(args, {"seed": args.seed, "suites": summaries, "failures": failed}, rows)
    return EXIT_FAIL if failed else EXIT_OK


def _global_options(top):
    """Global flags; the subcommand copy leaves unset flags alone so either position works."""
    dflt = (lambda v: v) if top else (lambda v: argparse.SUPPRESS)
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--seed", type=int, default=dflt(0))
    p.add_argument("--deg-cap", type=int, default=dflt(family.DEFAULT_DEG_CAP))
    p.add_argument("--tol", type=float, default=dflt(prepfind.DEFAULT_ROOT_TOL))
    fmt = p.add_mutually_exclusive_group()
    fmt.add_argument("--json", action="store_true", default=dflt(False),
                     help="JSON output (default)")
    fmt.add_argument("--csv", action="store_true", default=dflt(False),
                     help="CSV output for tabular results")
    return p


def build_parser():
    common = _global_options(top=False)
    parser = argparse.ArgumentParser(prog="preplab", parents=[_global_options(top=True)],
                                     description="Exact and numeric tools for normal-form polynomial families.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("line-build", parents=[common], help="build the line L_sigma")
    p.add_argument("--c", dest="points", type=_rationals, help="base points c_1..c_{m-1}")
    p.add_argument("--sigma", type=_ints)
    p.add_argument("--d", type=int)
    p.set_defaults(func=cmd_line_build)

    p = sub.add_parser("iterate", parents=[common], help="exact orbit of a point")
    p.add_argument("--poly", help='polynomial in z over Q, e.g. "z^2 - 1"')
    p.add_argument("--poly-file", help="polynomial JSON document")
    _line_args(p)
    p.add_argument("--c", required=True)
    p.add_argument("--n", type=int, default=4)
    p.set_defaults(func=cmd_iterate)

    p = sub.add_parser("prep-find", parents=[common], help="numeric preperiodic parameters")
    _line_args(p)
    p.add_argument("--c", required=True)
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--merge-radius", type=float, default=prepfind.DEFAULT_MERGE_RADIUS)
    p.add_argument("--min-tail", type=int, default=1, choices=(0, 1))
    p.set_defaults(func=cmd_prep_find)

    p = sub.add_parser("escape-grid", parents=[common], help="escape-time grid over t")
    _line_args(p)
    p.add_argument("--c", default="0")
    p.add_argument("--region", type=_floats, default=[-2.0, 2.0, -2.0, 2.0])
    p.add_argument("--res", type=_ints, default=[256])
    p.add_argument("--nmax", type=int, default=50)
    p.add_argument("--radius", type=float)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--out")
    p.set_defaults(func=cmd_escape_grid)

    p = sub.add_parser("structure", parents=[common], help="roots, commutants, exceptionality")
    p.add_argument("--check-root", metavar="G.json")
    p.add_argument("--e", type=int, default=2)
    p.add_argument("--commutant", metavar="G.json")
    p.add_argument("--nmax", type=int, default=1)
    p.add_argument("--exceptional", metavar="G.json")
    p.add_argument("--normal-form", metavar="G.json")
    p.set_defaults(func=cmd_structure)

    p = sub.add_parser("verify-suite", parents=[common], help="run the invariant suites")
    p.add_argument("--suites", type=lambda s: [x for x in s.split(",") if x],
                   help=f"comma-separated subset of {','.join(suite.SUITES)}")
    p.add_argument("--cases", type=int)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--inject-fault", action="store_true", help=argparse.SUPPRESS)
    p.set_defaults(func=cmd_verify_suite)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, InvalidInputError, ContractError) as exc:
        print(f"preplab: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except PreplabError as exc:
        print(f"preplab: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
