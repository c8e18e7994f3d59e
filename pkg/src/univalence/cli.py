"""Command-line front end.

Exit codes: 0 verified/success, 1 refuted/failure, 2 indeterminate, 64 usage.
The default grid for ``check`` can be overridden with ``SCHWARZ_GRID``.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from typing import Sequence

from . import checker, families, ode, radius, series
from .errors import UnivalenceError
from .families import FAMILIES, THEOREM_FAMILY, Candidate, RegionQuery

EXIT_USAGE = 64

# flag name for each family parameter
PARAM_FLAGS = {"a": "a", "b": "b", "lambda": "lambda", "mu": "mu", "gamma": "gamma",
               "delta": "delta"}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"{self.prog}: error: {message}\n")
        raise SystemExit(EXIT_USAGE)


def _default_grid() -> int:
    env = os.environ.get("SCHWARZ_GRID")
    if env is None:
        return checker.DEFAULT_GRID
    try:
        return int(env)
    except ValueError:
        raise UsageError(f"SCHWARZ_GRID={env!r} is not an integer") from None


def _add_params(p: argparse.ArgumentParser) -> None:
    g = p.add_argument_group("family parameters")
    for name in PARAM_FLAGS:
        g.add_argument(f"--{name}", type=float, dest=name, default=None,
                       help=f"value of {name}")


def _add_format(p: argparse.ArgumentParser, choices=("json", "human")) -> None:
    p.add_argument("--format", choices=choices, default="json",
                   help="output format (default json)")


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="univalence", description="Schwarzian univalence criteria toolkit.")
    sub = ap.add_subparsers(dest="verb", required=True, parser_class=_Parser)

    p = sub.add_parser("check", help="Nehari and self-majorance certificates")
    p.add_argument("--family", required=True, choices=sorted(FAMILIES))
    _add_params(p)
    p.add_argument("--variant", choices=["A", "B"], default="A",
                   help="B adds the self-majorance certificate (default A)")
    p.add_argument("--grid", type=int, default=None,
                   help=f"grid points (default {checker.DEFAULT_GRID} or $SCHWARZ_GRID)")
    p.add_argument("--eps", type=float, default=checker.DEFAULT_EPS,
                   help="endpoint offset (default 1e-6)")
    p.add_argument("--order", type=int, default=40, help="series order (default 40)")
    _add_format(p)

    p = sub.add_parser("region", help="parameter region membership")
    p.add_argument("--theorem", type=int, required=True, choices=[1, 2, 3, 4, 5])
    p.add_argument("--variant", choices=["A", "B", "B3"], default="A")
    _add_params(p)
    _add_format(p)

    p = sub.add_parser("radius", help="certified radius of univalence")
    p.add_argument("--target", default="errf", choices=sorted(radius.TARGETS))
    p.add_argument("--family", required=True, choices=sorted(FAMILIES))
    _add_params(p)
    p.add_argument("--scan-lambda", dest="scan_lambda", default=None,
                   help="start:stop:step grid for lambda (stop inclusive)")
    p.add_argument("--grid", type=int, default=radius.CERTIFY_GRID,
                   help="verification grid (default 8192)")
    p.add_argument("--workers", type=int, default=1, help="parallel workers (default 1)")
    _add_format(p, ("json", "csv", "human"))

    p = sub.add_parser("zeros", help="zeros of the even solution on [0, 1-eps]")
    p.add_argument("--family", required=True, choices=sorted(FAMILIES))
    _add_params(p)
    p.add_argument("--eps", type=float, default=1e-6, help="endpoint offset (default 1e-6)")
    _add_format(p, ("json", "csv", "human"))

    p = sub.add_parser("tau", help="endpoint limit tau and valence class")
    p.add_argument("--family", required=True, choices=sorted(FAMILIES))
    _add_params(p)
    p.add_argument("--C", type=float, default=1.0, dest="C", help="scale factor (default 1)")
    _add_format(p)

    p = sub.add_parser("series", help="Taylor series of p about 0")
    p.add_argument("--family", required=True, choices=sorted(FAMILIES))
    _add_params(p)
    p.add_argument("--order", type=int, default=series.DEFAULT_ORDER,
                   help=f"truncation order (default {series.DEFAULT_ORDER})")
    _add_format(p)

    p = sub.add_parser("constants", help="critical constants")
    _add_format(p, ("json", "csv", "human"))

    p = sub.add_parser("families", help="family catalogue")
    _add_format(p)

    p = sub.add_parser("figures", help="write figure CSV files")
    p.add_argument("--which", type=int, nargs="+", choices=[1, 2, 3, 4, 5],
                   default=[1, 2, 3, 4, 5])
    p.add_argument("--out", default=".", help="output directory (default .)")
    return ap


def _candidate(args, family: str) -> Candidate:
    info = FAMILIES[family]
    if family == "custom_series":
        raise UsageError("custom_series is not available from the command line")
    given = {k for k in PARAM_FLAGS if getattr(args, k, None) is not None}
    for name in info.params:
        if getattr(args, name) is None:
            raise UsageError(f"--{name} is required for family {family}")
    extra = given - set(info.params)
    if extra:
        raise UsageError(f"--{sorted(extra)[0]} does not apply to family {family}")
    return Candidate(family, tuple(getattr(args, n) for n in info.params))


def _dump(obj) -> str:
    return json.dumps(obj, indent=2)


def _cmd_check(args, out) -> int:
    c = _candidate(args, args.family)
    grid = args.grid if args.grid is not None else _default_grid()
    certs = [checker.check_nehari(c, grid, args.eps)]
    if args.variant == "B":
        certs.append(checker.check_self_majorant(c, args.order))
    region = None
    th = {v: k for k, v in THEOREM_FAMILY.items()}.get(c.family)
    if th is not None:
        region = families.region_contains(RegionQuery(th, args.variant, c.params))
    if args.format == "json":
        doc = {"candidate": c.label(), "certificates": [x.to_dict() for x in certs]}
        if region is not None:
            doc["region"] = {"inside": region.inside, "violated": region.violated,
                             "text": region.text}
        out.write(_dump(doc) + "\n")
    else:
        out.write(f"{c.label()}\n")
        for x in certs:
            line = f"  {x.check_id}: {x.status}"
            if x.witness:
                line += f"  witness={x.witness}"
            out.write(line + "\n")
        if region is not None:
            if region.inside:
                out.write(f"  region {args.variant}: inside\n")
            else:
                out.write(f"  region {args.variant}: outside, violates {region.violated}: "
                          f"{region.text}\n")
    return checker.exit_code(certs)


def _cmd_region(args, out) -> int:
    fam_name = THEOREM_FAMILY[args.theorem]
    if args.variant == "B3" and args.theorem != 3:
        raise UsageError("--variant B3 exists for theorem 3 only")
    c = _candidate(args, fam_name)
    v = families.region_contains(RegionQuery(args.theorem, args.variant, c.params))
    if args.format == "json":
        out.write(_dump({"theorem": args.theorem, "variant": args.variant,
                         "params": list(c.params), "inside": v.inside,
                         "violated": v.violated, "text": v.text}) + "\n")
    elif v.inside:
        out.write(f"theorem {args.theorem} variant {args.variant}: inside\n")
    else:
        out.write(f"theorem {args.theorem} variant {args.variant}: outside; "
                  f"violates {v.violated}: {v.text}\n")
    return 0 if v.inside else 1


def _cmd_radius(args, out) -> int:
    arity = len(FAMILIES[args.family].params)
    if args.scan_lambda is not None:
        if "lambda" not in FAMILIES[args.family].params or arity != 1:
            raise UsageError(f"--scan-lambda needs a one-parameter lambda family, "
                             f"not {args.family}")
        if args.__dict__.get("lambda") is not None:
            raise UsageError("--lambda and --scan-lambda are exclusive")
        try:
            grid = [(v,) for v in radius.parse_scan(args.scan_lambda)]
        except ValueError as e:
            raise UsageError(f"--scan-lambda: {e}") from None
    else:
        grid = [_candidate(args, args.family).params]
    est = radius.maximize_radius(args.target, args.family, grid, workers=args.workers,
                                 grid=args.grid)
    if args.format == "json":
        out.write(_dump(est.to_dict()) + "\n")
    elif args.format == "csv":
        out.write(est.margin_csv())
    else:
        out.write(f"{args.target}: r >= {est.r_lower:.4f} via {est.family.label()} "
                  f"(min margin {est.margin_min:.3g} at x = {est.margin_argmin:.4f})\n")
    return 0


def _cmd_zeros(args, out) -> int:
    c = _candidate(args, args.family)
    sol = ode.solve_even(c, eps=args.eps)
    rep = ode.count_zeros(sol)
    if args.format == "json":
        out.write(_dump({"candidate": c.label(), "eps": args.eps, "count": rep.count,
                         "zeros": rep.to_json(),
                         "wronskian_drift": sol.wronskian_drift}) + "\n")
    elif args.format == "csv":
        out.write(sol.to_csv())
    else:
        out.write(f"{c.label()}: {rep.count} zero(s) on [0, 1-{args.eps:g}]\n")
        for z in rep.locations:
            out.write(f"  {z:.12f}\n")
    return 0


def _cmd_tau(args, out) -> int:
    c = _candidate(args, args.family)
    v = checker.classify_valence(c, args.C)
    if args.format == "json":
        out.write(_dump({"candidate": c.label(), **v.to_dict()}) + "\n")
    else:
        out.write(f"{c.label()}: tau = {v.tau:.12g}, C*tau = {v.scaled_tau:.12g} -> {v.kind}")
        out.write(f" (sigma: {v.sigma_hint})\n" if v.sigma_hint else "\n")
    return 0


def _cmd_series(args, out) -> int:
    c = _candidate(args, args.family)
    s = families.p_series(c, args.order)
    if args.format == "json":
        out.write(s.to_json() + "\n")
    else:
        for k, v in enumerate(s.coeffs):
            if v != 0.0:
                out.write(f"x^{k}: {v:.17g}\n")
    return 0


CONSTANT_LABELS = {
    "lambda0_thm4": "((4+pi^2) - (16+pi^4)^(1/2))/8",
    "lambda0_thm5": "[(4+5pi^2/4) - ((4+5pi^2/4)^2 - 8pi^2)^(1/2)]/pi^2",
    "a0": "(sqrt(3)+1)/4",
    "a1": "(sqrt(7)+1)/4",
    "a_cross": "1/2 + sqrt(2)/3",
}


def _cmd_constants(args, out) -> int:
    cc = families.critical_constants()
    if args.format == "json":
        out.write(_dump(cc) + "\n")
    elif args.format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["name", "value", "closed_form"])
        for k, v in cc.items():
            w.writerow([k, repr(v), CONSTANT_LABELS[k]])
        out.write(buf.getvalue())
    else:
        for k, v in cc.items():
            out.write(f"{k:<14} {v:.6f}  {CONSTANT_LABELS[k]}\n")
    return 0


def _cmd_families(args, out) -> int:
    cat = families.catalogue()
    if args.format == "json":
        out.write(_dump(cat) + "\n")
    else:
        for f in cat:
            out.write(f"{f['family']:<14} ({', '.join(f['params'])})  {f['domain']}\n")
    return 0


def _cmd_figures(args, out) -> int:
    from .figures import emit_figures

    for path in emit_figures(args.which, args.out):
        out.write(f"{path}\n")
    return 0


COMMANDS = {
    "check": _cmd_check, "region": _cmd_region, "radius": _cmd_radius, "zeros": _cmd_zeros,
    "tau": _cmd_tau, "series": _cmd_series, "constants": _cmd_constants,
    "families": _cmd_families, "figures": _cmd_figures,
}


def run(argv: Sequence[str] | None = None, out=None) -> int:
    out = sys.stdout if out is None else out
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code) if e.code is not None else 0
    try:
        return COMMANDS[args.verb](args, out)
    except UsageError as e:
        sys.stderr.write(f"univalence {args.verb}: error: {e}\n")
        return EXIT_USAGE
    except UnivalenceError as e:
        sys.stderr.write(f"univalence {args.verb}: {type(e).__name__}: {e}\n")
        return 1


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
