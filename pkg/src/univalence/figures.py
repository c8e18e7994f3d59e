"""CSV data for the region plots (figures 1-4) and the errf comparison (figure 5)."""

from __future__ import annotations

import csv
import io
from pathlib import Path
from typing import Callable

import numpy as np

from . import families as fam
from .errors import IoFailure
from .families import Candidate, RegionQuery, p_eval, region_contains
from .radius import errf_schwarzian_bound

HEADER = ["param1", "param2", "bound_id", "value"]
FIGURE5_R = 1.365
FIGURE5_LAMBDA = 0.2


def _active(theorem: int, variant: str, p1: float, p2: float) -> int:
    """1 when the boundary point also satisfies every other inequality."""
    return int(region_contains(RegionQuery(theorem, variant, (p1, p2))).inside)


def _curve_rows(theorem: int, variant: str, curves: dict[str, Callable[[float], float]],
                lo: float, hi: float, n: int):
    rows = []
    for bound_id, f in curves.items():
        for a in np.linspace(lo, hi, n):
            a = float(a)
            v = float(f(a))
            rows.append([a, v, bound_id, _active(theorem, variant, a, v)])
    return rows


def figure_rows(which: int, n: int = 201) -> tuple[list[str], list[list]]:
    if which in (1, 2):
        curves = {"thm1.lambda_lower": fam.thm1_lambda_lower,
                  "thm1.lambda_upper": fam.thm1_lambda_upper}
        if which == 2:
            curves["thm1.lambda_selfmaj"] = fam.thm1_lambda_selfmaj
        return HEADER, _curve_rows(1, "A" if which == 1 else "B", curves, 0.5, 1.0, n)
    if which in (3, 4):
        curves = {"thm3.b_lower": fam.thm3_b_lower, "thm3.b_upper": lambda a: a - 0.5}
        if which == 4:
            curves["thm3.b_lower_a1"] = lambda a: a - 1.0
            curves["thm3.b_upper_S"] = fam.thm3_S
            curves["thm3.b_upper_T"] = fam.thm3_T
        return HEADER, _curve_rows(3, "A" if which == 3 else "B", curves, 0.5, 1.0, n)
    if which == 5:
        xs = np.linspace(0.0, 0.99, n)
        c = Candidate("thm5", (FIGURE5_LAMBDA,))
        # plotted as r^2 + r^4 x^2 against p, i.e. half of each side
        bound = 0.5 * errf_schwarzian_bound(FIGURE5_R, xs)
        p = p_eval(c, xs)
        return ["x", "errf_bound", "p_thm5"], [[float(x), float(b), float(q)]
                                               for x, b, q in zip(xs, bound, p)]
    raise ValueError(f"no figure {which}")


def figure_csv(which: int, n: int = 201) -> str:
    header, rows = figure_rows(which, n)
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for r in rows:
        w.writerow([repr(v) if isinstance(v, float) else v for v in r])
    return buf.getvalue()


def emit_figures(which, out: str | Path, n: int = 201) -> list[Path]:
    """Write ``figure<k>.csv`` for each requested figure into ``out``."""
    ids = [which] if isinstance(which, int) else list(which)
    out = Path(out)
    paths = []
    try:
        out.mkdir(parents=True, exist_ok=True)
        for k in ids:
            path = out / f"figure{k}.csv"
            path.write_text(figure_csv(k, n))
            paths.append(path)
    except OSError as e:
        raise IoFailure(str(e)) from e
    return paths
