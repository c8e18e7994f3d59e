"""Lower bounds for radii of univalence by dominating a Schwarzian majorant.

For ``f(rz)`` with ``|S f(rz)| <= B(r, |z|)`` it suffices that
``B(r, x) <= 2 p(x)`` on [0, 1) for an admissible ``p``.  ``r`` is then
pushed up by bisection.
"""

from __future__ import annotations

import csv
import io
import json
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Iterable, Sequence

import numpy as np

from .checker import check_nehari, check_nonvanishing, check_self_majorant
from .errors import CandidateNotAdmissible, EmptyAdmissibleSet, EndpointSingularity
from .families import Candidate, p_eval

ERRF_TRUE_RADIUS = 1.5748
RADIUS_TOL = 1e-4
CERTIFY_GRID = 8192
CERTIFY_EPS = 1e-6


def errf_schwarzian_bound(r, x):
    """``2 r^2 (1 + r^2 x^2)``, the modulus majorant of ``S(errf(rz))`` on ``|z| = x``."""
    r2 = np.asarray(r, dtype=float) ** 2
    out = 2.0 * r2 * (1.0 + r2 * np.asarray(x, dtype=float) ** 2)
    return float(out) if np.ndim(out) == 0 else out


TARGETS: dict[str, Callable] = {"errf": errf_schwarzian_bound}


@lru_cache(maxsize=512)
def _admissibility(c: Candidate) -> tuple[str, ...]:
    problems = []
    for cert in (check_nehari(c), check_self_majorant(c)):
        if not cert.verified:
            problems.append(f"{cert.check_id}: {cert.status}")
    if not problems:
        cert = check_nonvanishing(c)
        if not cert.verified:
            problems.append(f"{cert.check_id}: {cert.status}")
    return tuple(problems)


def admissible(c: Candidate) -> bool:
    if c.family == "custom_series":
        return not _admissibility.__wrapped__(c)
    return not _admissibility(c)


def require_admissible(c: Candidate) -> None:
    problems = (_admissibility.__wrapped__(c) if c.family == "custom_series"
                else _admissibility(c))
    if problems:
        raise CandidateNotAdmissible(f"{c.label()}: " + "; ".join(problems))


@dataclass(frozen=True)
class CertifyResult:
    certified: bool
    r: float
    worst_x: float
    deficit: float  # min over the grid of 2p - bound; negative when failed

    def to_dict(self) -> dict:
        return {"certified": self.certified, "r": self.r, "worst_x": self.worst_x,
                "deficit": self.deficit}


def _grid(n: int, eps: float) -> np.ndarray:
    return np.linspace(0.0, 1.0 - eps, n)


def _two_p(c: Candidate, xs: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    two_p = 2.0 * np.asarray(p_eval(c, xs), dtype=float)
    try:
        end = 2.0 * float(p_eval(c, 1.0))
        return np.append(xs, 1.0), np.append(two_p, end)
    except EndpointSingularity:
        return xs, two_p


def certify(r: float, c: Candidate, grid: int = CERTIFY_GRID, target: str = "errf",
            eps: float = CERTIFY_EPS, check: bool = True) -> CertifyResult:
    """Is ``bound(r, x) <= 2 p(x)`` on the grid (and at x = 1 when p is finite there)?"""
    if grid < 4096:
        raise ValueError("grid must be at least 4096")
    if check:
        require_admissible(c)
    xs, two_p = _two_p(c, _grid(grid, eps))
    margin = two_p - TARGETS[target](r, xs)
    k = int(np.argmin(margin))
    return CertifyResult(bool(margin[k] >= 0.0), float(r), float(xs[k]), float(margin[k]))


def _bisect(c: Candidate, grid: int, target: str, tol: float, eps: float):
    trace = []

    def ok(r):
        res = certify(r, c, grid, target, eps, check=False)
        trace.append((r, res.certified))
        return res.certified

    lo, hi = 0.0, 1.0
    while ok(hi):
        lo, hi = hi, 2.0 * hi
        if hi > 1e6:
            raise RuntimeError("radius search did not terminate")
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if ok(mid):
            lo = mid
        else:
            hi = mid
    return lo, trace


@dataclass(frozen=True)
class RadiusEstimate:
    target: str
    r_lower: float
    family: Candidate
    margin: tuple[tuple[float, float, float], ...] = field(repr=False)
    search_trace: tuple[tuple[float, bool], ...] = field(repr=False)

    @property
    def margin_min(self) -> float:
        return min(tp - b for _, tp, b in self.margin)

    @property
    def margin_argmin(self) -> float:
        return min(self.margin, key=lambda row: row[1] - row[2])[0]

    def to_dict(self) -> dict:
        return {"target": self.target, "r_lower": self.r_lower,
                "family": self.family.family, "params": list(self.family.params),
                "margin_min": self.margin_min, "margin_argmin": self.margin_argmin,
                "search_trace": [[r, ok] for r, ok in self.search_trace]}

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    def margin_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["x", "two_p", "bound"])
        for row in self.margin:
            w.writerow([repr(v) for v in row])
        return buf.getvalue()


def margin_profile(r: float, c: Candidate, grid: int = CERTIFY_GRID, target: str = "errf",
                   eps: float = CERTIFY_EPS) -> tuple[tuple[float, float, float], ...]:
    xs, two_p = _two_p(c, _grid(grid, eps))
    b = TARGETS[target](r, xs)
    return tuple((float(x), float(tp), float(bb)) for x, tp, bb in zip(xs, two_p, b))


def _search_one(args):
    c, grid, target, tol, eps = args
    if not admissible(c):
        return None
    r, trace = _bisect(c, grid, target, tol, eps)
    return c, r, tuple(trace)


def maximize_radius(target: str, family: str, param_grid: Iterable[Sequence[float]],
                    workers: int = 1, grid: int = CERTIFY_GRID, tol: float = RADIUS_TOL,
                    eps: float = CERTIFY_EPS) -> RadiusEstimate:
    """Best certified radius over a set of parameter points of one family.

    Inadmissible points are skipped.  Ties are broken by the parameter tuple,
    so the answer does not depend on ``workers``.
    """
    if target not in TARGETS:
        raise ValueError(f"unknown target {target!r}")
    cands = [Candidate(family, tuple(p)) for p in param_grid]
    jobs = [(c, grid, target, tol, eps) for c in cands]
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as ex:
            results = list(ex.map(_search_one, jobs))
    else:
        results = [_search_one(j) for j in jobs]
    results = [r for r in results if r is not None]
    if not results:
        raise EmptyAdmissibleSet(f"no admissible {family} parameters in the grid")
    best = min(results, key=lambda t: (-t[1], t[0].params))
    c, r, trace = best
    return RadiusEstimate(target, r, c, margin_profile(r, c, grid, target, eps), trace)


def parse_scan(text: str) -> list[float]:
    """``"start:stop:step"`` (stop inclusive) into a list of floats."""
    try:
        start, stop, step = (float(s) for s in text.split(":"))
    except ValueError as e:
        raise ValueError(f"bad scan {text!r}; expected start:stop:step") from e
    if step <= 0 or stop < start:
        raise ValueError(f"bad scan {text!r}")
    n = int(math.floor((stop - start) / step + 1e-9)) + 1
    return [round(start + i * step, 12) for i in range(n)]
