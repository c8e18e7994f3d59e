"""Numerical certifiers: Nehari property, self-majorance, endpoint behaviour.

Verdicts are high-confidence numerics on explicit grids, not proofs.  Each
one comes back as a :class:`Certificate` recording the grid and slack used,
so a rerun with the same settings reproduces it exactly.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Any, Sequence

import numpy as np

from . import families as fam
from .errors import (
    LimitUnavailable,
    NoLimit,
    NoSeriesForm,
    SeriesDivergence,
)
from .families import Candidate, phi_eval, p_complex, p_eval, p_series, tau_closed_form
from .series import TaylorSeries, schwarzian

VERIFIED = "verified"
REFUTED = "refuted"
INDETERMINATE = "indeterminate"
STATUSES = (VERIFIED, REFUTED, INDETERMINATE)

DEFAULT_GRID = 4096
DEFAULT_EPS = 1e-6


@dataclass(frozen=True)
class Certificate:
    check_id: str
    status: str
    witness: dict[str, Any] | None = None
    grid: dict[str, Any] = field(default_factory=dict)
    tolerance: float = 0.0
    detail: dict[str, Any] = field(default_factory=dict, compare=False)

    def __post_init__(self):
        if self.status not in STATUSES:
            raise ValueError(f"bad status {self.status!r}")
        if self.status == REFUTED and self.witness is None:
            raise ValueError("a refutation needs a witness")
        if self.status == VERIFIED and self.witness is not None:
            raise ValueError("a verified certificate carries no witness")

    @property
    def verified(self) -> bool:
        return self.status == VERIFIED

    @property
    def refuted(self) -> bool:
        return self.status == REFUTED

    def to_dict(self) -> dict[str, Any]:
        return {"check_id": self.check_id, "status": self.status, "witness": self.witness,
                "grid": self.grid, "tolerance": self.tolerance}

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, d: dict[str, Any]) -> "Certificate":
        return cls(d["check_id"], d["status"], d.get("witness"), dict(d.get("grid", {})),
                   float(d.get("tolerance", 0.0)))

    @classmethod
    def from_json(cls, text: str) -> "Certificate":
        return cls.from_dict(json.loads(text))


def exit_code(certs: Sequence[Certificate]) -> int:
    """0 when all verified, 1 if any refuted, otherwise 2."""
    if any(c.status == REFUTED for c in certs):
        return 1
    if any(c.status == INDETERMINATE for c in certs):
        return 2
    return 0


# -- Nehari property ----------------------------------------------------------------

def _first_monotone_break(phi: np.ndarray, slack: float) -> int | None:
    # compare against the running minimum, so any increase larger than the
    # slack relative to an earlier point counts, however gradual
    run_min = np.minimum.accumulate(phi)
    bad = np.nonzero(phi[1:] > run_min[:-1] + slack)[0]
    return int(bad[0]) + 1 if bad.size else None


def check_nehari(c: Candidate, grid: int = DEFAULT_GRID, eps: float = DEFAULT_EPS) -> Certificate:
    """Positivity of ``p`` and monotone decrease of ``phi = p (1-x^2)^2`` on a grid.

    The grid is ``grid`` uniform points on ``[0, 1-eps]`` followed by the
    analytic endpoint value ``phi(1)``.
    """
    if grid < 256:
        raise ValueError("grid must be at least 256")
    if not 0.0 < eps <= 1e-3:
        raise ValueError("eps must lie in (0, 1e-3]")
    xs = np.linspace(0.0, 1.0 - eps, grid)
    phi = np.asarray(phi_eval(c, xs), dtype=float)
    detail: dict[str, Any] = {}
    try:
        phi_end = float(phi_eval(c, 1.0))
        xs = np.append(xs, 1.0)
        phi = np.append(phi, phi_end)
    except LimitUnavailable:
        detail["endpoint"] = "limit unavailable; grid only"
    if not np.all(np.isfinite(phi)):
        i = int(np.nonzero(~np.isfinite(phi))[0][0])
        return Certificate("nehari", REFUTED, {"x": float(xs[i]), "value": float(phi[i]),
                                               "reason": "non-finite"},
                           {"n": grid, "eps": eps}, 0.0, detail)
    slack = 1e-10 * max(1.0, abs(float(phi[0])))
    gridinfo = {"n": grid, "eps": eps}
    witnesses = []
    interior = xs < 1.0
    nonpos = np.nonzero(interior & (phi <= 0.0))[0]
    if nonpos.size:
        i = int(nonpos[0])
        witnesses.append({"x": float(xs[i]), "value": float(phi[i]), "reason": "p <= 0"})
    if not interior.all() and phi[-1] < -slack:
        witnesses.append({"x": 1.0, "value": float(phi[-1]), "reason": "phi(1) < 0"})
    j = _first_monotone_break(phi, slack)
    if j is not None:
        witnesses.append({"x": float(xs[j]), "value": float(phi[j] - np.min(phi[:j])),
                          "reason": "phi increases"})
    if witnesses:
        w = min(witnesses, key=lambda d: d["x"])
        return Certificate("nehari", REFUTED, w, gridinfo, slack, detail)
    return Certificate("nehari", VERIFIED, None, gridinfo, slack, detail)


# -- polynomial route for the algebraic families -----------------------------------

def thm1_psi_coeffs(a: float, lam: float) -> tuple[float, float, float, float]:
    """``phi(x) = A + B t + C t^2 + D t^3`` with ``t = x^2``."""
    A = 2 * (a - lam)
    B = 2 * (a - 2 * a * a + 4 * a * lam - 2 * lam * lam + 2 * lam)
    C = -2 * lam * (4 * a - 4 * lam + 1)
    D = -4 * lam * lam
    return A, B, C, D


def thm3_H(t, a: float, b: float):
    """``(1+t)^2 psi'(t) / 4`` where ``psi(t) = phi(x)`` and ``t = (1-x^2)/(1+x^2)``."""
    k = a - b - 0.5
    return ((1 - t * t) * 2 * a * k + 2 * t * t * (a - b) * k
            + t * (1 + t) ** 2 * (b + 2 * a * b) + t * (1 - t * t) * 2 * b * k)


def _extrema_on_unit(poly: np.poly1d) -> np.ndarray:
    crit = [r.real for r in poly.deriv().roots if abs(r.imag) < 1e-12 and 0 < r.real < 1]
    return np.array([0.0, 1.0] + crit)


def nehari_polynomial(c: Candidate, tol: float = 1e-10) -> Certificate:
    """Exact-extremum version of :func:`check_nehari` for ``thm1`` and ``thm3``."""
    if c.family == "thm1":
        A, B, C, D = thm1_psi_coeffs(*c.params)
        dpsi = np.poly1d([3 * D, 2 * C, B])
        pts = _extrema_on_unit(dpsi)
        worst = float(np.max(dpsi(pts)))
        psi_end = A + B + C + D
        ok_sign = A > 0 and psi_end >= -tol
        ok_mono = worst <= tol * max(1.0, abs(A))
        t_bad = float(pts[np.argmax(dpsi(pts))])
        x_bad = math.sqrt(t_bad)
    elif c.family == "thm3":
        a, b = c.params
        t = np.poly1d([1.0, 0.0])
        H = thm3_H(t, a, b)
        pts = _extrema_on_unit(H)
        worst = float(-np.min(H(pts)))
        ok_sign = (a + b) > 0 and 4 * a * (1 - a) >= -tol
        ok_mono = worst <= tol
        t_bad = float(pts[np.argmin(H(pts))])
        x_bad = math.sqrt((1 - t_bad) / (1 + t_bad))
    else:
        raise ValueError("polynomial route exists for thm1 and thm3 only")
    info = {"n": 0, "eps": 0.0}
    if ok_sign and ok_mono:
        return Certificate("nehari_polynomial", VERIFIED, None, info, tol)
    reason = "phi increases" if not ok_mono else "sign"
    return Certificate("nehari_polynomial", REFUTED, {"x": x_bad, "value": worst,
                                                      "reason": reason}, info, tol)


# -- self-majorance -----------------------------------------------------------------

COEFF_TOL = 1e-12
RATIO_TOL = 1e-9


def _polar(radii, angles):
    r = np.asarray(radii, dtype=float)
    th = np.asarray(angles, dtype=float)
    return r[:, None], th[None, :]


def check_self_majorant(c: Candidate, N: int = 40, circle_samples: int = 256,
                        radii: Sequence[float] | None = None) -> Certificate:
    """``|p(z)| <= p(|z|)``: positive coefficients verify; a sampled violation refutes."""
    if N < 16:
        raise ValueError("N must be at least 16")
    gridinfo = {"n": N, "eps": 0.0, "circle_samples": circle_samples}
    try:
        s = p_series(c, N)
    except NoSeriesForm as e:
        return Certificate("self_majorant", INDETERMINATE, None, gridinfo, COEFF_TOL,
                           {"reason": str(e)})
    coeffs = s.coeffs
    neg = np.nonzero(coeffs < -COEFF_TOL)[0]
    if not neg.size:
        return Certificate("self_majorant", VERIFIED, None, gridinfo, COEFF_TOL)
    rr = np.linspace(0.05, 0.95, 19) if radii is None else np.asarray(radii, dtype=float)
    th = np.linspace(0.0, 2 * np.pi, circle_samples, endpoint=False)
    R, TH = _polar(rr, th)
    z = R * np.exp(1j * TH)
    with np.errstate(all="ignore"):
        mod = np.abs(p_complex(c, z))
        ref = np.asarray(p_eval(c, rr), dtype=float)[:, None]
        ratio = mod / ref
    bad = np.isfinite(ratio) & (ref > 0) & (ratio > 1 + RATIO_TOL)
    gridinfo["radii"] = len(rr)
    if bad.any():
        i, j = np.unravel_index(np.argmax(np.where(bad, ratio, -np.inf)), ratio.shape)
        w = {"r": float(rr[i]), "theta": float(th[j]), "ratio": float(ratio[i, j]),
             "index": int(neg[0]), "value": float(coeffs[neg[0]])}
        return Certificate("self_majorant", REFUTED, w, gridinfo, RATIO_TOL)
    return Certificate("self_majorant", INDETERMINATE, None, gridinfo, COEFF_TOL,
                       {"negative_index": int(neg[0]), "value": float(coeffs[neg[0]])})


def coefficient_conditions(c: Candidate, N: int = 40) -> Certificate:
    """Sign conditions behind self-majorance for the trigonometric families.

    ``thm2`` is judged through the odd series of ``L(x)``; ``thm4`` through
    ``tan(pi x/2)``; ``thm5`` through ``sec x - cos x``; others fall back to
    the coefficients of ``p`` itself.
    """
    from .series import cos_series, sec_series, tan_half_series

    if c.family == "thm2":
        lam, mu = c.params
        s = fam.l_series(lam, mu, N)
    elif c.family == "thm4":
        s = tan_half_series(N)
    elif c.family == "thm5":
        s = sec_series(N) - cos_series(N, 1.0)
    else:
        s = p_series(c, N)
    neg = np.nonzero(s.coeffs < -COEFF_TOL)[0]
    info = {"n": N, "eps": 0.0}
    if neg.size:
        k = int(neg[0])
        return Certificate("coefficients", REFUTED, {"index": k, "value": float(s.coeffs[k])},
                           info, COEFF_TOL)
    return Certificate("coefficients", VERIFIED, None, info, COEFF_TOL)


# -- tau and valence -------------------------------------------------------------------

TAU_KS = tuple(range(8, 21))
TAU_AGREE = 1e-6


def tau_extrapolated(c: Candidate, ks: Sequence[int] = TAU_KS, levels: int = 3) -> float:
    """Richardson extrapolation of ``phi(1 - h)`` over ``h = 2^-k``."""
    h = [2.0 ** -k for k in ks]
    col = [float(phi_eval(c, 1.0 - hk)) for hk in h]
    if not all(math.isfinite(v) for v in col):
        raise NoLimit("phi not finite near the endpoint")
    table = [col]
    for j in range(1, levels + 1):
        prev = table[-1]
        f = 2.0**j - 1.0
        table.append([prev[i + 1] + (prev[i + 1] - prev[i]) / f for i in range(len(prev) - 1)])
    last = table[-1]
    scale = max(1.0, abs(last[-1]))
    if abs(last[-1] - last[-2]) > TAU_AGREE * scale or abs(last[-1] - table[0][-1]) > 1e-3 * scale:
        raise NoLimit(f"extrapolants disagree: {last[-2]!r} vs {last[-1]!r}")
    return last[-1]


def tau(c: Candidate) -> float:
    """``lim_{x->1} p(x)(1-x^2)^2``: closed form when known, else extrapolated."""
    t = tau_closed_form(c)
    return t if t is not None else tau_extrapolated(c)


VALENCE_TOL = 1e-9


@dataclass(frozen=True)
class ValenceVerdict:
    kind: str  # finite / infinite / boundary
    tau: float
    scaled_tau: float
    sigma_hint: str | None = None

    def to_dict(self) -> dict[str, Any]:
        return {"kind": self.kind, "tau": self.tau, "scaled_tau": self.scaled_tau,
                "sigma_hint": self.sigma_hint}


def classify_valence(c: Candidate, C: float = 1.0) -> ValenceVerdict:
    """Finite/infinite/boundary valence of ``C p`` from ``C tau`` versus 1."""
    if C <= 0:
        raise ValueError("C must be positive")
    t = tau(c)
    ct = C * t
    hint = None
    if abs(ct - 1.0) <= VALENCE_TOL:
        kind = "boundary"
        if c.family == "chuaqui_sigma" and C == 1.0:
            lam = c.params[0]
            hint = "infinite" if lam > 1 else ("finite" if lam < 1 else "undecided")
    else:
        kind = "finite" if ct < 1.0 else "infinite"
    return ValenceVerdict(kind, t, ct, hint)


# -- Schwarzian bound on a polar grid ----------------------------------------------------

def _sf_identity(z, **_):
    return np.zeros_like(z)


def _sf_koebe(z, **_):
    return -6.0 / (1 - z * z) ** 2


def _sf_hille(z, gamma=1.0, **_):
    return 2.0 * (1 + gamma * gamma) / (1 - z * z) ** 2


def _sf_errf(z, r=1.0, **_):
    return -2.0 * r * r * (1 + r * r * z * z)


def _sf_z_over(z, **_):
    return 6.0 / (1 + z * z) ** 2


CLOSED_FORM_SCHWARZIANS = {
    "identity": _sf_identity,
    "koebe": _sf_koebe,
    "hille_quotient": _sf_hille,
    "errf": _sf_errf,
    "z_over_1_minus_z2": _sf_z_over,
}


def verify_schwarzian_bound(f: str | TaylorSeries, c: Candidate,
                            radii: Sequence[float], angles: Sequence[float] | int = 128,
                            **f_params) -> Certificate:
    """Sampled check of ``|Sf(z)| <= 2 p(|z|)`` on a polar grid."""
    rr = np.asarray(radii, dtype=float)
    if np.any(rr >= 1.0) or np.any(rr < 0.0):
        raise ValueError("radii must lie in [0, 1)")
    th = (np.linspace(0, 2 * np.pi, angles, endpoint=False) if isinstance(angles, int)
          else np.asarray(angles, dtype=float))
    R, TH = _polar(rr, th)
    z = R * np.exp(1j * TH)
    if isinstance(f, TaylorSeries):
        sf = schwarzian(f)
        trust = 0.9 * min(f.convergence_radius(), sf.convergence_radius())
        if np.max(rr) > trust:
            raise SeriesDivergence(f"|z| = {np.max(rr):g} beyond trusted radius {trust:.4g}")
        vals = sf(z)
        label = "series"
    else:
        fn = CLOSED_FORM_SCHWARZIANS.get(f)
        if fn is None:
            raise ValueError(f"no closed-form Schwarzian registered for {f!r}")
        vals = fn(z, **f_params)
        label = f
    bound = 2.0 * np.asarray(p_eval(c, rr), dtype=float)[:, None]
    ratio = np.abs(vals) / bound
    info = {"n": int(rr.size * th.size), "eps": float(1.0 - np.max(rr)),
            "radii": int(rr.size), "angles": int(th.size)}
    i, j = np.unravel_index(np.argmax(ratio), ratio.shape)
    worst = float(ratio[i, j])
    detail = {"f": label, "worst_ratio": worst}
    if worst > 1.0 + RATIO_TOL:
        w = {"r": float(rr[i]), "theta": float(th[j]), "ratio": worst}
        return Certificate("schwarzian_bound", REFUTED, w, info, RATIO_TOL, detail)
    return Certificate("schwarzian_bound", VERIFIED, None, info, RATIO_TOL, detail)


# -- inequalities on G -------------------------------------------------------------------

G_SLACK = 1e-10


def check_g_inequalities(n: int = 10_000) -> dict[str, Certificate]:
    """Four pointwise facts about ``G(x) = (1-x^2) tan(pi x/2)`` on [0, 1].

    concave: G'' <= 0; R_monotone: R nonincreasing from R(0) = 1;
    G_upper: G <= (2/pi)(1+x); Gp_upper: (pi/2) G' <= 1 + (pi^2/4)(1-x^2).
    """
    xs = np.linspace(0.0, 1.0, n)
    G = np.array([fam.G(x) for x in xs])
    Gp = np.array([fam.G_prime(x) for x in xs])
    Gpp = np.array([fam.G_second(x) for x in xs])
    R = np.array([fam.R(x) for x in xs])
    residuals = {
        "concave": -Gpp,
        "R_monotone": np.concatenate([[1.0 - R[0]], R[:-1] - R[1:]]),
        "G_upper": (2 / np.pi) * (1 + xs) - G,
        "Gp_upper": 1 + (np.pi**2 / 4) * (1 - xs * xs) - (np.pi / 2) * Gp,
    }
    out = {}
    for key, res in residuals.items():
        k = int(np.argmin(res))
        info = {"n": n, "eps": 0.0}
        if res[k] < -G_SLACK:
            out[key] = Certificate(f"lemma_g.{key}", REFUTED,
                                   {"x": float(xs[k]), "value": float(res[k])}, info, G_SLACK)
        else:
            out[key] = Certificate(f"lemma_g.{key}", VERIFIED, None, info, G_SLACK,
                                   {"min_residual": float(res[k])})
    return out


# -- nonvanishing of the even solution ------------------------------------------------

def check_nonvanishing(c: Candidate, eps: float = DEFAULT_EPS) -> Certificate:
    """The even solution has no zero on ``[0, 1-eps]``."""
    from .ode import solve_even

    sol = solve_even(c, eps=eps)
    info = {"n": int(len(sol.nodes)), "eps": eps}
    detail = {"wronskian_drift": sol.wronskian_drift}
    if sol.zeros:
        return Certificate("nonvanishing", REFUTED, {"x": sol.zeros[0], "count": len(sol.zeros)},
                           info, 0.0, detail)
    return Certificate("nonvanishing", VERIFIED, None, info, 0.0, detail)
