"""Real-line integration of ``u'' + p(x) u = 0`` up to ``1 - eps``.

The even solution (u(0)=1, u'(0)=0) and the odd one (v(0)=0, v'(0)=1) are
carried together so the Wronskian ``u v' - u' v`` (identically 1) doubles
as an accuracy monitor.  The stepper is a Dormand-Prince 5(4) pair with a
step ceiling of ``0.25 / sqrt(1 + |p|)`` so that no step spans more than a
small fraction of a local oscillation.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np
from scipy.integrate import quad

from .errors import (
    EvaluationFailure,
    OscillatoryNearEndpoint,
    StepUnderflow,
    ZeroCrossed,
)
from .families import Candidate, endpoint_multiplicity, p_eval

# Dormand-Prince 5(4) tableau
_C = (0.0, 1 / 5, 3 / 10, 4 / 5, 8 / 9, 1.0, 1.0)
_A = (
    (),
    (1 / 5,),
    (3 / 40, 9 / 40),
    (44 / 45, -56 / 15, 32 / 9),
    (19372 / 6561, -25360 / 2187, 64448 / 6561, -212 / 729),
    (9017 / 3168, -355 / 33, 46732 / 5247, 49 / 176, -5103 / 18656),
    (35 / 384, 0.0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84),
)
_B = (35 / 384, 0.0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84, 0.0)
_E = (71 / 57600, 0.0, -71 / 16695, 71 / 1920, -17253 / 339200, 22 / 525, -1 / 40)

DEFAULT_RTOL = 1e-11
DEFAULT_ATOL = 1e-15
ZERO_TOL = 1e-10


def _rhs(p: Callable[[float], float], x: float, y: Sequence[float]) -> tuple:
    px = p(x)
    if not math.isfinite(px):
        raise EvaluationFailure(f"p({x!r}) is not finite")
    return (y[1], -px * y[0], y[3], -px * y[2])


def _step(p, x, y, h, k1=None):
    """One DOP5 step; returns (y5, error_vector, k7 for FSAL)."""
    ks = [k1 if k1 is not None else _rhs(p, x, y)]
    for i in range(1, 7):
        a = _A[i]
        yi = tuple(y[j] + h * sum(a[m] * ks[m][j] for m in range(i)) for j in range(4))
        ks.append(_rhs(p, x + _C[i] * h, yi))
        if i == 6:
            y5 = yi
    err = tuple(h * sum(_E[m] * ks[m][j] for m in range(7)) for j in range(4))
    return y5, err, ks[6]


@dataclass
class OdeSolution:
    """Accepted steps of one solve; ``states[i] = (u, u', v, v')`` at ``nodes[i]``."""

    candidate: Candidate | None
    eps: float
    nodes: np.ndarray
    states: np.ndarray
    p: Callable[[float], float] = field(repr=False)
    wronskian0: float = 1.0
    _zeros: list[float] | None = field(default=None, repr=False)

    @property
    def u(self) -> np.ndarray:
        return self.states[:, 0]

    @property
    def du(self) -> np.ndarray:
        return self.states[:, 1]

    @property
    def v(self) -> np.ndarray:
        return self.states[:, 2]

    @property
    def reach(self) -> float:
        return float(self.nodes[-1])

    @property
    def wronskian_drift(self) -> float:
        s = self.states
        w = s[:, 0] * s[:, 3] - s[:, 1] * s[:, 2]
        return float(np.max(np.abs(w - self.wronskian0)))

    def state_at(self, x: float) -> tuple[float, float, float, float]:
        """State at ``x`` via a single step from the nearest node on the left."""
        x = float(x)
        if x < self.nodes[0] or x > self.nodes[-1]:
            raise ValueError(f"x={x} outside the solved interval")
        i = int(np.searchsorted(self.nodes, x, side="right")) - 1
        i = min(i, len(self.nodes) - 1)
        x0 = float(self.nodes[i])
        y0 = tuple(float(v) for v in self.states[i])
        if x == x0:
            return y0
        y, _, _ = _step(self.p, x0, y0, x - x0)
        return y

    def evaluate(self, x: float) -> float:
        return self.state_at(x)[0]

    @property
    def zeros(self) -> list[float]:
        if self._zeros is None:
            self._zeros = _locate_zeros(self)
        return self._zeros

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["x", "u", "du"])
        for x, s in zip(self.nodes, self.states):
            w.writerow([repr(float(x)), repr(float(s[0])), repr(float(s[1]))])
        return buf.getvalue()


def integrate(p: Callable[[float], float], x0: float, x1: float,
              y0: Sequence[float], rtol: float = DEFAULT_RTOL,
              atol: float = DEFAULT_ATOL, candidate: Candidate | None = None,
              eps: float | None = None) -> OdeSolution:
    """Adaptive DOP5(4) for ``u'' = -p u`` on the 4-vector ``(u, u', v, v')``."""
    y = tuple(float(v) for v in y0)
    x = float(x0)
    nodes = [x]
    states = [y]
    h = min(1e-3, 0.25 / math.sqrt(1.0 + abs(p(x))), x1 - x0)
    k1 = None
    while x < x1:
        ceiling = 0.25 / math.sqrt(1.0 + abs(p(x)))
        h = min(h, ceiling, x1 - x)
        if h <= 4e-16 * max(1.0, abs(x)):
            raise StepUnderflow(x)
        y_new, err, k7 = _step(p, x, y, h, k1)
        scale = [atol + rtol * max(abs(a), abs(b)) for a, b in zip(y, y_new)]
        enorm = max(abs(e) / s for e, s in zip(err, scale))
        if enorm <= 1.0:
            x = x + h if x1 - (x + h) > 1e-15 else x1
            y = y_new
            k1 = k7
            nodes.append(x)
            states.append(y)
            fac = 5.0 if enorm == 0 else min(5.0, 0.9 * enorm ** -0.2)
            h *= fac
        else:
            h *= max(0.2, 0.9 * enorm ** -0.2)
    w0 = y0[0] * y0[3] - y0[1] * y0[2]
    return OdeSolution(candidate, 1.0 - x1 if eps is None else eps, np.array(nodes),
                       np.array(states), p, w0)


def _p_of(c: Candidate) -> Callable[[float], float]:
    return lambda x: p_eval(c, x)


def solve_even(c: Candidate, eps: float = 1e-6, tol: float = DEFAULT_RTOL) -> OdeSolution:
    """Even normalised solution on ``[0, 1 - eps]`` with the odd one alongside."""
    if not 0.0 < eps <= 1e-2:
        raise ValueError("eps must lie in (0, 1e-2]")
    return integrate(_p_of(c), 0.0, 1.0 - eps, (1.0, 0.0, 0.0, 1.0), rtol=tol,
                     candidate=c, eps=eps)


def solve_from(c: Candidate, x0: float, u0: float, du0: float, eps: float = 1e-6,
               tol: float = DEFAULT_RTOL) -> OdeSolution:
    """Solution with data ``(u0, du0)`` at an interior point ``x0``."""
    # the companion solution is chosen to make the Wronskian 1
    n2 = u0 * u0 + du0 * du0
    y0 = (u0, du0, -du0 / n2, u0 / n2)
    return integrate(_p_of(c), x0, 1.0 - eps, y0, rtol=tol, candidate=c, eps=eps)


def _locate_zeros(sol: OdeSolution) -> list[float]:
    u = sol.u
    out = []
    for i in np.nonzero(np.sign(u[:-1]) * np.sign(u[1:]) <= 0)[0]:
        a, b = float(sol.nodes[i]), float(sol.nodes[i + 1])
        ua, ub = float(u[i]), float(u[i + 1])
        if ua == 0.0:
            root = a
        elif ub == 0.0:
            if i + 2 < len(u):
                continue  # picked up as the left end of the next interval
            root = b
        else:
            while b - a > ZERO_TOL:
                m = 0.5 * (a + b)
                um = sol.evaluate(m)
                if um == 0.0:
                    a = b = m
                    break
                if (um > 0) == (ua > 0):
                    a, ua = m, um
                else:
                    b = m
            root = 0.5 * (a + b)
        if not out or root > out[-1]:
            out.append(root)
    return out


@dataclass(frozen=True)
class ZeroReport:
    count: int
    locations: tuple[float, ...]

    def to_json(self) -> list[float]:
        return list(self.locations)


def count_zeros(sol: OdeSolution) -> ZeroReport:
    z = sol.zeros
    return ZeroReport(len(z), tuple(z))


def hille_zero_oracle(gamma: float, eps: float) -> list[float]:
    """Zeros of the Hille even solution on ``[0, 1 - eps]``, from the closed form."""
    lim = 0.5 * gamma * math.log((2.0 - eps) / eps)
    out = []
    k = 0
    while math.pi / 2 + k * math.pi <= lim:
        out.append(math.tanh((math.pi / 2 + k * math.pi) / gamma))
        k += 1
    return out


def quotient_f(sol: OdeSolution, x: float, cross_check: bool = False):
    """``f(x) = integral_0^x dt / u(t)^2`` (odd in x).

    With ``cross_check`` the co-integrated ``v(x)/u(x)`` is returned as well.
    """
    x = float(x)
    if x < 0:
        r = quotient_f(sol, -x, cross_check)
        return (-r[0], -r[1]) if cross_check else -r
    if sol.nodes[0] != 0.0:
        raise ValueError("quotient_f needs a solution started at 0")
    if x > sol.reach:
        raise ValueError(f"x={x} beyond the solved interval")
    hit = [z for z in sol.zeros if z <= x]
    if hit:
        raise ZeroCrossed(f"u vanishes at x={hit[0]:.12g}")
    if x == 0.0:
        return (0.0, 0.0) if cross_check else 0.0
    # nodes inside (0, x) as break points keep quad from skipping structure
    inner = sol.nodes[(sol.nodes > 0) & (sol.nodes < x)]
    pts = inner[:: max(1, len(inner) // 40)][:50] if len(inner) else None
    val, _ = quad(lambda t: 1.0 / sol.evaluate(t) ** 2, 0.0, x, epsabs=0.0,
                  epsrel=1e-11, limit=400, points=pts)
    if cross_check:
        s = sol.state_at(x)
        return val, s[2] / s[0]
    return val


# -- endpoint multiplicity -------------------------------------------------

K_RANGE = (8, 20)


def _fit(log_h: np.ndarray, log_u: np.ndarray, h: np.ndarray):
    """Least squares ``log u = c + m log h + c1 h + c2 h^2``; returns (m, r^2)."""
    A = np.column_stack([np.ones_like(h), log_h, h, h * h])
    coef, *_ = np.linalg.lstsq(A, log_u, rcond=None)
    resid = log_u - A @ coef
    ss_tot = float(np.sum((log_u - log_u.mean()) ** 2))
    r2 = 1.0 - float(np.sum(resid**2)) / ss_tot if ss_tot > 0 else 1.0
    return float(coef[1]), r2


def fit_multiplicity(u: Callable[[float], float], k_range: tuple[int, int] = K_RANGE):
    """Vanishing order of ``u`` at 1 from samples at ``1 - 2**-k``."""
    ks = np.arange(k_range[0], k_range[1] + 1)
    h = 2.0 ** (-ks.astype(float))
    vals = np.array([u(1.0 - hk) for hk in h], dtype=float)
    if np.any(vals <= 0):
        raise OscillatoryNearEndpoint("u is not positive near the endpoint")
    return _fit(np.log(h), np.log(vals), h)


DIVERGENCE_BAND = 1e-6


@dataclass(frozen=True)
class DivergenceReport:
    verdict: str  # "diverges" or "converges"
    m: float
    r_squared: float
    k_range: tuple[int, int]
    boundary: bool
    analytic_m: float | None = None

    @property
    def diverges(self) -> bool:
        return self.verdict == "diverges"

    def to_json(self) -> dict:
        return {"verdict": self.verdict, "m": self.m, "r_squared": self.r_squared,
                "k_range": list(self.k_range), "boundary": self.boundary,
                "analytic_m": self.analytic_m}


def divergence_verdict(m: float, r2: float = 1.0, k_range=K_RANGE,
                       analytic_m: float | None = None) -> DivergenceReport:
    """``integral^1 (1-x)^(-2m) dx`` diverges iff ``m >= 1/2``."""
    verdict = "diverges" if m >= 0.5 - DIVERGENCE_BAND else "converges"
    return DivergenceReport(verdict, m, r2, tuple(k_range),
                            abs(m - 0.5) <= DIVERGENCE_BAND, analytic_m)


def endpoint_divergence(c: Candidate, k_range: tuple[int, int] = K_RANGE) -> DivergenceReport:
    """Estimate the order ``m`` of the zero of ``u`` at 1 and judge ``integral u^-2``."""
    eps = 2.0 ** -(k_range[1] + 1)
    sol = solve_even(c, eps=eps)
    if sol.zeros:
        raise OscillatoryNearEndpoint(
            f"{len(sol.zeros)} zero(s) before 1 - {eps:g}, last at {sol.zeros[-1]:.10g}")
    m, r2 = fit_multiplicity(sol.evaluate, k_range)
    return divergence_verdict(m, r2, k_range, endpoint_multiplicity(c))


def sigma_probe(lam: float, x0: float = 0.9, eps: float = 1e-8) -> ZeroReport:
    """Zeros on ``[x0, 1 - eps]`` for ``p = (1 + sigma)/(1 - x^2)^2``.

    Integrating in ``x`` this close to 1 is limited by the spacing of doubles
    near 1, so the Liouville substitution ``x = tanh s``, ``u = w sqrt(1-x^2)``
    is used instead; it turns the equation into ``w'' + sigma(tanh s) w = 0``
    exactly.  Data ``w = 1, w' = 0`` at ``x0``.  A finite window cannot decide
    oscillation; this only reports what the window shows.
    """
    if lam <= 0:
        raise ValueError("lam must be positive")

    def sigma(s):
        # log(1/(1 - tanh^2 s)) = 2 log cosh s
        lc = s + math.log1p(math.exp(-2.0 * s)) - math.log(2.0)
        return lam / (2.0 * lc) ** 2

    s0 = math.atanh(x0)
    s1 = 0.5 * math.log((2.0 - eps) / eps)
    sol = integrate(sigma, s0, s1, (1.0, 0.0, 0.0, 1.0))
    zs = tuple(math.tanh(z) for z in _locate_zeros(sol))
    return ZeroReport(len(zs), zs)
