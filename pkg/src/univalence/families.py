"""Coefficient functions ``p(x)`` of ``u'' + p u = 0`` used as univalence bounds.

Every built-in family is even in ``x``.  Most are manufactured from an
explicit positive generator ``u`` via ``p = -u''/u``; the rest are classical
comparison functions.  Evaluation goes through ``phi(x) = p(x) (1 - x**2)**2``,
written so that the singular factors at ``x = 1`` cancel analytically:
``tan(pi x/2)`` only ever appears multiplied by ``1 - x**2`` (the helper
``G``), and ``1 - x`` is formed before any trigonometric call.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from . import series as ser
from .errors import (
    EndpointSingularity,
    LimitUnavailable,
    NoSeriesForm,
    ParameterDomain,
)
from .series import TaylorSeries

PI = math.pi
PI2_4 = PI * PI / 4.0

# chuaqui_sigma has a log singularity at 0; x is floored here
SIGMA_FLOOR = 1e-6
# region predicates count points this close to a boundary as inside
BOUNDARY_TOL = 1e-12


@dataclass(frozen=True)
class FamilyInfo:
    name: str
    params: tuple[str, ...]
    domain: str
    generator: str | None
    formula: str


FAMILIES: dict[str, FamilyInfo] = {
    f.name: f
    for f in [
        FamilyInfo("thm1", ("a", "lambda"), "a, lambda real", "(1-x^2)^a exp(lambda x^2)",
                   "(2a+2ax^2-4a^2x^2)/(1-x^2)^2 + 8a lambda x^2/(1-x^2) - (4 lambda^2 x^2 + 2 lambda)"),
        FamilyInfo("thm2", ("lambda", "mu"), "lambda, mu real", "(1-x^2)^lambda cos^mu(pi x/2)",
                   "4l(1-l)x^2/(1-x^2)^2 + 2l/(1-x^2) + mu pi^2/4 + mu(1-mu) pi^2 tan^2(pi x/2)/4"
                   " - 2 mu l pi x tan(pi x/2)/(1-x^2)"),
        FamilyInfo("thm3", ("a", "b"), "a, b real", "(1-x^2)^a (1+x^2)^-b",
                   "[(2a-4ab)+x^2(2a+4ab-4a^2)]/(1-x^2)^2 + [(2b+4ab)+x^2(4ab-2b-4b^2)]/(1+x^2)^2"),
        FamilyInfo("thm4", ("lambda",), "lambda real", "cos(pi x/2) exp(lambda x^2)",
                   "2 lambda pi x tan(pi x/2) + pi^2/4 - (2 lambda + 4 lambda^2 x^2)"),
        FamilyInfo("thm5", ("lambda",), "lambda real", "cos(pi x/2) exp(-lambda cos(pi x/2))",
                   "(pi^2/4)[1 - lambda^2 sin^2(pi x/2) + 2 lambda sin^2(pi x/2)/cos(pi x/2)"
                   " - lambda cos(pi x/2)]"),
        FamilyInfo("hille", ("gamma",), "gamma >= 0",
                   "(1-x^2)^(1/2) cos((gamma/2) log((1+x)/(1-x)))",
                   "(1+gamma^2)(1-x^2)^-2"),
        FamilyInfo("const_pi", ("delta",), "delta > -pi^2/4", "cos(sqrt(pi^2/4+delta) x)",
                   "pi^2/4 + delta"),
        FamilyInfo("two_over", (), "no parameters", "1-x^2", "2(1-x^2)^-1"),
        FamilyInfo("nehari_mu1", ("mu",), "-1 < mu <= 1", "(1-x^2)^((mu+1)/2)",
                   "(1+mu)(1-mu x^2)(1-x^2)^-2"),
        FamilyInfo("nehari_mu2", ("mu",), "-1 < mu <= 1", "(1-x^2)^((mu+1)/2) (1+x^2)^(-mu/2)",
                   "(1-mu^2)(1-x^2)^-2 + mu(2+mu)(1+x^2)^-2"),
        FamilyInfo("beesack", ("lambda",), "0 <= lambda <= 1",
                   "(1-x^2)^lambda cos^(1-lambda)(pi x/2)",
                   "thm2 with mu = 1 - lambda"),
        FamilyInfo("chuaqui_sigma", ("lambda",), "lambda > 0; x floored at 1e-6", None,
                   "(1-x^2)^-2 (1 + lambda / log(1/(1-x^2))^2)"),
        FamilyInfo("custom_series", (), "series supplied by caller", None, "user series"),
    ]
}


@dataclass(frozen=True)
class Candidate:
    """One coefficient function: a family name plus its parameter vector.

    ``series`` is only used (and required) for ``custom_series``.
    """

    family: str
    params: tuple[float, ...] = ()
    series: TaylorSeries | None = field(default=None, compare=False)

    def __post_init__(self):
        info = FAMILIES.get(self.family)
        if info is None:
            raise ValueError(f"unknown family {self.family!r}")
        params = tuple(float(v) for v in self.params)
        object.__setattr__(self, "params", params)
        if len(params) != len(info.params):
            raise ValueError(
                f"{self.family} takes {len(info.params)} parameter(s) {info.params}, "
                f"got {len(params)}")
        if not all(math.isfinite(v) for v in params):
            raise ParameterDomain("parameters must be finite")
        if self.family == "custom_series" and self.series is None:
            raise ValueError("custom_series needs a series")
        _check_domain(self.family, params)

    @classmethod
    def of(cls, family: str, *params: float) -> "Candidate":
        return cls(family, tuple(params))

    @classmethod
    def from_series(cls, s: TaylorSeries) -> "Candidate":
        return cls("custom_series", (), s)

    @property
    def info(self) -> FamilyInfo:
        return FAMILIES[self.family]

    @property
    def meta(self) -> str | None:
        return self.info.generator

    def named_params(self) -> dict[str, float]:
        return dict(zip(self.info.params, self.params))

    def label(self) -> str:
        if not self.params:
            return self.family
        inner = ", ".join(f"{k}={v:g}" for k, v in self.named_params().items())
        return f"{self.family}({inner})"

    def p(self, x):
        return p_eval(self, x)

    def phi(self, x):
        return phi_eval(self, x)


def _check_domain(family: str, params: tuple[float, ...]) -> None:
    if family == "hille" and params[0] < 0:
        raise ParameterDomain("hille needs gamma >= 0")
    if family == "const_pi" and params[0] <= -PI2_4:
        raise ParameterDomain("const_pi needs delta > -pi^2/4")
    if family in ("nehari_mu1", "nehari_mu2") and not -1.0 < params[0] <= 1.0:
        raise ParameterDomain(f"{family} needs -1 < mu <= 1")
    if family == "beesack" and not 0.0 <= params[0] <= 1.0:
        raise ParameterDomain("beesack needs 0 <= lambda <= 1")
    if family == "chuaqui_sigma" and params[0] <= 0:
        raise ParameterDomain("chuaqui_sigma needs lambda > 0")


# -- numerically careful building blocks ------------------------------------
# Each works on a Python float (math) or a numpy array; x is assumed in [0, 1].

def _ycot(y, xp):
    """``y * cot(pi y / 2)``, smooth with value 2/pi at y = 0."""
    if xp is math:
        return y / math.tan(PI * y / 2.0) if y > 0.0 else 2.0 / PI
    with np.errstate(divide="ignore", invalid="ignore"):
        out = y / np.tan(PI * y / 2.0)
    return np.where(y > 0.0, out, 2.0 / PI)


def _ycsc(y, xp):
    """``y / sin(pi y / 2)``, value 2/pi at y = 0."""
    if xp is math:
        return y / math.sin(PI * y / 2.0) if y > 0.0 else 2.0 / PI
    with np.errstate(divide="ignore", invalid="ignore"):
        out = y / np.sin(PI * y / 2.0)
    return np.where(y > 0.0, out, 2.0 / PI)


def _tan_half(x, xp):
    """``tan(pi x / 2)`` for x in [0, 1) using the cotangent form near 1."""
    if xp is math:
        return math.tan(PI * x / 2.0) if x < 0.5 else 1.0 / math.tan(PI * (1.0 - x) / 2.0)
    with np.errstate(divide="ignore"):
        far = 1.0 / np.tan(PI * (1.0 - x) / 2.0)
    return np.where(x < 0.5, np.tan(PI * x / 2.0), far)


def _cos_half(x, xp):
    if xp is math:
        return math.cos(PI * x / 2.0) if x < 0.5 else math.sin(PI * (1.0 - x) / 2.0)
    return np.where(x < 0.5, np.cos(PI * x / 2.0), np.sin(PI * (1.0 - x) / 2.0))


def _sin_half(x, xp):
    if xp is math:
        return math.sin(PI * x / 2.0) if x < 0.5 else math.cos(PI * (1.0 - x) / 2.0)
    return np.where(x < 0.5, np.sin(PI * x / 2.0), np.cos(PI * (1.0 - x) / 2.0))


def _G(x, xp):
    """``(1 - x**2) tan(pi x / 2)``, continuous on [0, 1] with G(1) = 4/pi."""
    if xp is math:
        if x < 0.5:
            return (1.0 - x) * (1.0 + x) * math.tan(PI * x / 2.0)
        return (1.0 + x) * _ycot(1.0 - x, xp)
    near = (1.0 + x) * _ycot(1.0 - x, xp)
    return np.where(x < 0.5, (1.0 - x) * (1.0 + x) * np.tan(PI * x / 2.0), near)


def _w_over_cos(x, xp):
    """``(1 - x**2) / cos(pi x / 2)``, value 4/pi at x = 1."""
    if xp is math:
        if x < 0.5:
            return (1.0 - x) * (1.0 + x) / math.cos(PI * x / 2.0)
        return (1.0 + x) * _ycsc(1.0 - x, xp)
    near = (1.0 + x) * _ycsc(1.0 - x, xp)
    return np.where(x < 0.5, (1.0 - x) * (1.0 + x) / np.cos(PI * x / 2.0), near)


def _xp_of(x):
    return math if isinstance(x, float) else np


# -- phi = p (1-x^2)^2 --------------------------------------------------------

def _phi_thm2(lam, mu, x, xp):
    w = (1.0 - x) * (1.0 + x)
    g = _G(x, xp)
    return (4.0 * lam * (1.0 - lam) * x * x + 2.0 * lam * w + mu * PI2_4 * w * w
            + mu * (1.0 - mu) * PI2_4 * g * g - 2.0 * mu * lam * PI * x * g)


def _phi(c: Candidate, x, xp):
    fam, pr = c.family, c.params
    w = (1.0 - x) * (1.0 + x)
    x2 = x * x
    if fam == "thm1":
        a, lam = pr
        return ((2 * a + 2 * a * x2 - 4 * a * a * x2) + 8 * a * lam * x2 * w
                - (4 * lam * lam * x2 + 2 * lam) * w * w)
    if fam == "thm2":
        return _phi_thm2(pr[0], pr[1], x, xp)
    if fam == "thm3":
        a, b = pr
        r = w / (1.0 + x2)
        return ((2 * a - 4 * a * b) + x2 * (2 * a + 4 * a * b - 4 * a * a)
                + r * r * ((2 * b + 4 * a * b) + x2 * (4 * a * b - 2 * b - 4 * b * b)))
    if fam == "thm4":
        (lam,) = pr
        return 2 * lam * PI * x * w * _G(x, xp) + w * w * (PI2_4 - 2 * lam - 4 * lam * lam * x2)
    if fam == "thm5":
        (lam,) = pr
        v = _cos_half(x, xp)
        s = _sin_half(x, xp)
        s2 = s * s
        return PI2_4 * (w * w * (1.0 - lam * lam * s2 - lam * v)
                        + 2.0 * lam * s2 * w * _w_over_cos(x, xp))
    if fam == "hille":
        return (1.0 + pr[0] ** 2) + 0.0 * x
    if fam == "const_pi":
        return (PI2_4 + pr[0]) * w * w
    if fam == "two_over":
        return 2.0 * w
    if fam == "nehari_mu1":
        (mu,) = pr
        return (1.0 + mu) * (1.0 - mu * x2)
    if fam == "nehari_mu2":
        (mu,) = pr
        r = w / (1.0 + x2)
        return (1.0 - mu * mu) + mu * (2.0 + mu) * r * r
    if fam == "beesack":
        return _phi_thm2(pr[0], 1.0 - pr[0], x, xp)
    if fam == "chuaqui_sigma":
        (lam,) = pr
        xf = xp.maximum(x, SIGMA_FLOOR) if xp is np else max(x, SIGMA_FLOOR)
        if xp is math:
            return 1.0 if xf >= 1.0 else 1.0 + lam / math.log1p(-xf * xf) ** 2
        with np.errstate(divide="ignore"):
            lg = np.log1p(-xf * xf)
        return np.where(xf < 1.0, 1.0 + lam / lg**2, 1.0)
    if fam == "custom_series":
        if xp is math and x == 1.0 or xp is np and np.any(x == 1.0):
            raise LimitUnavailable("custom_series has no known limit at x = 1")
        return c.series(x) * w * w
    raise ValueError(fam)


def phi_eval(c: Candidate, x):
    """``phi(x) = p(x) (1 - x**2)**2`` on [0, 1]; at 1 the analytic limit."""
    xp = _xp_of(x)
    xa = abs(x) if xp is math else np.abs(np.asarray(x, dtype=float))
    if (xp is math and xa > 1.0) or (xp is np and np.any(xa > 1.0)):
        raise ValueError("x must lie in [-1, 1]")
    return _phi(c, xa, xp)


def p_eval(c: Candidate, x):
    """Exact closed-form ``p(x)`` for ``|x| < 1`` (scalar or array)."""
    xp = _xp_of(x)
    xa = abs(x) if xp is math else np.abs(np.asarray(x, dtype=float))
    at_end = xa >= 1.0 if xp is math else bool(np.any(xa >= 1.0))
    if c.family == "const_pi":
        if (xp is math and xa > 1.0) or (xp is np and np.any(xa > 1.0)):
            raise ValueError("x must lie in [-1, 1]")
        return PI2_4 + c.params[0] + 0.0 * xa
    if at_end:
        raise EndpointSingularity(f"{c.family} is singular at x = 1")
    if c.family == "custom_series":
        return c.series(xa)
    w = (1.0 - xa) * (1.0 + xa)
    return _phi(c, xa, xp) / (w * w)


def p_complex(c: Candidate, z):
    """Direct formula for ``p(z)`` at complex points of the open disc."""
    z = np.asarray(z, dtype=complex)
    fam, pr = c.family, c.params
    w = 1.0 - z * z
    if fam == "thm1":
        a, lam = pr
        return ((2 * a + 2 * a * z * z - 4 * a * a * z * z) / w**2 + 8 * a * lam * z * z / w
                - (4 * lam * lam * z * z + 2 * lam))
    if fam in ("thm2", "beesack"):
        lam, mu = (pr[0], pr[1]) if fam == "thm2" else (pr[0], 1.0 - pr[0])
        t = np.tan(PI * z / 2)
        return (4 * lam * (1 - lam) * z * z / w**2 + 2 * lam / w + mu * PI2_4
                + mu * (1 - mu) * PI2_4 * t * t - 2 * mu * lam * PI * z * t / w)
    if fam == "thm3":
        a, b = pr
        return (((2 * a - 4 * a * b) + z * z * (2 * a + 4 * a * b - 4 * a * a)) / w**2
                + ((2 * b + 4 * a * b) + z * z * (4 * a * b - 2 * b - 4 * b * b)) / (1 + z * z) ** 2)
    if fam == "thm4":
        (lam,) = pr
        return 2 * lam * PI * z * np.tan(PI * z / 2) + PI2_4 - (2 * lam + 4 * lam * lam * z * z)
    if fam == "thm5":
        (lam,) = pr
        v = np.cos(PI * z / 2)
        s2 = np.sin(PI * z / 2) ** 2
        return PI2_4 * (1 - lam * lam * s2 + 2 * lam * s2 / v - lam * v)
    if fam == "hille":
        return (1 + pr[0] ** 2) / w**2
    if fam == "const_pi":
        return PI2_4 + pr[0] + 0 * z
    if fam == "two_over":
        return 2 / w
    if fam == "nehari_mu1":
        (mu,) = pr
        return (1 + mu) * (1 - mu * z * z) / w**2
    if fam == "nehari_mu2":
        (mu,) = pr
        return (1 - mu * mu) / w**2 + mu * (2 + mu) / (1 + z * z) ** 2
    if fam == "chuaqui_sigma":
        return (1 + pr[0] / np.log(1 / w) ** 2) / w**2
    if fam == "custom_series":
        return c.series(z)
    raise ValueError(fam)


def tau_closed_form(c: Candidate) -> float | None:
    """Analytic ``lim_{x->1} p(x)(1-x^2)^2`` where one is known."""
    fam, pr = c.family, c.params
    if fam in ("thm1", "thm3"):
        a = pr[0]
        return 4 * a * (1 - a)
    if fam == "thm2":
        s = pr[0] + pr[1]
        return 4 * s * (1 - s)
    if fam in ("thm4", "thm5", "const_pi", "two_over", "beesack"):
        return 0.0
    if fam == "hille":
        return 1 + pr[0] ** 2
    if fam in ("nehari_mu1", "nehari_mu2"):
        return 1 - pr[0] ** 2
    if fam == "chuaqui_sigma":
        return 1.0
    return None


def endpoint_multiplicity(c: Candidate) -> float | None:
    """Vanishing order at x = 1 of the even generator, when known."""
    fam, pr = c.family, c.params
    if fam in ("thm1", "thm3"):
        return pr[0]
    if fam == "thm2":
        return pr[0] + pr[1]
    if fam in ("thm4", "thm5", "two_over", "beesack"):
        return 1.0
    if fam in ("nehari_mu1", "nehari_mu2"):
        return (pr[0] + 1) / 2
    return None


# -- generators ---------------------------------------------------------------

def generator(c: Candidate) -> Callable | None:
    """Closed-form even positive solution ``u(x, xp)``, or None.

    ``xp`` is any module exposing ``cos, exp, log, sqrt, pi`` (``math``,
    ``numpy`` or ``mpmath``).
    """
    fam, pr = c.family, c.params
    if fam == "thm1":
        a, lam = pr
        return lambda x, xp=math: (1 - x * x) ** a * xp.exp(lam * x * x)
    if fam == "thm2":
        lam, mu = pr
        return lambda x, xp=math: (1 - x * x) ** lam * xp.cos(xp.pi * x / 2) ** mu
    if fam == "thm3":
        a, b = pr
        return lambda x, xp=math: (1 - x * x) ** a * (1 + x * x) ** (-b)
    if fam == "thm4":
        (lam,) = pr
        return lambda x, xp=math: xp.cos(xp.pi * x / 2) * xp.exp(lam * x * x)
    if fam == "thm5":
        (lam,) = pr
        return lambda x, xp=math: xp.cos(xp.pi * x / 2) * xp.exp(-lam * xp.cos(xp.pi * x / 2))
    if fam == "hille":
        (g,) = pr
        return lambda x, xp=math: xp.sqrt(1 - x * x) * xp.cos(g / 2 * xp.log((1 + x) / (1 - x)))
    if fam == "const_pi":
        k = math.sqrt(PI2_4 + pr[0])
        return lambda x, xp=math: xp.cos(k * x)
    if fam == "two_over":
        return lambda x, xp=math: 1 - x * x
    if fam == "nehari_mu1":
        (mu,) = pr
        return lambda x, xp=math: (1 - x * x) ** ((mu + 1) / 2)
    if fam == "nehari_mu2":
        (mu,) = pr
        return lambda x, xp=math: (1 - x * x) ** ((mu + 1) / 2) * (1 + x * x) ** (-mu / 2)
    if fam == "beesack":
        (lam,) = pr
        return lambda x, xp=math: (1 - x * x) ** lam * xp.cos(xp.pi * x / 2) ** (1 - lam)
    return None


# -- series -------------------------------------------------------------------

def _geom2(order, power, sign=-1.0):
    return ser.inverse_power_even(power, sign, order)


def l_series(lam: float, mu: float, order: int = ser.DEFAULT_ORDER) -> TaylorSeries:
    """Odd series of ``L(x) = (pi/2) tan(pi x/2) - 2 lam/(1-mu) * x/(1-x^2)``."""
    if mu == 1.0:
        raise ParameterDomain("L(x) needs mu != 1")
    x = TaylorSeries.monomial(1, order)
    return (PI / 2) * ser.tan_half_series(order) - (2 * lam / (1 - mu)) * (x * _geom2(order, 1))


def _thm2_series(lam, mu, order):
    x = TaylorSeries.monomial(1, order)
    t = ser.tan_half_series(order)
    inv1 = _geom2(order, 1)
    inv2 = _geom2(order, 2)
    x2 = x * x
    return (4 * lam * (1 - lam) * (x2 * inv2) + 2 * lam * inv1 + mu * PI2_4
            + mu * (1 - mu) * PI2_4 * (t * t) - 2 * mu * lam * PI * (x * t * inv1))


def p_series(c: Candidate, order: int = ser.DEFAULT_ORDER) -> TaylorSeries:
    """Even Taylor series of ``p`` about 0, assembled from series primitives."""
    fam, pr = c.family, c.params
    x = TaylorSeries.monomial(1, order)
    x2 = x * x
    inv1 = _geom2(order, 1)
    inv2 = _geom2(order, 2)
    if fam == "thm1":
        a, lam = pr
        return ((2 * a + (2 * a - 4 * a * a) * x2) * inv2 + 8 * a * lam * (x2 * inv1)
                - (4 * lam * lam * x2 + 2 * lam))
    if fam == "thm2":
        return _thm2_series(pr[0], pr[1], order)
    if fam == "beesack":
        return _thm2_series(pr[0], 1 - pr[0], order)
    if fam == "thm3":
        a, b = pr
        plus2 = _geom2(order, 2, sign=+1.0)
        return (((2 * a - 4 * a * b) + (2 * a + 4 * a * b - 4 * a * a) * x2) * inv2
                + ((2 * b + 4 * a * b) + (4 * a * b - 2 * b - 4 * b * b) * x2) * plus2)
    if fam == "thm4":
        (lam,) = pr
        t = ser.tan_half_series(order)
        return 2 * lam * PI * (x * t) + (PI2_4 - 2 * lam) - 4 * lam * lam * x2
    if fam == "thm5":
        (lam,) = pr
        v = ser.cos_series(order, PI / 2)
        sec = ser.sec_series(order).scale(PI / 2)
        return PI2_4 * (1 - lam * lam * (1 - v * v) + 2 * lam * (sec - v) - lam * v)
    if fam == "hille":
        return (1 + pr[0] ** 2) * inv2
    if fam == "const_pi":
        return TaylorSeries.constant(PI2_4 + pr[0], order)
    if fam == "two_over":
        return 2 * inv1
    if fam == "nehari_mu1":
        (mu,) = pr
        return (1 + mu) * ((1 - mu * x2) * inv2)
    if fam == "nehari_mu2":
        (mu,) = pr
        return (1 - mu * mu) * inv2 + mu * (2 + mu) * _geom2(order, 2, sign=+1.0)
    if fam == "custom_series":
        return c.series.truncate(min(order, c.series.order))
    raise NoSeriesForm(f"{fam} has no power series about 0")


# -- G, R, L helpers ----------------------------------------------------------

def _g_series_y(s):
    # s cot s and its first two derivatives, for small s
    s2 = s * s
    g = 1 - s2 / 3 - s2 * s2 / 45 - 2 * s2**3 / 945
    g1 = -2 * s / 3 - 4 * s * s2 / 45 - 12 * s * s2 * s2 / 945
    g2 = -2 / 3 - 12 * s2 / 45 - 60 * s2 * s2 / 945
    return g, g1, g2


def G(x: float) -> float:
    return _G(float(x), math)


def G_prime(x: float) -> float:
    x = float(x)
    y = 1.0 - x
    if y < 1e-3:
        s = PI * y / 2
        g, g1, _ = _g_series_y(s)
        return 2 / PI * g - (2 - y) * g1
    t = _tan_half(x, math)
    return -2 * x * t + (1 - x) * (1 + x) * (PI / 2) * (1 + t * t)


def G_second(x: float) -> float:
    x = float(x)
    y = 1.0 - x
    if y < 1e-3:
        s = PI * y / 2
        _, g1, g2 = _g_series_y(s)
        return -2 * g1 + (2 - y) * (PI / 2) * g2
    t = _tan_half(x, math)
    t1 = PI / 2 * (1 + t * t)
    t2 = PI * t * t1
    return -2 * t - 4 * x * t1 + (1 - x) * (1 + x) * t2


def R(x: float) -> float:
    """``G(x) / (pi x / 2)`` with ``R(0) = 1``."""
    x = float(x)
    if x == 0.0:
        return 1.0
    return G(x) / (PI * x / 2)


def L(x: float, lam: float, mu: float) -> float:
    if mu == 1.0:
        raise ParameterDomain("L(x) needs mu != 1")
    x = float(x)
    k = 2 * lam / (1 - mu)
    if x >= 1.0:
        lead = 1 - k / 2
        if abs(lead) <= 1e-12:
            return 0.5
        return math.copysign(math.inf, lead)
    return PI / 2 * _tan_half(x, math) - k * x / ((1 - x) * (1 + x))


def g_helpers(x: float, which: str, lam: float | None = None, mu: float | None = None) -> float:
    """Closed-form ``G``, ``G'``, ``G''``, ``R`` or ``L(lam, mu)`` at x in [0, 1].

    At x = 1 the limits G = 4/pi, G' = 2/pi, G'' = -2 pi/3, R = 8/pi^2 are
    returned; ``L`` tends to +-inf unless lam = 1 - mu, where it tends to 1/2.
    """
    if not 0.0 <= x <= 1.0:
        raise ValueError("x must lie in [0, 1]")
    if which == "G":
        return G(x)
    if which in ("G'", "Gp", "G_prime"):
        return G_prime(x)
    if which in ("G''", "Gpp", "G_second"):
        return G_second(x)
    if which == "R":
        return R(x)
    if which == "L":
        if lam is None or mu is None:
            raise ValueError("L needs lam and mu")
        return L(x, lam, mu)
    raise ValueError(f"unknown helper {which!r}")


# -- critical constants ---------------------------------------------------------

def critical_constants() -> dict[str, float]:
    """Named thresholds, each evaluated from its closed form."""
    k5 = 4 + 1.25 * PI * PI
    return {
        "lambda0_thm4": ((4 + PI**2) - math.sqrt(16 + PI**4)) / 8,
        "lambda0_thm5": (k5 - math.sqrt(k5 * k5 - 8 * PI**2)) / PI**2,
        "a0": (math.sqrt(3) + 1) / 4,
        "a1": (math.sqrt(7) + 1) / 4,
        "a_cross": 0.5 + math.sqrt(2) / 3,
    }


# -- parameter regions ------------------------------------------------------------

@dataclass(frozen=True)
class Inequality:
    id: str
    text: str
    residual: Callable[[Sequence[float]], float]  # >= 0 when satisfied


def thm1_lambda_upper(a):
    return ((1 + 2 * a) - math.sqrt(1 + 6 * a)) / 2


def thm1_lambda_lower(a):
    return (1 - 2 * a) / 4


def thm1_lambda_selfmaj(a):
    return a - math.sqrt(6 * a) / 2


def thm3_b_lower(a):
    return (-(5 + 4 * a) + math.sqrt(25 + 48 * a)) / 4


def thm3_S(a):
    return -0.5 + 0.5 * math.sqrt(1 + 4 * a * (1 - a))


def thm3_T(a):
    return (-4 * a - 3 + math.sqrt(9 + 48 * a)) / 4


def thm3_upper_bounds(a: float) -> dict[str, float]:
    """The three competing upper bounds on ``b`` in the self-majorant region."""
    return {"a-1/2": a - 0.5, "S": thm3_S(a), "T": thm3_T(a)}


_A_RANGE = [
    Inequality("a_min", "a >= 1/2", lambda q: q[0] - 0.5),
    Inequality("a_max", "a <= 1", lambda q: 1 - q[0]),
]


def _prefixed(prefix, ineqs):
    return [Inequality(f"{prefix}.{i.id}", i.text, i.residual) for i in ineqs]


_THM1_A = _prefixed("thm1", _A_RANGE) + [
    Inequality("thm1.lambda_lower", "lambda >= (1 - 2a)/4",
               lambda q: q[1] - thm1_lambda_lower(q[0])),
    Inequality("thm1.lambda_upper", "lambda <= ((1 + 2a) - (1 + 6a)^(1/2))/2",
               lambda q: thm1_lambda_upper(q[0]) - q[1]),
]
_THM1_B = _THM1_A + [
    Inequality("thm1.lambda_selfmaj", "lambda >= a - (6a)^(1/2)/2",
               lambda q: q[1] - thm1_lambda_selfmaj(q[0])),
]
_THM2 = [
    Inequality("thm2.lambda_nonneg", "lambda >= 0", lambda q: q[0]),
    Inequality("thm2.mu_nonneg", "mu >= 0", lambda q: q[1]),
    Inequality("thm2.sum_min", "lambda + mu >= 1/2", lambda q: q[0] + q[1] - 0.5),
    Inequality("thm2.sum_max", "lambda + mu <= 1", lambda q: 1 - q[0] - q[1]),
    Inequality("thm2.lambda_lower", "lambda >= (1 - mu)/2", lambda q: q[0] - (1 - q[1]) / 2),
    Inequality("thm2.lambda_upper", "lambda <= 1 - mu", lambda q: 1 - q[1] - q[0]),
]
_THM3_A = _prefixed("thm3", _A_RANGE) + [
    Inequality("thm3.b_lower", "b >= (-(5 + 4a) + (25 + 48a)^(1/2))/4",
               lambda q: q[1] - thm3_b_lower(q[0])),
    Inequality("thm3.b_upper", "b <= a - 1/2", lambda q: q[0] - 0.5 - q[1]),
]
_THM3_B = _THM3_A + [
    Inequality("thm3.b_lower_a1", "b >= a - 1", lambda q: q[1] - (q[0] - 1)),
    Inequality("thm3.b_upper_S", "b <= -1/2 + (1 + 4a(1 - a))^(1/2)/2",
               lambda q: thm3_S(q[0]) - q[1]),
]
_THM3_B3 = _THM3_B + [
    Inequality("thm3.b_upper_T", "b <= (-4a - 3 + (9 + 48a)^(1/2))/4",
               lambda q: thm3_T(q[0]) - q[1]),
]


def _lam0(key):
    return critical_constants()[key]


_THM4 = [
    Inequality("thm4.lambda_nonneg", "lambda >= 0", lambda q: q[0]),
    Inequality("thm4.lambda_max", "lambda <= ((4 + pi^2) - (16 + pi^4)^(1/2))/8",
               lambda q: _lam0("lambda0_thm4") - q[0]),
]
_THM5 = [
    Inequality("thm5.lambda_nonneg", "lambda >= 0", lambda q: q[0]),
    Inequality("thm5.lambda_max",
               "lambda <= [(4 + 5pi^2/4) - ((4 + 5pi^2/4)^2 - 8pi^2)^(1/2)]/pi^2",
               lambda q: _lam0("lambda0_thm5") - q[0]),
]

REGIONS: dict[tuple[int, str], list[Inequality]] = {
    (1, "A"): _THM1_A, (1, "B"): _THM1_B,
    (2, "A"): _THM2, (2, "B"): _THM2,
    (3, "A"): _THM3_A, (3, "B"): _THM3_B, (3, "B3"): _THM3_B3,
    (4, "A"): _THM4, (4, "B"): _THM4,
    (5, "A"): _THM5, (5, "B"): _THM5,
}
THEOREM_FAMILY = {1: "thm1", 2: "thm2", 3: "thm3", 4: "thm4", 5: "thm5"}


@dataclass(frozen=True)
class RegionQuery:
    theorem: int
    variant: str
    params: tuple[float, ...]

    def __post_init__(self):
        if (self.theorem, self.variant) not in REGIONS:
            raise ValueError(f"no region for theorem {self.theorem} variant {self.variant!r}")
        arity = len(FAMILIES[THEOREM_FAMILY[self.theorem]].params)
        object.__setattr__(self, "params", tuple(float(v) for v in self.params))
        if len(self.params) != arity:
            raise ValueError(f"theorem {self.theorem} takes {arity} parameter(s)")


@dataclass(frozen=True)
class RegionVerdict:
    inside: bool
    violated: str | None = None
    text: str | None = None
    residual: float | None = None

    def __bool__(self) -> bool:
        return self.inside


def region_contains(q: RegionQuery) -> RegionVerdict:
    """Evaluate the region's inequalities in order; report the first violation."""
    for ineq in REGIONS[(q.theorem, q.variant)]:
        r = ineq.residual(q.params)
        if r < -BOUNDARY_TOL:
            return RegionVerdict(False, ineq.id, ineq.text, r)
    return RegionVerdict(True)


def inside(theorem: int, variant: str, *params: float) -> bool:
    return region_contains(RegionQuery(theorem, variant, params)).inside


def thm3_variant_disagreement(a: float, b: float) -> dict | None:
    """Compare the stated self-majorant region with the three-bound form."""
    stated = region_contains(RegionQuery(3, "B", (a, b))).inside
    three = region_contains(RegionQuery(3, "B3", (a, b))).inside
    if stated == three:
        return None
    return {"a": a, "b": b, "stated": stated, "three_bound": three,
            "bounds": thm3_upper_bounds(a)}


def region_box(theorem: int) -> list[tuple[float, float]]:
    """Axis-aligned box containing every variant of a theorem's region."""
    cc = critical_constants()
    return {
        1: [(0.5, 1.0), (-0.25, 0.18)],
        2: [(0.0, 1.0), (0.0, 1.0)],
        3: [(0.5, 1.0), (-0.12, 0.5)],
        4: [(0.0, cc["lambda0_thm4"])],
        5: [(0.0, cc["lambda0_thm5"])],
    }[theorem]


def sample_region(theorem: int, variant: str, n: int, rng: np.random.Generator,
                  max_tries: int = 1_000_000) -> list[tuple[float, ...]]:
    """Uniform samples from a region by rejection from :func:`region_box`."""
    box = region_box(theorem)
    lo = np.array([b[0] for b in box])
    hi = np.array([b[1] for b in box])
    out: list[tuple[float, ...]] = []
    tries = 0
    while len(out) < n:
        if tries > max_tries:
            raise RuntimeError("region sampling did not converge")
        pt = tuple(float(v) for v in lo + (hi - lo) * rng.random(lo.size))
        tries += 1
        if region_contains(RegionQuery(theorem, variant, pt)).inside:
            out.append(pt)
    return out


def catalogue() -> list[dict]:
    """JSON-ready description of every family."""
    return [
        {"family": f.name, "arity": len(f.params), "params": list(f.params),
         "domain": f.domain, "generator": f.generator, "p": f.formula}
        for f in FAMILIES.values()
    ]
