"""Truncated real power series and the special expansions built on them.

A :class:`TaylorSeries` holds coefficients ``c_0 .. c_N`` of a function about
0; coefficients beyond ``N`` are unknown, not zero.  Binary arithmetic yields
the order of the less accurate operand, differentiation loses one order,
integration gains one.

The special series needed for the univalence families are

* :func:`tan_half_series` -- ``tan(pi x / 2)`` through Dirichlet's lambda,
* :func:`sec_series` -- ``sec x`` through Euler numbers,
* :func:`schwarzian` -- the Schwarzian derivative as a series operator.
"""

from __future__ import annotations

import json
import math
from fractions import Fraction
from functools import lru_cache
from typing import Iterable

import numpy as np

from .errors import (
    CompositionNonzeroConstant,
    DivisionByZeroConstantTerm,
    InvalidExponent,
    NotLocallyUnivalent,
    OverflowAtOrder,
)

DEFAULT_ORDER = 64
PARITIES = ("even", "odd", "none")

# number of explicitly summed terms in dirichlet_lambda
_LAMBDA_TERMS = 1_000_000


def _infer_parity(c: np.ndarray) -> str:
    if not np.any(c[1::2]):
        return "even"
    if not np.any(c[0::2]):
        return "odd"
    return "none"


class TaylorSeries:
    """Truncated power series ``sum_{n<=order} coeffs[n] x**n``.

    Parameters
    ----------
    coeffs : sequence of float
        ``c_0 .. c_N``; ``order`` is ``len(coeffs) - 1``.
    parity : {"even", "odd", "none"}, optional
        Advisory hint.  When omitted it is inferred from exact zeros; when
        given it is checked.
    """

    __slots__ = ("_c", "parity")

    def __init__(self, coeffs: Iterable[float], parity: str | None = None):
        c = np.array(list(coeffs) if not isinstance(coeffs, np.ndarray) else coeffs,
                     dtype=float)
        if c.ndim != 1 or c.size == 0:
            raise ValueError("coefficients must be a non-empty 1-d sequence")
        if not np.all(np.isfinite(c)):
            raise ValueError("series coefficients must be finite")
        c.setflags(write=False)
        if parity is None:
            parity = _infer_parity(c)
        elif parity not in PARITIES:
            raise ValueError(f"unknown parity {parity!r}")
        elif parity == "even" and np.any(c[1::2]):
            raise ValueError("parity 'even' but odd-index coefficients are nonzero")
        elif parity == "odd" and np.any(c[0::2]):
            raise ValueError("parity 'odd' but even-index coefficients are nonzero")
        self._c = c
        self.parity = parity

    # -- basic protocol ---------------------------------------------------
    @property
    def coeffs(self) -> np.ndarray:
        return self._c

    @property
    def order(self) -> int:
        return self._c.size - 1

    def __len__(self) -> int:
        return self._c.size

    def __getitem__(self, n: int) -> float:
        return float(self._c[n])

    def __repr__(self) -> str:
        head = ", ".join(f"{v:.6g}" for v in self._c[:6])
        more = ", ..." if self._c.size > 6 else ""
        return f"TaylorSeries([{head}{more}], order={self.order}, parity={self.parity!r})"

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, TaylorSeries):
            return NotImplemented
        return self.parity == other.parity and np.array_equal(self._c, other._c)

    __hash__ = object.__hash__

    # -- constructors -----------------------------------------------------
    @classmethod
    def constant(cls, value: float, order: int = DEFAULT_ORDER) -> "TaylorSeries":
        c = np.zeros(order + 1)
        c[0] = value
        return cls(c)

    @classmethod
    def monomial(cls, n: int, order: int = DEFAULT_ORDER, scale: float = 1.0) -> "TaylorSeries":
        c = np.zeros(order + 1)
        if n <= order:
            c[n] = scale
        return cls(c)

    # -- arithmetic -------------------------------------------------------
    def _coerce(self, other) -> "TaylorSeries":
        if isinstance(other, TaylorSeries):
            return other
        if isinstance(other, (int, float, np.floating, np.integer)):
            return TaylorSeries.constant(float(other), self.order)
        return NotImplemented

    def truncate(self, order: int) -> "TaylorSeries":
        if order > self.order:
            raise ValueError("cannot extend a truncated series")
        return TaylorSeries(self._c[: order + 1].copy())

    def __neg__(self) -> "TaylorSeries":
        return TaylorSeries(-self._c)

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        n = min(self.order, other.order) + 1
        return TaylorSeries(self._c[:n] + other._c[:n])

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        n = min(self.order, other.order) + 1
        return TaylorSeries(self._c[:n] - other._c[:n])

    def __rsub__(self, other):
        return (-self).__add__(other)

    def __mul__(self, other):
        if isinstance(other, (int, float, np.floating, np.integer)):
            return TaylorSeries(self._c * float(other))
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        n = min(self.order, other.order) + 1
        return TaylorSeries(np.convolve(self._c[:n], other._c[:n])[:n])

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, float, np.floating, np.integer)):
            return TaylorSeries(self._c / float(other))
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return _divide(self, other)

    def __rtruediv__(self, other):
        num = self._coerce(other)
        if num is NotImplemented:
            return num
        return _divide(num, self)

    def __pow__(self, k: int) -> "TaylorSeries":
        if not isinstance(k, (int, np.integer)) or k < 0:
            raise ValueError("only non-negative integer powers are supported")
        out = TaylorSeries.constant(1.0, self.order)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def differentiate(self) -> "TaylorSeries":
        if self.order == 0:
            raise ValueError("derivative of an order-0 series is unknown")
        n = np.arange(1, self._c.size)
        return TaylorSeries(self._c[1:] * n)

    def integrate(self) -> "TaylorSeries":
        """Antiderivative with zero constant term (order grows by one)."""
        c = np.zeros(self._c.size + 1)
        c[1:] = self._c / np.arange(1, self._c.size + 1)
        return TaylorSeries(c)

    def compose(self, inner: "TaylorSeries") -> "TaylorSeries":
        """``self(inner(x))``; ``inner`` must vanish at 0."""
        scale = max(1.0, float(np.max(np.abs(inner._c))))
        if abs(inner._c[0]) > 1e-14 * scale:
            raise CompositionNonzeroConstant(
                f"inner series has constant term {inner._c[0]!r}")
        n = min(self.order, inner.order) + 1
        b = inner._c[:n].copy()
        b[0] = 0.0
        acc = np.zeros(n)
        acc[0] = self._c[n - 1]
        # Horner: acc <- acc * b + c_k
        for k in range(n - 2, -1, -1):
            acc = np.convolve(acc, b)[:n]
            acc[0] += self._c[k]
        return TaylorSeries(acc)

    def scale(self, k: float) -> "TaylorSeries":
        """Series of ``x -> f(k x)``."""
        return TaylorSeries(self._c * float(k) ** np.arange(self._c.size))

    def even_part(self) -> "TaylorSeries":
        c = self._c.copy()
        c[1::2] = 0.0
        return TaylorSeries(c)

    def __call__(self, x):
        """Evaluate the truncated polynomial (real or complex, scalar or array)."""
        x = np.asarray(x)
        acc = np.zeros_like(x, dtype=np.result_type(x, float)) + self._c[-1]
        for cn in self._c[-2::-1]:
            acc = acc * x + cn
        return acc if acc.ndim else acc[()]

    def convergence_radius(self) -> float:
        """Root-test estimate of the radius of convergence from the tail."""
        c = np.abs(self._c)
        n = np.arange(c.size)
        tail = (n >= max(1, c.size // 2)) & (c > 0)
        if not np.any(tail):
            return math.inf
        return float(1.0 / np.max(c[tail] ** (1.0 / n[tail])))

    # -- serialisation ----------------------------------------------------
    def to_json(self) -> str:
        body = ", ".join(format(float(v), ".17g") for v in self._c)
        return f'{{"order": {self.order}, "parity": "{self.parity}", "coeffs": [{body}]}}'

    @classmethod
    def from_json(cls, text: str) -> "TaylorSeries":
        data = json.loads(text)
        s = cls(data["coeffs"], parity=data.get("parity"))
        if s.order != data["order"]:
            raise ValueError("order does not match coefficient count")
        return s


def _divide(a: TaylorSeries, b: TaylorSeries) -> TaylorSeries:
    if b.coeffs[0] == 0.0:
        raise DivisionByZeroConstantTerm("divisor has zero constant term")
    n = min(a.order, b.order) + 1
    ac, bc = a.coeffs, b.coeffs
    q = np.zeros(n)
    b0 = bc[0]
    for k in range(n):
        q[k] = (ac[k] - np.dot(bc[1 : k + 1], q[k - 1 :: -1][:k])) / b0 if k else ac[0] / b0
    return TaylorSeries(q)


_OPS = ("add", "sub", "mul", "div", "compose", "differentiate", "integrate")


def series_arith(a: TaylorSeries, b: TaylorSeries | None, op: str) -> TaylorSeries:
    """Dispatch one arithmetic operation by name (``b`` unused for unary ops)."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    if op == "compose":
        return a.compose(b)
    if op == "differentiate":
        return a.differentiate()
    if op == "integrate":
        return a.integrate()
    raise ValueError(f"unknown series operation {op!r}; expected one of {_OPS}")


# -- elementary series ------------------------------------------------------

def exp_series(order: int = DEFAULT_ORDER, k: float = 1.0) -> TaylorSeries:
    n = np.arange(order + 1)
    return TaylorSeries(np.array([k**i / math.factorial(i) for i in n], dtype=float))


def cos_series(order: int = DEFAULT_ORDER, k: float = 1.0) -> TaylorSeries:
    c = np.zeros(order + 1)
    for m in range(0, order + 1, 2):
        c[m] = (-1) ** (m // 2) * k**m / math.factorial(m)
    return TaylorSeries(c, parity="even")


def sin_series(order: int = DEFAULT_ORDER, k: float = 1.0) -> TaylorSeries:
    c = np.zeros(order + 1)
    for m in range(1, order + 1, 2):
        c[m] = (-1) ** (m // 2) * k**m / math.factorial(m)
    return TaylorSeries(c, parity="odd")


def inverse_power_even(power: int, sign: float = -1.0, order: int = DEFAULT_ORDER) -> TaylorSeries:
    """Series of ``(1 + sign*x**2) ** -power`` for power 1 or 2."""
    if power not in (1, 2):
        raise ValueError("power must be 1 or 2")
    c = np.zeros(order + 1)
    for k in range(0, order // 2 + 1):
        c[2 * k] = (1.0 if power == 1 else k + 1.0) * (-sign) ** k
    return TaylorSeries(c, parity="even")


# -- special series ---------------------------------------------------------

@lru_cache(maxsize=None)
def dirichlet_lambda(p: int) -> float:
    """``sum_{n>=0} (2n+1)**-p`` for integer ``p >= 2``.

    The first 10**6 terms are summed exactly-rounded (``math.fsum``); the
    remainder is the midpoint-rule integral ``(2N)**(1-p) / (2(p-1))`` whose
    error is below ``p(p+1) (2N)**-(p+2) / 6``, i.e. < 1e-18 for every p >= 2.
    """
    if isinstance(p, bool) or int(p) != p or p < 2:
        raise InvalidExponent(f"lambda(p) needs an integer p >= 2, got {p!r}")
    p = int(p)
    n = np.arange(_LAMBDA_TERMS, dtype=float)
    with np.errstate(under="ignore"):
        terms = (2.0 * n + 1.0) ** (-p)
    head = math.fsum(terms[::-1])
    tail = (2.0 * _LAMBDA_TERMS) ** (1 - p) / (2.0 * (p - 1))
    return head + tail


def tan_half_series(order: int = DEFAULT_ORDER) -> TaylorSeries:
    """Odd series of ``tan(pi x / 2)``.

    The coefficient of ``x**(2k+1)`` is ``(4/pi) * lambda(2k+2)``, so the
    series of ``(pi/2) tan(pi x/2)`` has coefficients ``2 lambda(2k+2)``.
    """
    if order < 1:
        raise ValueError("order must be >= 1")
    c = np.zeros(order + 1)
    for k in range((order - 1) // 2 + 1):
        c[2 * k + 1] = 4.0 / math.pi * dirichlet_lambda(2 * k + 2)
    return TaylorSeries(c, parity="odd")


def euler_numbers(count: int) -> list[int]:
    """Exact Euler numbers ``E_0, E_2, ..., E_{2*count}``.

    Uses ``sum_k binom(2m, 2k) E_{2k} = 0`` for m >= 1 (the coefficients of
    ``sec x * cos x = 1``).  Raises :class:`OverflowAtOrder` once a value no
    longer fits in a double.
    """
    if count < 0:
        raise ValueError("count must be >= 0")
    out = [1]
    for m in range(1, count + 1):
        e = -sum(math.comb(2 * m, 2 * k) * out[k] for k in range(m))
        try:
            float(e)
        except OverflowError:
            raise OverflowAtOrder(2 * m) from None
        out.append(e)
    return out


def sec_series(order: int = DEFAULT_ORDER) -> TaylorSeries:
    """Even series of ``sec x`` with coefficients ``|E_2m| / (2m)!``."""
    if order < 0:
        raise ValueError("order must be >= 0")
    e = euler_numbers(order // 2)
    c = np.zeros(order + 1)
    for m, em in enumerate(e):
        c[2 * m] = float(Fraction(abs(em), math.factorial(2 * m)))
    return TaylorSeries(c, parity="even")


def schwarzian(f: TaylorSeries) -> TaylorSeries:
    """Series of ``Sf = (f''/f')' - (f''/f')**2 / 2``, order ``N - 3``."""
    if f.order < 3:
        raise ValueError("need order >= 3 for a Schwarzian")
    if f.coeffs[1] == 0.0:
        raise NotLocallyUnivalent("f'(0) = 0")
    d1 = f.differentiate()
    q = d1.differentiate() / d1
    return q.differentiate() - 0.5 * (q * q)


def mobius_series(a: float, b: float, c: float, d: float,
                  order: int = DEFAULT_ORDER) -> TaylorSeries:
    """Series of ``(a z + b) / (c z + d)`` about 0 (needs ``d != 0``)."""
    num = TaylorSeries([b, a] + [0.0] * (order - 1))
    den = TaylorSeries([d, c] + [0.0] * (order - 1))
    return num / den
