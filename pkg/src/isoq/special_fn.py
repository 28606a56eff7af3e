"""Hermite, associated Laguerre and X1-Laguerre polynomials.

Polynomials are held as ascending coefficient tuples.  With ``exact=True``
the coefficients are :class:`fractions.Fraction` so identities can be checked
with zero tolerance; float coefficients give a fast evaluation path.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Number

import numpy as np

__all__ = [
    "Poly",
    "RationalFunction",
    "hermite_scaled",
    "hermite_eval",
    "hermite_poly",
    "laguerre_assoc_eval",
    "laguerre_poly",
    "x1_laguerre",
    "x1_ode_residual",
    "apply_Ak",
    "apply_Bk",
]

# rescale the Hermite recurrence once the magnitude passes this
_RESCALE = 1e100


def _as_coeff(value, exact: bool):
    if exact:
        if isinstance(value, Fraction):
            return value
        if isinstance(value, float):
            return Fraction(value)
        return Fraction(value)
    return float(value)


@dataclass(frozen=True)
class Poly:
    """Univariate polynomial in ``x`` with ascending coefficients.

    The zero polynomial is ``Poly(())``; trailing zeros are always stripped so
    ``degree == len(coeffs) - 1``.
    """

    coeffs: tuple = ()

    def __post_init__(self):
        c = list(self.coeffs)
        while c and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(c))

    @classmethod
    def constant(cls, value, exact: bool = True) -> "Poly":
        return cls((_as_coeff(value, exact),))

    @classmethod
    def monomial(cls, degree: int, exact: bool = True) -> "Poly":
        zero, one = _as_coeff(0, exact), _as_coeff(1, exact)
        return cls((zero,) * degree + (one,))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def exact(self) -> bool:
        return all(isinstance(c, (Fraction, int)) for c in self.coeffs)

    def to_float(self) -> "Poly":
        return Poly(tuple(float(c) for c in self.coeffs))

    def __add__(self, other):
        if isinstance(other, Number):
            other = Poly((other,))
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (0,) * (n - len(self.coeffs))
        b = other.coeffs + (0,) * (n - len(other.coeffs))
        return Poly(tuple(x + y for x, y in zip(a, b)))

    __radd__ = __add__

    def __neg__(self):
        return Poly(tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, Number):
            return Poly(tuple(c * other for c in self.coeffs))
        if self.is_zero or other.is_zero:
            return Poly(())
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return Poly(tuple(out))

    __rmul__ = __mul__

    def deriv(self) -> "Poly":
        return Poly(tuple(i * c for i, c in enumerate(self.coeffs) if i > 0))

    def divmod(self, other: "Poly"):
        """Long division, returning ``(quotient, remainder)``."""
        if other.is_zero:
            raise ZeroDivisionError("division by the zero polynomial")
        rem = list(self.coeffs)
        lead = other.coeffs[-1]
        dq = len(rem) - len(other.coeffs)
        if dq < 0:
            return Poly(()), self
        quot = [0] * (dq + 1)
        for i in range(dq, -1, -1):
            q = rem[i + other.degree] / lead
            quot[i] = q
            for j, b in enumerate(other.coeffs):
                rem[i + j] -= q * b
        return Poly(tuple(quot)), Poly(tuple(rem[: other.degree]))

    def max_abs_coeff(self) -> float:
        return max((abs(float(c)) for c in self.coeffs), default=0.0)

    def __call__(self, x):
        """Horner evaluation; works for scalars and numpy arrays."""
        if self.is_zero:
            return x * 0
        acc = self.coeffs[-1]
        if isinstance(x, np.ndarray) or isinstance(x, (float, complex)):
            acc = float(acc)
            for c in reversed(self.coeffs[:-1]):
                acc = acc * x + float(c)
            return acc + x * 0
        for c in reversed(self.coeffs[:-1]):
            acc = acc * x + c
        return acc


def _poly_gcd(a: Poly, b: Poly) -> Poly:
    while not b.is_zero:
        _, r = a.divmod(b)
        if not r.exact and r.max_abs_coeff() < 1e-12 * max(1.0, a.max_abs_coeff()):
            r = Poly(())
        a, b = b, r
    if a.is_zero:
        return a
    return a * (1 / a.coeffs[-1])


@dataclass(frozen=True)
class RationalFunction:
    """``numerator / denominator``, returned when an operator output is not a
    polynomial."""

    numerator: Poly
    denominator: Poly

    def __post_init__(self):
        if self.denominator.is_zero:
            raise ZeroDivisionError("denominator is identically zero")

    def reduced(self) -> "RationalFunction":
        g = _poly_gcd(self.numerator, self.denominator)
        if g.is_zero or g.degree == 0:
            return self
        num, _ = self.numerator.divmod(g)
        den, _ = self.denominator.divmod(g)
        return RationalFunction(num, den)

    def __call__(self, x):
        return self.numerator(x) / self.denominator(x)


def _poly_or_rational(num: Poly, den: Poly, tol: float = 1e-10):
    q, r = num.divmod(den)
    if r.is_zero:
        return q
    if not r.exact and r.max_abs_coeff() <= tol * max(1.0, num.max_abs_coeff()):
        return q
    return RationalFunction(num, den).reduced()


def hermite_scaled(n: int, z: complex):
    """Physicists' Hermite polynomial as ``(mantissa, log_scale)``.

    ``H_n(z) == mantissa * exp(log_scale)``.  The three-term recurrence is
    rescaled whenever the running magnitude exceeds 1e100, so the pair stays
    finite for large ``n`` and ``|z|``.
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    z = complex(z)
    h_prev, h = 1.0 + 0j, 2.0 * z
    log_scale = 0.0
    if n == 0:
        return h_prev, 0.0
    for k in range(1, n):
        h_prev, h = h, 2.0 * z * h - 2.0 * k * h_prev
        m = abs(h)
        if m > _RESCALE:
            h_prev /= m
            h /= m
            log_scale += math.log(m)
    return h, log_scale


def hermite_eval(n: int, z: complex) -> complex:
    """H_n(z) by recurrence (may overflow to inf for huge arguments)."""
    m, s = hermite_scaled(n, z)
    if s == 0.0:
        return m
    return m * math.exp(s)


def hermite_poly(n: int) -> Poly:
    """Exact integer coefficients of H_n."""
    x2 = Poly((0, 2))
    h_prev, h = Poly((1,)), x2
    if n == 0:
        return h_prev
    for k in range(1, n):
        h_prev, h = h, x2 * h - h_prev * (2 * k)
    return h


def laguerre_assoc_eval(n: int, k, x):
    """Associated Laguerre polynomial L^k_n(x) by the three-term recurrence.

    ``k`` may be any real, including negative integers, for which the
    recurrence reproduces ``L^{-n}_n(x) = (-x)^n / n!``.
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    x = np.asarray(x, dtype=float) if not np.isscalar(x) else float(x)
    l_prev = 1.0 + 0.0 * x
    if n == 0:
        return l_prev
    l_cur = 1.0 + k - x
    for j in range(1, n):
        l_prev, l_cur = l_cur, ((2 * j + 1 + k - x) * l_cur - (j + k) * l_prev) / (j + 1)
    return l_cur


def laguerre_poly(n: int, k, exact: bool = True) -> Poly:
    """Coefficients of L^k_n; ``n = -1`` gives the zero polynomial."""
    if n < 0:
        return Poly(())
    k = _as_coeff(k, exact)
    one = _as_coeff(1, exact)
    xpoly = Poly((0 * one, one))
    l_prev = Poly((one,))
    if n == 0:
        return l_prev
    l_cur = Poly((one + k, -one))
    for j in range(1, n):
        nxt = (Poly((2 * j + 1 + k,)) - xpoly) * l_cur - l_prev * (j + k)
        l_prev, l_cur = l_cur, nxt * (one / (j + 1))
    return l_cur


def _x1(nu: int, k, exact: bool) -> Poly:
    kk = _as_coeff(k, exact)
    one = _as_coeff(1, exact)
    lin = Poly((kk + one, one))
    return -(lin * laguerre_poly(nu - 1, kk, exact)) + laguerre_poly(nu - 2, kk, exact)


def x1_laguerre(nu: int, k, exact: bool = True) -> Poly:
    """X1-Laguerre polynomial ``-(x+k+1) L^k_{nu-1} + L^k_{nu-2}``.

    Parameters
    ----------
    nu : int
        degree, ``nu >= 1``
    k : float or Fraction
        positive parameter; floats are converted exactly when ``exact``
    exact : bool
        rational coefficients if True, floats otherwise
    """
    if int(nu) != nu or nu < 1:
        raise ValueError(f"X1-Laguerre degree must be an integer >= 1, got {nu}")
    if k <= 0:
        raise ValueError(f"X1-Laguerre parameter must be positive, got {k}")
    return _x1(int(nu), k, exact)


def x1_ode_residual(nu: int, k, exact: bool = True) -> Poly:
    """Cleared-denominator residual of the X1-Laguerre differential equation.

    Multiplying the equation by ``x (x + k)`` gives
    ``x(x+k) y'' - (x-k)(x+k+1) y' + ((x-k) + (nu-1)(x+k)) y``,
    which is the zero polynomial when ``y`` is the degree-``nu`` member.
    """
    y = x1_laguerre(nu, k, exact)
    kk = _as_coeff(k, exact)
    one = _as_coeff(1, exact)
    x = Poly((0 * one, one))
    xk = x + kk
    dy = y.deriv()
    return (
        x * xk * dy.deriv()
        - (x - kk) * (xk + one) * dy
        + ((x - kk) + xk * (nu - 1)) * y
    )


def _require_poly(y):
    if not isinstance(y, Poly):
        raise TypeError(f"operator input must be a Poly, got {type(y).__name__}")


def apply_Ak(y: Poly, k, exact: bool | None = None):
    """A_k(y) = -((x+k+1)^2/(x+k)) d/dx[y/(x+k+1)].

    Simplifies to ``-((x+k+1) y' - y) / (x+k)``.  Returns a :class:`Poly`
    when the division is exact, otherwise a reduced :class:`RationalFunction`.
    """
    _require_poly(y)
    if y.is_zero:
        return Poly(())
    if exact is None:
        exact = y.exact
    kk = _as_coeff(k, exact)
    one = _as_coeff(1, exact)
    x = Poly((0 * one, one))
    num = -((x + kk + one) * y.deriv() - y)
    return _poly_or_rational(num, x + kk)


def apply_Bk(y: Poly, k, exact: bool | None = None):
    """B_k(y) = (x(x+k)/(x+k+1)) (y' - y) + k y."""
    _require_poly(y)
    if y.is_zero:
        return Poly(())
    if exact is None:
        exact = y.exact
    kk = _as_coeff(k, exact)
    one = _as_coeff(1, exact)
    x = Poly((0 * one, one))
    den = x + kk + one
    num = x * (x + kk) * (y.deriv() - y) + y * den * kk
    return _poly_or_rational(num, den)
