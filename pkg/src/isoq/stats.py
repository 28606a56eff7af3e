"""Photon statistics and squeezing indicators.

Closed forms are written in terms of the squeezed-frame amplitude ``alpha``
and ``xi``; each has a truncated Fock-sum counterpart used as an oracle.

Reading adopted for the angular products: with L+ = a+^dag a- the product
state gives <L+ L-> = <n+>(<n-> + 1) and <L- L+> = (<n+> + 1)<n->, i.e. the
"+1" sits on the mode whose annihilator is applied first.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .states import (
    DEFAULT_CAP,
    ThreeModeParams,
    alpha0_from_alpha,
    truncated_sequence,
)

__all__ = [
    "UndefinedIndicator",
    "ModeMoments",
    "QuadExpectations",
    "AngularExpectations",
    "mean_n_closed",
    "mean_n2_closed",
    "mean_n_series",
    "mean_n2_series",
    "mode_moments",
    "mandel_q",
    "quad_expectations",
    "quad_expectations_series",
    "squeeze_indicators",
    "quadrature_variances",
    "angular_expectations",
    "angular_expectations_series",
    "angular_variances",
    "angular_variances_plus_form",
    "spin_squeeze_indicators",
]

LZ_THRESHOLD = 1e-9


class UndefinedIndicator(ValueError):
    """Normalizing quantity vanishes (vacuum Q, or <L_z> below threshold)."""


def _check(xi):
    if not abs(xi) < 1:
        raise ValueError(f"|xi| must be < 1, got {abs(xi)}")


def _parts(xi, alpha):
    xi, alpha = complex(xi), complex(alpha)
    _check(xi)
    x2 = abs(xi) ** 2
    a2 = abs(alpha) ** 2
    s = (xi.conjugate() * alpha**2 + xi * alpha.conjugate() ** 2).real
    return x2, a2, s


def mean_n_closed(xi, alpha) -> float:
    """[|a|^2 (1+|xi|^2) + xi a*^2 + xi* a^2 + |xi|^2] / (1 - |xi|^2)."""
    x2, a2, s = _parts(xi, alpha)
    return (a2 * (1 + x2) + s + x2) / (1 - x2)


def mean_n2_closed(xi, alpha) -> float:
    x2, a2, s = _parts(xi, alpha)
    num = (
        a2**2 * (1 + x2) ** 2
        + x2 * (2 + x2)
        + s**2
        + (2 * (1 + a2) * (1 + x2) + 2 * x2) * s
        + a2 * (1 + 8 * x2 + 3 * x2**2)
    )
    return num / (1 - x2) ** 2


def _probabilities(xi, alpha, eps, power, cap=DEFAULT_CAP):
    _check(xi)
    c, norm, _ = truncated_sequence(xi, alpha, eps, cap, weight_power=power)
    return norm**2 * np.abs(c) ** 2


def mean_n_series(xi, alpha, eps: float = 1e-13) -> float:
    p = _probabilities(xi, alpha, eps, 1)
    return float(np.dot(np.arange(p.size), p))


def mean_n2_series(xi, alpha, eps: float = 1e-13) -> float:
    p = _probabilities(xi, alpha, eps, 2)
    n = np.arange(p.size, dtype=float)
    return float(np.dot(n * n, p))


@dataclass(frozen=True)
class ModeMoments:
    mean_n: float
    mean_n2: float
    q: float

    @property
    def variance(self) -> float:
        return self.mean_n2 - self.mean_n**2


def mandel_q(xi, alpha) -> float:
    """<n^2>/<n> - <n> - 1."""
    n1 = mean_n_closed(xi, alpha)
    if n1 <= 0:
        raise UndefinedIndicator("Mandel Q is undefined for the vacuum (<n> = 0)")
    return mean_n2_closed(xi, alpha) / n1 - n1 - 1


def mode_moments(xi, alpha) -> ModeMoments:
    return ModeMoments(mean_n_closed(xi, alpha), mean_n2_closed(xi, alpha), mandel_q(xi, alpha))


@dataclass(frozen=True)
class QuadExpectations:
    a: complex
    a_dag: complex
    a2: complex
    a_dag2: complex
    n: float


def quad_expectations(xi, alpha) -> QuadExpectations:
    """<a>, <a^dag>, <a^2>, <a^dag^2>, <a^dag a> for one mode.

    <a> = (alpha + xi alpha*) / sqrt(1-|xi|^2) is the displacement alpha0;
    <a^2> = (xi + (alpha + xi alpha*)^2) / (1 - |xi|^2).
    """
    xi, alpha = complex(xi), complex(alpha)
    _check(xi)
    s2 = 1 - abs(xi) ** 2
    u = alpha + xi * alpha.conjugate()
    a = u / math.sqrt(s2)
    a2 = (xi + u * u) / s2
    return QuadExpectations(a, a.conjugate(), a2, a2.conjugate(), mean_n_closed(xi, alpha))


def _fock_moments(xi, alpha, eps):
    c, norm, _ = truncated_sequence(xi, alpha, eps, weight_power=2)
    c = norm * c
    n = np.arange(c.size, dtype=float)
    a = np.sum(np.conj(c[:-1]) * c[1:] * np.sqrt(n[1:]))
    a2 = np.sum(np.conj(c[:-2]) * c[2:] * np.sqrt(n[2:] * n[1:-1]))
    nn = float(np.sum(n * np.abs(c) ** 2))
    return complex(a), complex(a2), nn


def quad_expectations_series(xi, alpha, eps: float = 1e-13) -> QuadExpectations:
    """Same quantities from ladder matrix elements on the truncated state."""
    a, a2, nn = _fock_moments(complex(xi), complex(alpha), eps)
    return QuadExpectations(a, a.conjugate(), a2, a2.conjugate(), nn)


def squeeze_indicators(xi, alpha, tol: float = 1e-12):
    """(I1, I2); I1 = 2 Var(w) - 1 and I2 = 2 Var(p) - 1 for w, p = (a^dag +- a)/sqrt(2)."""
    e = quad_expectations(xi, alpha)
    i1 = e.a2 + e.a_dag2 - e.a**2 - e.a_dag**2 - 2 * e.a * e.a_dag + 2 * e.n
    i2 = -e.a2 - e.a_dag2 + e.a**2 + e.a_dag**2 - 2 * e.a * e.a_dag + 2 * e.n
    scale = 1 + abs(i1) + abs(i2)
    if abs(i1.imag) > tol * scale or abs(i2.imag) > tol * scale:
        raise ArithmeticError("squeezing indicators have an imaginary residue")
    return float(i1.real), float(i2.real)


def quadrature_variances(xi, alpha):
    """(Var w, Var p) with w = (a^dag + a)/sqrt 2, p = i(a^dag - a)/sqrt 2."""
    e = quad_expectations(xi, alpha)
    w = (e.a + e.a_dag) / math.sqrt(2)
    p = 1j * (e.a_dag - e.a) / math.sqrt(2)
    w2 = (e.a2 + e.a_dag2 + 2 * e.n + 1) / 2
    p2 = -(e.a2 + e.a_dag2 - 2 * e.n - 1) / 2
    return float((w2 - w * w).real), float((p2 - p * p).real)


@dataclass(frozen=True)
class AngularExpectations:
    lp: complex
    lm: complex
    lp2: complex
    lm2: complex
    lplm: float
    lmlp: float
    lz: float


def _mode_pm(p: ThreeModeParams):
    for m in (p.plus, p.minus):
        _check(m.xi)
    return p.plus, p.minus


def angular_expectations(p: ThreeModeParams) -> AngularExpectations:
    """<L+>, <L->, <L+^2>, <L-^2>, <L+L->, <L-L+>, <Lz> in closed form.

    With u_j = alpha_j + xi_j alpha_j* and s_j = 1 - |xi_j|^2:
    <L+> = conj(u+) u- / sqrt(s+ s-), <L+^2> = conj(xi+ + u+^2)(xi- + u-^2)/(s+ s-),
    and the number moments n_j from the single-mode closed form.
    """
    plus, minus = _mode_pm(p)
    ep = quad_expectations(plus.xi, plus.alpha)
    em = quad_expectations(minus.xi, minus.alpha)
    lp = ep.a_dag * em.a
    lp2 = ep.a_dag2 * em.a2
    n_p, n_m = ep.n, em.n
    return AngularExpectations(
        lp=lp,
        lm=lp.conjugate(),
        lp2=lp2,
        lm2=lp2.conjugate(),
        lplm=n_p * (n_m + 1),
        lmlp=(n_p + 1) * n_m,
        lz=0.5 * (n_p - n_m),
    )


def angular_expectations_series(p: ThreeModeParams, eps: float = 1e-13, tol: float = 1e-12) -> AngularExpectations:
    """Two-mode Fock sums over the amplitude grid c_{n+, n-}.

    Operators act through the Schwinger representation L+ = a+^dag a-,
    L- = a-^dag a+, Lz = (n+ - n-)/2 on the outer-product amplitudes.
    """
    plus, minus = _mode_pm(p)
    cp, np_, _ = truncated_sequence(plus.xi, plus.alpha, eps, weight_power=2)
    cm, nm_, _ = truncated_sequence(minus.xi, minus.alpha, eps, weight_power=2)
    amp = np_ * nm_ * cp[:, None] * cm[None, :]
    kp = np.arange(amp.shape[0], dtype=float)[:, None]
    km = np.arange(amp.shape[1], dtype=float)[None, :]

    def apply_lminus(v):
        # L-|n+, n-> = sqrt(n+ (n- + 1)) |n+ - 1, n- + 1>
        out = np.zeros_like(v)
        out[:-1, 1:] = (v * np.sqrt(kp * (km + 1)))[1:, :-1]
        return out

    def apply_lplus(v):
        # L+|n+, n-> = sqrt((n+ + 1) n-) |n+ + 1, n- - 1>
        out = np.zeros_like(v)
        out[1:, :-1] = (v * np.sqrt((kp + 1) * km))[:-1, 1:]
        return out

    def expect(v):
        return complex(np.sum(np.conj(amp) * v))

    lp = expect(apply_lplus(amp))
    lm = expect(apply_lminus(amp))
    lp2 = expect(apply_lplus(apply_lplus(amp)))
    lm2 = expect(apply_lminus(apply_lminus(amp)))
    lplm = expect(apply_lplus(apply_lminus(amp)))
    lmlp = expect(apply_lminus(apply_lplus(amp)))
    lz = expect(0.5 * (kp - km) * amp)
    for name, v in (("L+L-", lplm), ("L-L+", lmlp), ("Lz", lz)):
        if abs(v.imag) > tol * (1 + abs(v)):
            raise ArithmeticError(f"<{name}> has an imaginary residue {v.imag:.3e}")
    return AngularExpectations(lp, lm, lp2, lm2, lplm.real, lmlp.real, lz.real)


def angular_variances(e: AngularExpectations):
    """(Var Lx, Var Ly) from <L^2> - <L>^2 with Lx = (L+ + L-)/2, Ly = i(L+ - L-)/2."""
    lx = 0.5 * (e.lp + e.lm)
    ly = 0.5j * (e.lp - e.lm)
    lx2 = 0.25 * (e.lp2 + e.lm2 + e.lplm + e.lmlp)
    ly2 = -0.25 * (e.lp2 + e.lm2 - e.lplm - e.lmlp)
    return float((lx2 - lx * lx).real), float((ly2 - ly * ly).real)


def angular_variances_plus_form(e: AngularExpectations):
    """Variances with the mean square added rather than subtracted for L_x, kept for comparison.

    The Lx expression adds (<L+> + <L->)^2 / 4, which equals <Lx^2> + <Lx>^2
    rather than the variance; the Ly expression coincides with the variance.
    """
    vx = 0.25 * (e.lp2 + e.lm2 + e.lplm + e.lmlp + (e.lp + e.lm) ** 2)
    vy = -0.25 * (e.lp2 + e.lm2 - e.lplm - e.lmlp - (e.lp - e.lm) ** 2)
    return float(vx.real), float(vy.real)


def spin_squeeze_indicators(p: ThreeModeParams, threshold: float = LZ_THRESHOLD):
    """(S_Lx, S_Ly) = (2 Var L - |<Lz>|) / |<Lz>|."""
    e = angular_expectations(p)
    lz = abs(e.lz)
    if lz <= threshold:
        raise UndefinedIndicator(f"|<Lz>| = {lz:.3e} is below {threshold:.1e}")
    vx, vy = angular_variances(e)
    return (2 * vx - lz) / lz, (2 * vy - lz) / lz
