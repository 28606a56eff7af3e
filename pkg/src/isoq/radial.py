"""Radial generalized isotonic oscillator.

Units follow ``H = -d^2/dr^2 + V(r)``: the Gaussian factor of every
eigenfunction is ``exp(-omega r^2 / 2)`` and levels are spaced by ``4 omega``.

Operator actions are evaluated from analytic derivatives of the closed-form
eigenfunctions.  The ladder operators shift ``l`` by re-instantiating the
eigenstate at the neighbouring angular momentum, which is how the exponential
shift ``exp(+-d/dl)`` acts on closed-form states.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np
from numpy.polynomial import legendre

from .special_fn import Poly, _x1

__all__ = [
    "OscillatorConfig",
    "RadialEigenstate",
    "SampledFn",
    "QuadratureError",
    "potential_v",
    "partner_potential",
    "energy",
    "norm_constant",
    "eigenfunction",
    "superpotential",
    "schrodinger_residual",
    "apply_A_minus",
    "apply_A_plus",
    "apply_ladder",
    "radial_integral",
    "orthonormality_matrix",
]


class QuadratureError(RuntimeError):
    """Adaptive quadrature did not reach the requested tolerance."""

    def __init__(self, message, estimate):
        super().__init__(message)
        self.estimate = estimate


@dataclass(frozen=True)
class OscillatorConfig:
    omega: float = 1.0
    l: int = 0

    def __post_init__(self):
        if not self.omega > 0:
            raise ValueError(f"omega must be positive, got {self.omega}")
        if int(self.l) != self.l or self.l < 0:
            raise ValueError(f"l must be a nonnegative integer, got {self.l}")

    def shifted(self, dl: int) -> "OscillatorConfig":
        return OscillatorConfig(self.omega, self.l + dl)


@dataclass(frozen=True)
class SampledFn:
    grid: np.ndarray
    values: np.ndarray

    def __post_init__(self):
        g = np.asarray(self.grid, dtype=float)
        v = np.asarray(self.values)
        if g.shape != v.shape:
            raise ValueError("grid and values must have equal lengths")
        if g.size > 1 and not np.all(np.diff(g) > 0):
            raise ValueError("grid must be strictly increasing")
        object.__setattr__(self, "grid", g)
        object.__setattr__(self, "values", v)

    def __add__(self, other: "SampledFn") -> "SampledFn":
        return SampledFn(self.grid, self.values + other.values)

    def __sub__(self, other: "SampledFn") -> "SampledFn":
        return SampledFn(self.grid, self.values - other.values)

    def __mul__(self, scalar) -> "SampledFn":
        return SampledFn(self.grid, self.values * scalar)

    __rmul__ = __mul__

    def max_abs(self) -> float:
        return float(np.max(np.abs(self.values))) if self.values.size else 0.0


def _check_r(r):
    r = np.asarray(r, dtype=float)
    if np.any(r <= 0):
        raise ValueError("radius must be positive")
    return r


def potential_v(r, cfg: OscillatorConfig):
    """omega^2 r^2 + l(l+1)/r^2 + 8 omega/D - 16 omega (2l+1)/D^2, D = 2 omega r^2 + 2l + 1."""
    r = _check_r(r)
    w, l = cfg.omega, cfg.l
    d = 2 * w * r**2 + 2 * l + 1
    return w**2 * r**2 + l * (l + 1) / r**2 + 8 * w / d - 16 * w * (2 * l + 1) / d**2


def partner_potential(r, cfg: OscillatorConfig):
    """V_2 = W^2 + W' for the superpotential of ``cfg``."""
    r = _check_r(r)
    w, l = cfg.omega, cfg.l
    d3 = 2 * w * r**2 + 2 * l + 3
    return (
        w**2 * r**2
        + (l + 1) * (l + 2) / r**2
        + 8 * w / d3
        - 16 * w * (2 * l + 3) / d3**2
        - w * (2 * l + 1)
    )


def energy(n: int, cfg: OscillatorConfig) -> float:
    if n < 0:
        raise ValueError("n must be nonnegative")
    return 2.0 * cfg.omega * (2 * n + cfg.l + 1.5)


def _norm(n: int, l: int, omega: float) -> float:
    # l may be -1 for the shifted state used by the lowering operator
    log_n2 = (
        math.log(8.0)
        + (l + 1.5) * math.log(omega)
        + math.lgamma(n + 1)
        - math.log(n + l + 1.5)
        - math.lgamma(n + l + 0.5)
    )
    return math.exp(0.5 * log_n2)


def norm_constant(n: int, cfg: OscillatorConfig) -> float:
    return _norm(n, cfg.l, cfg.omega)


@dataclass(frozen=True)
class RadialEigenstate:
    """Closed-form eigenfunction Phi_{n,l}.

    ``poly`` is the X1-Laguerre factor L^{(l+1/2)}_{n+1} in ``x = omega r^2``.
    """

    config: OscillatorConfig
    n: int
    norm_const: float = field(init=False)
    poly: Poly = field(init=False, repr=False)

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("n must be nonnegative")
        object.__setattr__(self, "norm_const", norm_constant(self.n, self.config))
        p = _x1(self.n + 1, Fraction(2 * self.config.l + 1, 2), exact=True).to_float()
        object.__setattr__(self, "poly", p)

    @property
    def l(self) -> int:
        return self.config.l

    @property
    def omega(self) -> float:
        return self.config.omega

    @property
    def energy(self) -> float:
        return energy(self.n, self.config)

    def jet(self, r):
        """(Phi, Phi', Phi'') at ``r`` from the product rule."""
        return _eigen_jet(self.n, self.l, self.omega, self.poly, self.norm_const, _check_r(r))

    def __call__(self, r):
        return self.jet(r)[0]

    def sample(self, r) -> SampledFn:
        r = _check_r(r)
        return SampledFn(r, self(r))


def _mul_jet(a, b):
    return (a[0] * b[0], a[1] * b[0] + a[0] * b[1], a[2] * b[0] + 2 * a[1] * b[1] + a[0] * b[2])


def _eigen_jet(n, l, w, poly, norm, r):
    x = w * r**2
    p1 = l + 1
    u1 = (r**p1, p1 * r**l, p1 * l * r ** (l - 1) if l > 0 else 0.0 * r)
    d = 2 * w * r**2 + 2 * l + 1
    dd = 4 * w * r
    u2 = (1 / d, -dd / d**2, -4 * w / d**2 + 2 * dd**2 / d**3)
    dp, ddp = poly.deriv(), poly.deriv().deriv()
    u3 = (poly(x), 2 * w * r * dp(x), 2 * w * dp(x) + 4 * w**2 * r**2 * ddp(x))
    g = np.exp(-0.5 * x)
    u4 = (g, -w * r * g, (w**2 * r**2 - w) * g)
    out = _mul_jet(_mul_jet(u1, u2), _mul_jet(u3, u4))
    return tuple(norm * c for c in out)


def eigenfunction(n: int, cfg: OscillatorConfig) -> RadialEigenstate:
    return RadialEigenstate(cfg, n)


def _w(r, omega, l):
    return (
        omega * r
        - (l + 1) / r
        + 4 * omega * r / (2 * omega * r**2 + 2 * l + 1)
        - 4 * omega * r / (2 * omega * r**2 + 2 * l + 3)
    )


def superpotential(r, cfg: OscillatorConfig):
    """W(r) with V - omega(2l+3) = W^2 - W'."""
    return _w(_check_r(r), cfg.omega, cfg.l)


def schrodinger_residual(state: RadialEigenstate, r) -> SampledFn:
    """-Phi'' + V Phi - E Phi on ``r``."""
    r = _check_r(r)
    phi, _, d2 = state.jet(r)
    res = -d2 + potential_v(r, state.config) * phi - state.energy * phi
    return SampledFn(r, res)


def apply_A_minus(state: RadialEigenstate, r) -> SampledFn:
    """(d/dr + W_l) Phi_{n,l}; proportional to Phi_{n-1,l+1}."""
    r = _check_r(r)
    phi, d1, _ = state.jet(r)
    return SampledFn(r, d1 + _w(r, state.omega, state.l) * phi)


def apply_A_plus(state: RadialEigenstate, r) -> SampledFn:
    """(-d/dr + W_{l-1}) Phi_{n,l}; proportional to Phi_{n+1,l-1}.

    The superpotential is that of the ``l - 1`` system, whose partner
    Hamiltonian has ``state`` among its eigenstates, so ``state.l >= 1``.
    """
    if state.l < 1:
        raise ValueError("A+ maps Phi_{n,l+1} down to l; the state needs l >= 1")
    r = _check_r(r)
    phi, d1, _ = state.jet(r)
    return SampledFn(r, -d1 + _w(r, state.omega, state.l - 1) * phi)


def _lowered(n: int, l: int, omega: float, r):
    """(d/dr + W_{l-1}) Phi_{n,l-1} without the removable pole.

    Adding W_{l-1} to the logarithmic derivative of Phi_{n,l-1} leaves
    ``N r^l e^{-x/2} 2 omega r [P'(x) D_+ - 2 P(x)] / (D_- D_+)`` with
    ``D_- = 2x + 2l - 1`` and ``D_+ = 2x + 2l + 1``.  For ``l = 0`` the factor
    ``D_-`` vanishes at ``x = 1/2``; it is divided out exactly here.
    """
    k = Fraction(2 * l - 1, 2)
    p = _x1(n + 1, k, exact=True)
    x_ = Poly((Fraction(0), Fraction(1)))
    d_minus = x_ * 2 + (2 * l - 1)
    d_plus = x_ * 2 + (2 * l + 1)
    q, rem = (p.deriv() * d_plus - p * 2).divmod(d_minus)
    if not rem.is_zero:
        raise ArithmeticError("lowering numerator is not divisible; pole is not removable")
    q = q.to_float()
    x = omega * r**2
    norm = _norm(n, l - 1, omega)
    return norm * r**l * np.exp(-0.5 * x) * 2 * omega * r * q(x) / (2 * x + 2 * l + 1)


def apply_ladder(state: RadialEigenstate, direction: str, r) -> SampledFn:
    """Action of the shape-invariance ladder operators a_r / a_r^dagger.

    ``raise``:  -(1/sqrt(4w)) A+_l T(l) Phi_{n,l}, with T re-instantiating the
    state at ``l + 1``.
    ``lower``:  -(1/sqrt(4w)) T^{-1}(l) A-_l Phi_{n,l}; the shift is moved
    through the operator, i.e. A-_{l-1} acting on Phi_{n,l-1}.
    """
    r = _check_r(r)
    scale = -1.0 / math.sqrt(4 * state.omega)
    if direction == "raise":
        shifted = RadialEigenstate(state.config.shifted(+1), state.n)
        phi, d1, _ = shifted.jet(r)
        return SampledFn(r, scale * (-d1 + _w(r, state.omega, state.l) * phi))
    if direction == "lower":
        if state.n == 0:
            return SampledFn(r, np.zeros_like(r))
        return SampledFn(r, scale * _lowered(state.n, state.l, state.omega, r))
    raise ValueError(f"direction must be 'raise' or 'lower', got {direction!r}")


def _cutoff(omega: float, degree: int) -> float:
    # exp(-omega R^2) < 1e-16 with headroom for the polynomial growth
    return math.sqrt((40.0 + 4.0 * degree) / omega)


def radial_integral(f, r_max: float, tol: float = 1e-10, order: int = 32, max_panels: int = 4096):
    """Composite Gauss-Legendre on [0, r_max], doubling panels until converged.

    Returns ``(value, error_estimate)``; ``f`` must accept an array of radii
    and may return a trailing batch axis.
    """
    nodes, weights = legendre.leggauss(order)
    panels = 4
    prev = None
    while True:
        edges = np.linspace(0.0, r_max, panels + 1)
        a, b = edges[:-1, None], edges[1:, None]
        rr = (0.5 * (b - a) * nodes + 0.5 * (a + b)).ravel()
        ww = (0.5 * (b - a) * weights).ravel()
        vals = np.asarray(f(rr))
        cur = np.tensordot(ww, vals, axes=(0, 0))
        if prev is not None:
            err = float(np.max(np.abs(cur - prev)))
            if err < tol:
                return cur, err
            if panels >= max_panels:
                raise QuadratureError(f"radial quadrature stalled at error {err:.3e}", err)
        prev = cur
        panels *= 2


def orthonormality_matrix(l: int, n_max: int, cfg: OscillatorConfig | None = None, tol: float = 1e-10):
    """Gram matrix of Phi_{0..n_max, l} by adaptive radial quadrature."""
    if n_max > 12:
        raise ValueError("n_max is limited to 12")
    omega = 1.0 if cfg is None else cfg.omega
    config = OscillatorConfig(omega, l)
    states = [RadialEigenstate(config, n) for n in range(n_max + 1)]

    def integrand(r):
        phis = np.stack([s(r) for s in states], axis=-1)
        return phis[:, :, None] * phis[:, None, :]

    gram, _ = radial_integral(integrand, _cutoff(omega, 2 * n_max + l + 4), tol=tol)
    return gram
