"""Squeezed coherent states of the radial mode and the two Schwinger modes.

Each mode is ``D(alpha0) S(z)|0>`` written in the Fock basis as

    c_n = H_n(alpha sqrt(1-|xi|^2) / sqrt(-2 xi)) (-xi/2)^(n/2) / sqrt(n!)

with ``xi = -exp(i phi) tanh R`` and the squeezed-frame amplitude
``alpha = alpha0 cosh R + conj(alpha0) exp(i phi) sinh R``.  The three-mode
state is a product, so it is stored as three one-mode coefficient sequences.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

import numpy as np

from .special_fn import hermite_scaled

__all__ = [
    "FALLBACK_XI",
    "MAX_SQUEEZE",
    "DEFAULT_CAP",
    "TruncationError",
    "SqueezeParam",
    "CoherentParam",
    "ModeParams",
    "ThreeModeParams",
    "TruncatedState",
    "QuadratureConfig",
    "IdentityResolution",
    "make_squeeze",
    "make_coherent",
    "make_mode",
    "alpha_hyperbolic",
    "alpha_from_xi",
    "alpha0_from_alpha",
    "radial_coeff",
    "angular_coeff",
    "coeff_sequence",
    "truncated_sequence",
    "norm_radial",
    "norm_angular",
    "build_state",
    "identity_resolution_check",
]

# below this |xi| the Hermite argument is replaced by its coherent limit
FALLBACK_XI = 1e-8
MAX_SQUEEZE = 20.0
DEFAULT_CAP = 4096


class TruncationError(RuntimeError):
    """Fock truncation needed more levels than the configured cap."""


@dataclass(frozen=True)
class SqueezeParam:
    R: float
    phi: float = 0.0
    xi: complex = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "xi", -cmath.exp(1j * self.phi) * math.tanh(self.R))


def make_squeeze(R: float, phi: float = 0.0) -> SqueezeParam:
    if R < 0:
        raise ValueError(f"squeeze magnitude must be >= 0, got {R}")
    if R > MAX_SQUEEZE:
        raise ValueError(f"squeeze magnitude {R} exceeds {MAX_SQUEEZE}; |xi| rounds to 1")
    return SqueezeParam(float(R), float(phi))


def alpha_hyperbolic(alpha0: complex, sq: SqueezeParam) -> complex:
    """alpha0 cosh R + conj(alpha0) e^{i phi} sinh R."""
    return alpha0 * math.cosh(sq.R) + alpha0.conjugate() * cmath.exp(1j * sq.phi) * math.sinh(sq.R)


def alpha_from_xi(alpha0: complex, xi: complex) -> complex:
    """(alpha0 - xi conj(alpha0)) / sqrt(1 - |xi|^2)."""
    alpha0 = complex(alpha0)
    return (alpha0 - xi * alpha0.conjugate()) / math.sqrt(1 - abs(xi) ** 2)


def alpha0_from_alpha(alpha: complex, xi: complex) -> complex:
    """Inverse of :func:`alpha_from_xi`; equals the mean field <a>."""
    alpha = complex(alpha)
    return (alpha + xi * alpha.conjugate()) / math.sqrt(1 - abs(xi) ** 2)


@dataclass(frozen=True)
class CoherentParam:
    alpha0: complex
    alpha: complex


def make_coherent(alpha0: complex, sq: SqueezeParam, tol: float = 1e-12) -> CoherentParam:
    """Derive the squeezed-frame amplitude, checking both closed forms agree."""
    alpha0 = complex(alpha0)
    a1 = alpha_hyperbolic(alpha0, sq)
    a2 = alpha_from_xi(alpha0, sq.xi)
    if abs(a1 - a2) > tol * max(1.0, abs(a1)) * math.cosh(sq.R) ** 2:
        raise ArithmeticError(f"alpha formulas disagree: {a1} vs {a2}")
    return CoherentParam(alpha0, a1)


@dataclass(frozen=True)
class ModeParams:
    squeeze: SqueezeParam
    coherent: CoherentParam

    @property
    def xi(self) -> complex:
        return self.squeeze.xi

    @property
    def alpha(self) -> complex:
        return self.coherent.alpha

    @property
    def alpha0(self) -> complex:
        return self.coherent.alpha0


def make_mode(R: float = 0.0, phi: float = 0.0, alpha0: complex = 0.0) -> ModeParams:
    sq = make_squeeze(R, phi)
    return ModeParams(sq, make_coherent(alpha0, sq))


@dataclass(frozen=True)
class ThreeModeParams:
    r: ModeParams
    plus: ModeParams
    minus: ModeParams

    @classmethod
    def uniform(cls, R: float = 0.0, phi: float = 0.0, alpha0: complex = 0.0) -> "ThreeModeParams":
        m = make_mode(R, phi, alpha0)
        return cls(m, m, m)

    def modes(self):
        return (self.r, self.plus, self.minus)


def _check_xi(xi: complex):
    if not abs(xi) < 1:
        raise ValueError(f"|xi| must be < 1, got {abs(xi)}")


def radial_coeff(n: int, xi: complex, alpha: complex, branch: int = 1) -> complex:
    """c_n from the Hermite closed form, evaluated in log-scaled arithmetic.

    ``branch = -1`` takes the other sign of sqrt(-2 xi) in the Hermite argument
    and, consistently, of (-xi/2)^(1/2) in the power factor; the result does
    not depend on it.  For ``|xi| < FALLBACK_XI`` the coherent limit
    ``alpha^n / sqrt(n!)`` is returned.
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    xi, alpha = complex(xi), complex(alpha)
    _check_xi(xi)
    lfact = 0.5 * math.lgamma(n + 1)
    if abs(xi) < FALLBACK_XI:
        if n == 0:
            return 1.0 + 0j
        if alpha == 0:
            return 0j
        return cmath.exp(n * cmath.log(alpha) - lfact)
    root = branch * cmath.sqrt(-2 * xi)
    z = alpha * math.sqrt(1 - abs(xi) ** 2) / root
    mant, log_h = hermite_scaled(n, z)
    if mant == 0:
        return 0j
    log_pow = 0.5 * n * cmath.log(-xi / 2)
    sign = (-1) ** n if branch < 0 else 1
    return sign * mant * cmath.exp(log_h + log_pow - lfact)


def _occupations(l, m):
    """(n_+, n_-) = (l + m, l - m); l runs over half-integers, so 2l and l - m must be integers."""
    two_l, two_m = 2 * l, 2 * m
    if int(two_l) != two_l or int(two_m) != two_m or (two_l - two_m) % 2:
        raise ValueError(f"need 2l, 2m integers with l - m integer, got l={l}, m={m}")
    if abs(m) > l:
        raise ValueError(f"|m| must not exceed l, got l={l}, m={m}")
    return int(two_l + two_m) // 2, int(two_l - two_m) // 2


def angular_coeff(l, m, xi_plus, alpha_plus, xi_minus, alpha_minus, branch: int = 1) -> complex:
    """c_{l,m} = f_+(l+m) f_-(l-m) with the Schwinger occupations n_+- = l +- m.

    Half-integer ``l`` (with ``m`` in unit steps from ``-l``) covers the odd
    total occupations.
    """
    n_p, n_m = _occupations(l, m)
    return radial_coeff(n_p, xi_plus, alpha_plus, branch) * radial_coeff(n_m, xi_minus, alpha_minus, branch)


def coeff_sequence(xi, alpha, n_max: int):
    """c_0..c_{n_max} via the stable recurrence of the Hermite generating function.

    With beta = alpha sqrt(1-|xi|^2):  c_{n+1} = (beta c_n + xi sqrt(n) c_{n-1}) / sqrt(n+1).
    ``xi`` and ``alpha`` may be arrays (broadcast); the index is the last axis.
    """
    xi = np.asarray(xi, dtype=complex)
    alpha = np.asarray(alpha, dtype=complex)
    beta = alpha * np.sqrt(1 - np.abs(xi) ** 2)
    shape = np.broadcast(xi, alpha).shape
    out = np.zeros(shape + (n_max + 1,), dtype=complex)
    out[..., 0] = 1.0
    if n_max >= 1:
        out[..., 1] = beta
    for n in range(1, n_max):
        out[..., n + 1] = (beta * out[..., n] + xi * math.sqrt(n) * out[..., n - 1]) / math.sqrt(n + 1)
    return out


def norm_radial(xi: complex, alpha: complex) -> float:
    """(1-|xi|^2)^(1/4) exp[-(alpha^2 conj(xi) + conj(alpha)^2 xi + 2|alpha|^2)/4]."""
    xi, alpha = complex(xi), complex(alpha)
    _check_xi(xi)
    arg = alpha**2 * xi.conjugate() + alpha.conjugate() ** 2 * xi + 2 * abs(alpha) ** 2
    return (1 - abs(xi) ** 2) ** 0.25 * math.exp(-0.25 * arg.real)


def norm_angular(plus: ModeParams, minus: ModeParams) -> float:
    return norm_radial(plus.xi, plus.alpha) * norm_radial(minus.xi, minus.alpha)


def _mean_n(xi, alpha):
    a0 = alpha0_from_alpha(alpha, xi)
    return abs(a0) ** 2 + abs(xi) ** 2 / (1 - abs(xi) ** 2)


def truncated_sequence(xi, alpha, eps_tail: float = 1e-12, cap: int = DEFAULT_CAP, weight_power: int = 0):
    """Coefficients extended until N^2 sum |c|^2 n^p leaves less than ``eps_tail`` out.

    Returns ``(coeffs, norm, tail)`` where ``tail = 1 - N^2 sum |c_n|^2``.  The
    weighted criterion (``weight_power`` > 0) is used by moment series so the
    neglected part of sum n^p |c_n|^2 is also below ``eps_tail``.
    """
    norm = norm_radial(xi, alpha)
    mean = _mean_n(xi, alpha)
    n_max = max(16, int(4 * mean + 40))
    while True:
        n_max = min(n_max, cap)
        c = coeff_sequence(xi, alpha, n_max)
        p = norm**2 * np.abs(c) ** 2
        tail = 1.0 - float(np.sum(p))
        idx = np.arange(n_max + 1, dtype=float)
        # mass in the last quarter bounds what lies beyond
        q = max(1, (n_max + 1) // 4)
        edge = float(np.sum((p * (1 + idx) ** weight_power)[-q:]))
        if edge < eps_tail * 1e-2 and tail < eps_tail:
            return c, norm, max(tail, 0.0)
        if n_max >= cap:
            raise TruncationError(f"tail {tail:.3e} still above {eps_tail:.1e} at cap {cap}")
        n_max *= 2


@dataclass(frozen=True)
class TruncatedState:
    """Per-mode Fock coefficients of the three-mode state.

    The amplitude of |n, n_+, n_-> is ``norm * coeff_r[n] * coeff_plus[n_+] *
    coeff_minus[n_-]``; in angular labels n_+- = l +- m.
    """

    params: ThreeModeParams
    coeff_r: np.ndarray
    coeff_plus: np.ndarray
    coeff_minus: np.ndarray
    norms: tuple
    tails: tuple

    @property
    def norm(self) -> float:
        return float(np.prod(self.norms))

    @property
    def tail_mass(self) -> float:
        return max(self.tails)

    def amplitude(self, n: int, n_plus: int, n_minus: int) -> complex:
        return self.norm * self.coeff_r[n] * self.coeff_plus[n_plus] * self.coeff_minus[n_minus]

    def angular_amplitude(self, l, m) -> complex:
        """N_+- c_{l,m}, zero outside the stored range."""
        n_p, n_m = _occupations(l, m)
        if n_p >= len(self.coeff_plus) or n_m >= len(self.coeff_minus):
            return 0j
        return self.norms[1] * self.norms[2] * self.coeff_plus[n_p] * self.coeff_minus[n_m]

    def mode_probabilities(self, mode: int) -> np.ndarray:
        c = (self.coeff_r, self.coeff_plus, self.coeff_minus)[mode]
        return self.norms[mode] ** 2 * np.abs(c) ** 2


def build_state(p: ThreeModeParams, eps_tail: float = 1e-12, cap: int = DEFAULT_CAP) -> TruncatedState:
    if not 0 < eps_tail <= 1e-3:
        raise ValueError("eps_tail must lie in (0, 1e-3]")
    seqs, norms, tails = [], [], []
    for mode in p.modes():
        _check_xi(mode.xi)
        c, nrm, tail = truncated_sequence(mode.xi, mode.alpha, eps_tail, cap)
        seqs.append(c)
        norms.append(nrm)
        tails.append(tail)
    return TruncatedState(p, seqs[0], seqs[1], seqs[2], tuple(norms), tuple(tails))


@dataclass(frozen=True)
class QuadratureConfig:
    """Polar grid over the displacement plane: midpoint in radius, uniform in angle."""

    a_max: float = 8.0
    n_radial: int = 200
    n_angle: int = 200

    def refined(self) -> "QuadratureConfig":
        return QuadratureConfig(self.a_max, 2 * self.n_radial, 2 * self.n_angle)


@dataclass(frozen=True)
class IdentityResolution:
    matrix: np.ndarray
    error: float
    error_estimate: float
    converged: bool


def _identity_matrix(xi, n_max, quad: QuadratureConfig):
    h = quad.a_max / quad.n_radial
    rho = (np.arange(quad.n_radial) + 0.5) * h
    theta = 2 * np.pi * np.arange(quad.n_angle) / quad.n_angle
    a0 = rho[:, None] * np.exp(1j * theta[None, :])
    s = math.sqrt(1 - abs(xi) ** 2)
    alpha = (a0 - xi * np.conj(a0)) / s
    norm2 = s * np.exp(-np.abs(alpha) ** 2 - np.real(np.conj(xi) * alpha**2))
    c = coeff_sequence(xi, alpha, n_max)
    w = (norm2 * rho[:, None] * h * (2 * np.pi / quad.n_angle))[..., None, None]
    # fixed-order reduction: angle first, then radius
    integrand = np.conj(c)[..., :, None] * c[..., None, :] * w
    return integrand.sum(axis=1).sum(axis=0) / np.pi


def identity_resolution_check(xi: complex, n_max: int = 6, quad: QuadratureConfig | None = None, tol: float = 1e-3):
    """(1/pi) integral of c*_{n'} c_n N^2 over the displacement plane.

    The measure is d(Re alpha0) d(Im alpha0); the squeezed-frame Jacobian is
    one, so the expected matrix is the identity.  The error estimate is the
    change against a grid with half the resolution in each direction.
    """
    xi = complex(xi)
    if not 0 < abs(xi) <= 0.8:
        raise ValueError("identity check supports 0 < |xi| <= 0.8")
    if n_max > 10:
        raise ValueError("n_max is limited to 10")
    quad = quad or QuadratureConfig()
    m = _identity_matrix(xi, n_max, quad)
    coarse = QuadratureConfig(quad.a_max, max(1, quad.n_radial // 2), max(1, quad.n_angle // 2))
    est = float(np.max(np.abs(m - _identity_matrix(xi, n_max, coarse))))
    err = float(np.max(np.abs(m - np.eye(n_max + 1))))
    return IdentityResolution(m, err, est, est < tol)
