"""Wigner function of the three-mode squeezed coherent state.

The displaced-parity kernel T(zeta) has Fock elements

    <n'|T|n> = e^{-2|zeta|^2} (n'!/n!)^{1/2} 2^{n-n'+1} (-1)^{n'} conj(zeta)^{n-n'} L^{n-n'}_{n'}(4|zeta|^2)

for n >= n', and T is Hermitian.  The Fock series per mode therefore peaks at
2 for a pure Gaussian state; the closed form is normalized to peak 1.  The
series is divided by the measured constant (2 per mode) before comparison.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import ndimage

from .special_fn import laguerre_assoc_eval
from .states import DEFAULT_CAP, ThreeModeParams, make_mode, truncated_sequence

__all__ = [
    "MAX_RESOLUTION",
    "WignerGrid",
    "t_matrix_element",
    "mode_series",
    "wigner_series",
    "mode_closed",
    "wigner_closed",
    "series_constant",
    "wigner_grid",
    "half_tanh_params",
]

MAX_RESOLUTION = 2048
# per-mode value of the Fock series at the peak of a pure Gaussian state
SERIES_CONSTANT = 2.0


def t_matrix_element(n_prime: int, n: int, zeta: complex) -> complex:
    """<n'|T(zeta)|n>; the n' > n case goes through Hermitian conjugation."""
    if n < 0 or n_prime < 0:
        raise ValueError("Fock indices must be nonnegative")
    zeta = complex(zeta)
    if n_prime > n:
        return t_matrix_element(n, n_prime, zeta).conjugate()
    d = n - n_prime
    r2 = abs(zeta) ** 2
    lag = laguerre_assoc_eval(n_prime, d, 4 * r2)
    if lag == 0:
        return 0j
    log_mag = -2 * r2 + 0.5 * (math.lgamma(n_prime + 1) - math.lgamma(n + 1)) + (d + 1) * math.log(2)
    if d:
        if zeta == 0:
            return 0j
        log_mag += d * math.log(abs(zeta))
    phase = complex(math.cos(d * math.atan2(-zeta.imag, zeta.real)), math.sin(d * math.atan2(-zeta.imag, zeta.real)))
    return (-1) ** n_prime * lag * math.exp(log_mag) * phase


def _kernel_diagonals(zeta: np.ndarray, n_max: int):
    """Yield (d, T_{n', n'+d}) for d = 0..n_max; the second item has shape (P, n_max-d+1)."""
    r2 = np.abs(zeta) ** 2
    x = 4 * r2
    phase = np.exp(-1j * np.angle(zeta))
    with np.errstate(divide="ignore"):
        log_r = np.log(np.abs(zeta))
    lf = np.array([math.lgamma(k + 1) for k in range(n_max + 1)])
    for d in range(n_max + 1):
        m = n_max - d + 1
        lag = np.empty((zeta.size, m))
        lag[:, 0] = 1.0
        if m > 1:
            lag[:, 1] = 1.0 + d - x
        for j in range(1, m - 1):
            lag[:, j + 1] = ((2 * j + 1 + d - x) * lag[:, j] - (j + d) * lag[:, j - 1]) / (j + 1)
        npr = np.arange(m)
        logc = 0.5 * (lf[:m] - lf[d : d + m]) + (d + 1) * math.log(2)
        if d:
            logr = np.where(r2 > 0, d * log_r, -np.inf)
        else:
            logr = np.zeros_like(r2)
        mag = np.exp(logc[None, :] + (logr - 2 * r2)[:, None])
        sign = np.where(npr % 2, -1.0, 1.0)
        yield d, sign[None, :] * lag * mag * (phase**d)[:, None]


def mode_series(xi, alpha, zeta, eps: float = 1e-12, cap: int = DEFAULT_CAP, tol: float = 1e-10):
    """N^2 sum_{n, n'} conj(c_{n'}) c_n <n'|T(zeta)|n> for one mode, unnormalized.

    Summation order: diagonal offset d ascending, n' ascending within a
    diagonal.  Both triangles are summed explicitly so the imaginary residue
    is a genuine check rather than zero by construction.
    """
    zeta = np.atleast_1d(np.asarray(zeta, dtype=complex))
    shape = zeta.shape
    z = zeta.ravel()
    c, norm, _ = truncated_sequence(xi, alpha, eps, cap)
    c = norm * c
    n_max = c.size - 1
    total = np.zeros(z.size, dtype=complex)
    for d, t in _kernel_diagonals(z, n_max):
        m = n_max - d + 1
        # upper: n = n' + d, element t; lower: swap roles, element conj(t)
        total += t @ (np.conj(c[:m]) * c[d : d + m])
        if d:
            total += np.conj(t) @ (np.conj(c[d : d + m]) * c[:m])
    scale = np.maximum(1.0, np.abs(total))
    if np.any(np.abs(total.imag) > tol * scale):
        worst = float(np.max(np.abs(total.imag)))
        raise ArithmeticError(f"Wigner series has imaginary residue {worst:.3e}")
    out = total.real.reshape(shape)
    return out if out.ndim else float(out)


def mode_closed(xi, alpha, zeta):
    """Closed Gaussian Wigner factor for one mode, peak value 1."""
    xi, alpha = complex(xi), complex(alpha)
    if not abs(xi) < 1:
        raise ValueError(f"|xi| must be < 1, got {abs(xi)}")
    z = np.asarray(zeta, dtype=complex)
    x2 = abs(xi) ** 2
    s = math.sqrt(1 - x2)
    zc = np.conj(z)
    quad = (-2 * np.abs(z) ** 2 * (x2 + 1) + 2 * (xi * zc**2 + xi.conjugate() * z**2)) / (1 - x2)
    lin = 2 * (alpha * zc + alpha.conjugate() * z) / s
    lin = lin - 2 * (xi.conjugate() * alpha * z + xi * alpha.conjugate() * zc) / s
    out = np.exp((quad + lin).real - 2 * abs(alpha) ** 2)
    return out if out.ndim else float(out)


def _points(zetas):
    if len(zetas) != 3:
        raise ValueError("three phase points are required (modes r, +, -)")
    return zetas


def wigner_closed(p: ThreeModeParams, zetas) -> np.ndarray:
    """Product of the three closed-form mode factors at (zeta_r, zeta_+, zeta_-)."""
    out = 1.0
    for m, z in zip(p.modes(), _points(zetas)):
        out = out * mode_closed(m.xi, m.alpha, z)
    return out


def wigner_series(p: ThreeModeParams, zetas, eps: float = 1e-12, normalize: bool = True):
    """Truncated Fock series, divided by 2^3 when ``normalize`` is set."""
    out = 1.0
    for m, z in zip(p.modes(), _points(zetas)):
        f = mode_series(m.xi, m.alpha, z, eps)
        out = out * (f / SERIES_CONSTANT if normalize else f)
    return out


def series_constant(p: ThreeModeParams, zetas, eps: float = 1e-12, floor: float = 1e-3):
    """Pointwise ratio of the raw series to the closed form.

    Returns ``(constant, spread)``, the mean ratio and its maximum relative
    deviation; the constant must not depend on the phase point.  Points where
    the closed form is below ``floor`` are skipped, since there the ratio
    only measures absolute rounding of the series.
    """
    raw = np.asarray(wigner_series(p, zetas, eps, normalize=False), dtype=float).ravel()
    closed = np.asarray(wigner_closed(p, zetas), dtype=float).ravel()
    keep = closed >= floor
    if not np.any(keep):
        raise ValueError("no phase point above the floor")
    ratio = raw[keep] / closed[keep]
    c = float(np.mean(ratio))
    return c, float(np.max(np.abs(ratio / c - 1)))


def half_tanh_params(R: float, phi: float, alpha0: complex) -> ThreeModeParams:
    """Uniform parameters under the alternative convention xi = -(1/2) tanh R e^{i phi}.

    The squeeze is emulated by an effective magnitude R' with tanh R' = tanh(R)/2.
    """
    r_eff = math.atanh(0.5 * math.tanh(R))
    m = make_mode(r_eff, phi, alpha0)
    return ThreeModeParams(m, m, m)


@dataclass(frozen=True)
class WignerGrid:
    x_axis: np.ndarray
    p_axis: np.ndarray
    values: np.ndarray  # shape (len(p_axis), len(x_axis))

    def __post_init__(self):
        if self.values.shape != (self.p_axis.size, self.x_axis.size):
            raise ValueError("grid values do not match the axes")
        if not np.all(np.isfinite(self.values)):
            raise ValueError("non-finite Wigner values")

    def moments(self):
        """Mean and variances along x and p of the grid treated as a density."""
        w = self.values
        tot = w.sum()
        px = w.sum(axis=0) / tot
        pp = w.sum(axis=1) / tot
        mx = float(px @ self.x_axis)
        mp = float(pp @ self.p_axis)
        vx = float(px @ (self.x_axis - mx) ** 2)
        vp = float(pp @ (self.p_axis - mp) ** 2)
        return mx, mp, vx, vp

    def peak_count(self, rel: float = 1e-6) -> int:
        """Number of local maxima; ties on a plateau count once.

        Values below ``rel`` times the grid maximum are ignored so underflowed
        flat regions do not register as maxima.
        """
        w = self.values
        is_max = (w == ndimage.maximum_filter(w, size=3, mode="nearest")) & (w > rel * w.max())
        _, count = ndimage.label(is_max, structure=np.ones((3, 3)))
        return int(count)


def wigner_grid(
    p: ThreeModeParams,
    x_range=(-3.0, 3.0),
    p_range=(-3.0, 3.0),
    resolution: int = 128,
    mode: str = "closed",
    modes=("r", "plus", "minus"),
    eps: float = 1e-12,
) -> WignerGrid:
    """Wigner function on the slice zeta_r = zeta_+ = zeta_- = x + i p.

    ``modes`` selects which factors enter the product; a single entry gives a
    one-mode slice, whose grid integral times 2/pi is 1.
    """
    if not 2 <= resolution <= MAX_RESOLUTION:
        raise ValueError(f"resolution must lie in [2, {MAX_RESOLUTION}], got {resolution}")
    if mode not in ("closed", "series"):
        raise ValueError(f"mode must be 'closed' or 'series', got {mode!r}")
    params = {"r": p.r, "plus": p.plus, "minus": p.minus}
    xs = np.linspace(*x_range, resolution)
    ps = np.linspace(*p_range, resolution)
    zeta = xs[None, :] + 1j * ps[:, None]
    vals = np.ones(zeta.shape)
    cache = {}
    for name in modes:
        m = params[name]
        key = (m.xi, m.alpha)
        if key not in cache:
            if mode == "closed":
                cache[key] = mode_closed(m.xi, m.alpha, zeta)
            else:
                cache[key] = mode_series(m.xi, m.alpha, zeta, eps) / SERIES_CONSTANT
        vals = vals * cache[key]
    return WignerGrid(xs, ps, vals)
