"""Invariant suites behind ``isoq validate``.

Each suite returns :class:`Check` records.  A check flagged ``known`` is a
documented disagreement with a reference sign pattern; it is reported but only
affects the exit status under ``strict``.
"""

from __future__ import annotations

import cmath
import math
import time
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import radial, special_fn, states, stats, wigner

STANDARD_XI = (0.1, 0.3, 0.5, 0.7)
STANDARD_PHASES = (0.0, math.pi / 3)
STANDARD_ALPHA = (0.0, 1.0, 3.0)


@dataclass(frozen=True)
class Check:
    criterion: str
    name: str
    passed: bool
    value: float
    bound: float
    known: bool = False
    # wall-clock values are left out of written reports to keep them reproducible
    volatile: bool = False

    @property
    def status(self) -> str:
        if self.passed:
            return "PASS"
        return "KNOWN-FAIL" if self.known else "FAIL"


def _mode(abs_xi, phi, alpha0):
    return states.make_mode(math.atanh(abs_xi), phi, alpha0)


def _literal_mode(xi, alpha0):
    """Mode whose xi equals the given complex number."""
    xi = complex(xi)
    if xi == 0:
        return states.make_mode(0.0, 0.0, alpha0)
    return states.make_mode(math.atanh(abs(xi)), cmath.phase(-xi), alpha0)


def standard_sweep(phases=STANDARD_PHASES):
    for x in STANDARD_XI:
        for ph in phases:
            for a in STANDARD_ALPHA:
                yield _mode(x, ph, a * cmath.exp(0.4j))


def _timed(fn):
    t = time.perf_counter()
    out = fn()
    return out, time.perf_counter() - t


# 1 ------------------------------------------------------------------------

def tabulated_x1(nu: int, k: Fraction) -> special_fn.Poly:
    """The three tabulated low-degree X1-Laguerre polynomials."""
    P = special_fn.Poly
    if nu == 1:
        return P((-(k + 1), Fraction(-1)))
    if nu == 2:
        return P((-k * (k + 2), Fraction(0), Fraction(1)))
    if nu == 3:
        return P((-k / 2 * (3 + 4 * k + k * k), k * (k + 3) / 2, (k + 3) / 2, Fraction(-1, 2)))
    raise ValueError("only degrees 1..3 are tabulated")


def check_x1_laguerre():
    def run():
        table = chain = ode = 0
        for k in (Fraction(1, 2), Fraction(3, 2), Fraction(5, 2)):
            for nu in range(1, 13):
                y = special_fn.x1_laguerre(nu, k)
                if nu <= 3:
                    table += int(y != tabulated_x1(nu, k))
                # A_k lowers the degree and raises the parameter within the family
                a = special_fn.apply_Ak(y, k)
                target = special_fn.x1_laguerre(nu - 1, k + 1) if nu > 1 else special_fn.Poly(())
                chain += int(a != target)
                ode += int(not special_fn.x1_ode_residual(nu, k).is_zero)
        return table, chain, ode

    (table, chain, ode), dt = _timed(run)
    return [
        Check("1", "construction equals the tabulated degrees 1-3 exactly", table == 0, table, 0),
        Check("1", "A_k L^k_nu = L^(k+1)_(nu-1) exactly", chain == 0, chain, 0),
        Check("1", "X1 ODE residual is the zero polynomial", ode == 0, ode, 0),
        Check("1", "runtime (s)", dt < 1.0, dt, 1.0, volatile=True),
    ]


# 2 ------------------------------------------------------------------------

def check_eigensystem():
    def run():
        r = np.linspace(0.1, 8.0, 400)
        worst_res = worst_gram = 0.0
        for w in (0.5, 1.0, 2.0):
            for l in range(4):
                cfg = radial.OscillatorConfig(w, l)
                for n in range(7):
                    st = radial.eigenfunction(n, cfg)
                    res = radial.schrodinger_residual(st, r).max_abs()
                    worst_res = max(worst_res, res / np.max(np.abs(st(r))))
                g = radial.orthonormality_matrix(l, 6, cfg)
                worst_gram = max(worst_gram, float(np.max(np.abs(g - np.eye(7)))))
        return worst_res, worst_gram

    (res, gram), dt = _timed(run)
    return [
        Check("2", "Schrodinger residual / max|Phi|", res < 1e-8, res, 1e-8),
        Check("2", "Gram matrix deviation from identity", gram < 1e-7, gram, 1e-7),
        Check("2", "runtime (s)", dt < 10.0, dt, 10.0, volatile=True),
    ]


# 3 ------------------------------------------------------------------------

def check_ladder():
    r = np.linspace(0.1, 8.0, 400)
    worst_lo = worst_hi = worst_comm = 0.0
    for w in (0.5, 1.0, 2.0):
        for l in range(4):
            cfg = radial.OscillatorConfig(w, l)
            for n in range(6):
                st = radial.eigenfunction(n, cfg)
                scale = np.max(np.abs(st(r)))
                lo = radial.apply_ladder(st, "lower", r).values
                ref = math.sqrt(n) * radial.eigenfunction(n - 1, cfg)(r) if n else 0 * r
                worst_lo = max(worst_lo, float(np.max(np.abs(lo - ref))) / scale)
                up = radial.apply_ladder(st, "raise", r).values
                ref = math.sqrt(n + 1) * radial.eigenfunction(n + 1, cfg)(r)
                worst_hi = max(worst_hi, float(np.max(np.abs(up - ref))) / scale)
                # [a, a^dag] Phi_n = a a^dag Phi_n - a^dag a Phi_n, each composed numerically
                aad = math.sqrt(n + 1) * radial.apply_ladder(radial.eigenfunction(n + 1, cfg), "lower", r).values
                ada = math.sqrt(n) * radial.apply_ladder(radial.eigenfunction(n - 1, cfg), "raise", r).values if n else 0 * r
                worst_comm = max(worst_comm, float(np.max(np.abs(aad - ada - st(r)))) / scale)
    return [
        Check("3", "a_r Phi_n = sqrt(n) Phi_(n-1)", worst_lo < 1e-8, worst_lo, 1e-8),
        Check("3", "a_r^dag Phi_n = sqrt(n+1) Phi_(n+1)", worst_hi < 1e-8, worst_hi, 1e-8),
        Check("3", "[a_r, a_r^dag] Phi = Phi", worst_comm < 1e-8, worst_comm, 1e-8),
    ]


# 4 ------------------------------------------------------------------------

def check_normalization():
    worst_norm = worst_branch = 0.0
    for m in standard_sweep(phases=(0.0, math.pi / 3, math.pi)):
        c, norm, _ = states.truncated_sequence(m.xi, m.alpha, 1e-14)
        worst_norm = max(worst_norm, abs(norm**2 * float(np.sum(np.abs(c) ** 2)) - 1))
        for n in range(0, 40, 3):
            a = states.radial_coeff(n, m.xi, m.alpha, 1)
            b = states.radial_coeff(n, m.xi, m.alpha, -1)
            worst_branch = max(worst_branch, abs(a - b) / max(1.0, abs(a)))
    return [
        Check("4", "N^2 sum |c_n|^2 - 1", worst_norm < 1e-10, worst_norm, 1e-10),
        Check("4", "branch-flip invariance of c_n", worst_branch < 1e-12, worst_branch, 1e-12),
    ]


# 5 ------------------------------------------------------------------------

def check_identity():
    def run():
        out = []
        for xi in (0.2, 0.5):
            errs = []
            for n in (100, 200, 400):
                q = states.QuadratureConfig(8.0, n, n)
                errs.append(states.identity_resolution_check(xi, 6, q).error)
            out.append((xi, errs))
        return out

    res, dt = _timed(run)
    checks = []
    for xi, errs in res:
        checks.append(Check("5", f"|M - I| at xi={xi}, 400x400 grid", errs[-1] < 1e-3, errs[-1], 1e-3))
        # halving (or better) per doubling; a quarter is what the midpoint rule gives
        ratio = max(errs[1] / errs[0], errs[2] / errs[1])
        checks.append(Check("5", f"error ratio under grid doubling, xi={xi}", ratio <= 0.5, ratio, 0.5))
    checks.append(Check("5", "runtime (s)", dt < 60.0, dt, 60.0, volatile=True))
    return checks


# 6 ------------------------------------------------------------------------

def _rel(a, b):
    return abs(a - b) / (1 + abs(a))


def check_moments():
    def run():
        w_n = w_q = w_l = 0.0
        for m in standard_sweep():
            w_n = max(w_n, _rel(stats.mean_n_closed(m.xi, m.alpha), stats.mean_n_series(m.xi, m.alpha)))
            w_n = max(w_n, _rel(stats.mean_n2_closed(m.xi, m.alpha), stats.mean_n2_series(m.xi, m.alpha)))
            e = stats.quad_expectations(m.xi, m.alpha)
            s = stats.quad_expectations_series(m.xi, m.alpha)
            for f in ("a", "a_dag", "a2", "a_dag2", "n"):
                w_q = max(w_q, _rel(getattr(e, f), getattr(s, f)))
        partner = _mode(0.3, 1.0, 1.3)
        for m in standard_sweep():
            p = states.ThreeModeParams(m, m, partner)
            e = stats.angular_expectations(p)
            s = stats.angular_expectations_series(p)
            for f in ("lp", "lm", "lp2", "lm2", "lplm", "lmlp", "lz"):
                w_l = max(w_l, _rel(getattr(e, f), getattr(s, f)))
        return w_n, w_q, w_l

    (w_n, w_q, w_l), dt = _timed(run)
    return [
        Check("6", "<n>, <n^2> closed vs series", w_n < 1e-8, w_n, 1e-8),
        Check("6", "quadrature expectations closed vs series", w_q < 1e-8, w_q, 1e-8),
        Check("6", "angular expectations closed vs two-mode series", w_l < 1e-8, w_l, 1e-8),
        Check("6", "runtime (s)", dt < 30.0, dt, 30.0, volatile=True),
    ]


# 7 ------------------------------------------------------------------------

def fig1_q(alpha0=3.0, xi_min=0.05, xi_max=0.95, steps=90, phi=0.0):
    xs = np.linspace(xi_min, xi_max, steps)
    q = [stats.mandel_q(*(lambda m: (m.xi, m.alpha))(_mode(x, phi, alpha0))) for x in xs]
    return xs, np.array(q)


def fig2_indicators(xi=0.3, amp_max=3.0, amp_steps=31, theta_steps=36):
    amps = np.linspace(0.0, amp_max, amp_steps)
    thetas = np.linspace(0.0, 2 * math.pi, theta_steps, endpoint=False)
    rows = []
    for a in amps:
        for t in thetas:
            m = _literal_mode(xi, a * cmath.exp(1j * t))
            rows.append((a, t, *stats.squeeze_indicators(m.xi, m.alpha)))
    return np.array(rows)


def fig3_indicators(xi=0.1, alpha0_minus=1.3, half_width=2.0, steps=41):
    """Rows (x+, y+, S_Lx, S_Ly); NaN where <L_z> falls below the threshold."""
    axis = np.linspace(-half_width, half_width, steps)
    minus = _literal_mode(xi, alpha0_minus)
    rows = []
    for y in axis:
        for x in axis:
            p = states.ThreeModeParams(minus, _literal_mode(xi, complex(x, y)), minus)
            try:
                sx, sy = stats.spin_squeeze_indicators(p)
            except stats.UndefinedIndicator:
                sx = sy = math.nan
            rows.append((x, y, sx, sy))
    return np.array(rows)


def check_sign_patterns():
    _, q = fig1_q()
    f2 = fig2_indicators()
    f3 = fig3_indicators()
    ok = np.isfinite(f3[:, 2])
    frac = float(np.mean((f3[:, 2] > 0) & (f3[:, 3] < 0) & ok))
    return [
        Check("7a", "Q takes both signs at alpha0=3 (min*max < 0)", q.min() < 0 < q.max(), float(q.min() * q.max()), 0),
        Check("7b", "I1 > 0 on the grid (min I1)", bool(np.all(f2[:, 2] > 0)), float(f2[:, 2].min()), 0),
        Check("7b", "I2 < 0 on the grid (max I2)", bool(np.all(f2[:, 3] < 0)), float(f2[:, 3].max()), 0),
        Check("7c", "S_Lx > 0 and S_Ly < 0 on the grid (fraction satisfied)", frac == 1.0, frac, 1.0, known=True),
    ]


# 8 ------------------------------------------------------------------------

def _wigner_params():
    return states.ThreeModeParams(
        _mode(0.5, 0.0, 0.5), _mode(0.4, 1.0, 0.3 - 0.2j), _mode(0.3, 2.5, -0.4j)
    )


def check_wigner():
    def run():
        p = _wigner_params()
        rng = np.random.default_rng(20240501)
        zs = [m.alpha0 + 0.5 * (rng.standard_normal(50) + 1j * rng.standard_normal(50)) for m in p.modes()]
        diff = float(np.max(np.abs(wigner.wigner_series(p, zs) - wigner.wigner_closed(p, zs))))
        const, spread = wigner.series_constant(p, zs)
        R = 0.7
        fig = states.ThreeModeParams.uniform(R, 0.0, 0.5)
        g = wigner.wigner_grid(fig, resolution=128, mode="series")
        g0 = wigner.wigner_grid(states.ThreeModeParams.uniform(0.0, 0.0, 0.5), resolution=128)
        _, _, vx, vp = g.moments()
        _, _, vx0, vp0 = g0.moments()
        dev = max(abs(vp / vp0 / math.exp(2 * R) - 1), abs(vx0 / vx / math.exp(2 * R) - 1))
        return diff, const, spread, g.peak_count(), dev

    (diff, const, spread, peaks, dev), dt = _timed(run)
    return [
        Check("8", "series vs closed at 50 random points", diff < 1e-6, diff, 1e-6),
        Check("8", f"series constant {const:.12g} is zeta-independent", spread < 1e-8, spread, 1e-8),
        Check("8", "R=0.7 Wigner slice has one peak", peaks == 1, peaks, 1),
        Check("8", "quadrature variance ratio vs e^(2R)", dev < 0.05, dev, 0.05),
        Check("8", "runtime (s)", dt < 120.0, dt, 120.0, volatile=True),
    ]


SUITES = {
    "1": check_x1_laguerre,
    "2": check_eigensystem,
    "3": check_ladder,
    "4": check_normalization,
    "5": check_identity,
    "6": check_moments,
    "7": check_sign_patterns,
    "8": check_wigner,
}


def run_all(selected=None):
    out = []
    for key, fn in SUITES.items():
        if selected is None or key in selected:
            out.extend(fn())
    return out
