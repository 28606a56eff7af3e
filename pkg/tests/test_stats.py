import cmath
import math

import numpy as np
import pytest

from conftest import fock_state, ladder_matrix
from isoq.states import ThreeModeParams, make_mode
from isoq.stats import (
    UndefinedIndicator,
    angular_expectations,
    angular_expectations_series,
    angular_variances,
    angular_variances_plus_form,
    mandel_q,
    mean_n2_closed,
    mean_n2_series,
    mean_n_closed,
    mean_n_series,
    mode_moments,
    quad_expectations,
    quad_expectations_series,
    quadrature_variances,
    spin_squeeze_indicators,
    squeeze_indicators,
)

SWEEP = [
    make_mode(math.atanh(x), ph, a * cmath.exp(0.4j))
    for x in (0.1, 0.3, 0.5, 0.7)
    for ph in (0.0, math.pi / 3)
    for a in (0.0, 1.0, 3.0)
]


def lit(xi, a0):
    """Mode with the literal complex squeeze parameter xi."""
    return make_mode(math.atanh(abs(xi)), cmath.phase(-xi), a0)


def test_squeezed_vacuum_moments():
    assert mean_n_closed(0.5, 0) == pytest.approx(1 / 3, rel=1e-14)
    assert mean_n_closed(0.5, 0) == pytest.approx(math.sinh(math.atanh(0.5)) ** 2, rel=1e-14)
    assert mean_n2_closed(0.5, 0) == pytest.approx(1.0, rel=1e-14)
    assert mandel_q(0.5, 0) == pytest.approx(5 / 3, rel=1e-13)
    assert mean_n_series(0.5, 0) == pytest.approx(1 / 3, rel=1e-12)
    assert mean_n2_series(0.5, 0) == pytest.approx(1.0, rel=1e-12)


def test_coherent_limit():
    a = 1.3 - 0.4j
    assert mean_n_closed(0, a) == pytest.approx(abs(a) ** 2)
    assert mean_n2_closed(0, a) == pytest.approx(abs(a) ** 4 + abs(a) ** 2)
    assert abs(mandel_q(0, a)) < 1e-12
    m = make_mode(math.atanh(1e-10), 0.3, a)
    assert abs(mandel_q(m.xi, m.alpha)) < 1e-6
    e = quad_expectations(0, a)
    assert e.a == pytest.approx(a) and e.a2 == pytest.approx(a * a) and e.n == pytest.approx(abs(a) ** 2)
    assert squeeze_indicators(0, a) == pytest.approx((0, 0), abs=1e-12)


@pytest.mark.parametrize("m", SWEEP)
def test_number_moments_match_series(m):
    for closed, series in ((mean_n_closed, mean_n_series), (mean_n2_closed, mean_n2_series)):
        c = closed(m.xi, m.alpha)
        assert abs(c - series(m.xi, m.alpha)) < 1e-8 * (1 + abs(c))
    mm = mode_moments(m.xi, m.alpha) if mean_n_closed(m.xi, m.alpha) > 0 else None
    if mm is not None:
        assert mm.variance >= -1e-12
        assert mm.q >= -1 - 1e-12


@pytest.mark.parametrize("m", SWEEP)
def test_quadrature_expectations_match_series(m):
    e = quad_expectations(m.xi, m.alpha)
    s = quad_expectations_series(m.xi, m.alpha)
    for f in ("a", "a_dag", "a2", "a_dag2", "n"):
        c = getattr(e, f)
        assert abs(c - getattr(s, f)) < 1e-8 * (1 + abs(c))
    assert e.a_dag == e.a.conjugate() and e.a_dag2 == e.a2.conjugate()
    assert e.n == pytest.approx(mean_n_closed(m.xi, m.alpha))
    # the first moment is the displacement itself
    assert abs(e.a - m.alpha0) < 1e-12 * (1 + abs(m.alpha0))


@pytest.mark.parametrize("R,phi,a0", [(0.4, 0.0, 1.0), (0.7, 1.2, 0.5 - 1j), (0.2, 2.9, 2j)])
def test_quadrature_expectations_match_operator_exponentials(R, phi, a0):
    psi = fock_state(R, phi, a0, dim=200)
    a = ladder_matrix(200)
    m = make_mode(R, phi, a0)
    e = quad_expectations(m.xi, m.alpha)
    assert np.vdot(psi, a @ psi) == pytest.approx(e.a, abs=1e-10)
    assert np.vdot(psi, a @ a @ psi) == pytest.approx(e.a2, abs=1e-10)
    assert np.vdot(psi, a.conj().T @ a @ psi).real == pytest.approx(e.n, abs=1e-10)


def test_mandel_sign_pattern_at_alpha3():
    qs = []
    for x in np.linspace(0.05, 0.95, 90):
        m = make_mode(math.atanh(x), 0.0, 3.0)
        qs.append(mandel_q(m.xi, m.alpha))
    assert min(qs) < 0 < max(qs)


def test_mandel_undefined_for_vacuum():
    with pytest.raises(UndefinedIndicator):
        mandel_q(0.0, 0.0)


def test_domain_errors():
    for fn in (mean_n_closed, mean_n2_closed, quad_expectations):
        with pytest.raises(ValueError):
            fn(1.0, 0.5)


def test_quadrature_squeezing_sign_pattern():
    for amp in np.linspace(0, 3, 7):
        for th in np.linspace(0, 2 * math.pi, 9):
            m = lit(0.3, amp * cmath.exp(1j * th))
            i1, i2 = squeeze_indicators(m.xi, m.alpha)
            assert i1 > 0 and i2 < 0


@pytest.mark.parametrize("m", SWEEP)
def test_heisenberg_bound(m):
    vw, vp = quadrature_variances(m.xi, m.alpha)
    assert vw * vp >= 0.25 - 1e-12
    # pure Gaussian states saturate it only when the squeeze is along an axis
    i1, i2 = squeeze_indicators(m.xi, m.alpha)
    assert i1 == pytest.approx(2 * vw - 1, abs=1e-12)
    assert i2 == pytest.approx(2 * vp - 1, abs=1e-12)


def test_angular_symmetric_modes_zero_lz():
    m = make_mode(0.3, 0.7, 1 - 1j)
    e = angular_expectations(ThreeModeParams(m, m, m))
    assert abs(e.lz) < 1e-14
    with pytest.raises(UndefinedIndicator):
        spin_squeeze_indicators(ThreeModeParams(m, m, m))


def test_angular_coherent_limit():
    ap, am = 0.7 + 0.2j, -1.1 + 0.4j
    p = ThreeModeParams(make_mode(), make_mode(0, 0, ap), make_mode(0, 0, am))
    e = angular_expectations(p)
    assert e.lp == pytest.approx(ap.conjugate() * am)
    assert e.lz == pytest.approx(0.5 * (abs(ap) ** 2 - abs(am) ** 2))


@pytest.mark.parametrize("xp", np.linspace(-2, 2, 5))
@pytest.mark.parametrize("yp", np.linspace(-2, 2, 5))
def test_angular_matches_two_mode_series(xp, yp):
    minus = lit(0.1, 1.3)
    p = ThreeModeParams(minus, lit(0.1, complex(xp, yp)), minus)
    e = angular_expectations(p)
    s = angular_expectations_series(p)
    for f in ("lp", "lm", "lp2", "lm2", "lplm", "lmlp", "lz"):
        c = getattr(e, f)
        assert abs(c - getattr(s, f)) < 1e-8 * (1 + abs(c))
    assert e.lm == e.lp.conjugate() and e.lm2 == e.lp2.conjugate()
    vx, vy = angular_variances(e)
    svx, svy = angular_variances(s)
    assert vx >= 0 and vy >= 0
    assert abs(vx - svx) < 1e-7 * (1 + vx) and abs(vy - svy) < 1e-7 * (1 + vy)


def test_angular_products_placement_of_plus_one():
    # <L+ L-> = <n+>(<n-> + 1) for the product state
    p = ThreeModeParams(make_mode(), make_mode(0.3, 0.1, 1.0), make_mode(0.5, 2.0, 0.2j))
    e = angular_expectations(p)
    np_ = mean_n_closed(p.plus.xi, p.plus.alpha)
    nm = mean_n_closed(p.minus.xi, p.minus.alpha)
    assert e.lplm == pytest.approx(np_ * (nm + 1))
    assert e.lmlp == pytest.approx((np_ + 1) * nm)
    s = angular_expectations_series(p)
    assert s.lplm == pytest.approx(e.lplm, rel=1e-10)


def test_variances_against_fock_operators():
    """Var(Lx), Var(Ly) from explicit two-mode operator matrices."""
    dim = 40
    a = ladder_matrix(dim)
    eye = np.eye(dim)
    ap, am = np.kron(a, eye), np.kron(eye, a)
    lp = ap.conj().T @ am
    lx = 0.5 * (lp + lp.conj().T)
    ly = 0.5j * (lp - lp.conj().T)
    plus, minus = make_mode(0.3, 0.4, 0.8), make_mode(0.2, -1.0, -0.5j)
    psi = np.kron(fock_state(0.3, 0.4, 0.8, dim), fock_state(0.2, -1.0, -0.5j, dim))
    e = angular_expectations(ThreeModeParams(make_mode(), plus, minus))
    vx, vy = angular_variances(e)
    for op, v in ((lx, vx), (ly, vy)):
        mean = np.vdot(psi, op @ psi)
        ref = (np.vdot(psi, op @ op @ psi) - mean**2).real
        assert v == pytest.approx(ref, abs=1e-8)


def test_plus_form_variance_differs_by_mean_square():
    p = ThreeModeParams(make_mode(), make_mode(0.3, 0.4, 0.8 + 0.3j), make_mode(0.2, -1.0, -0.5j))
    e = angular_expectations(p)
    vx, vy = angular_variances(e)
    px, py = angular_variances_plus_form(e)
    lx = (0.5 * (e.lp + e.lm)).real
    assert px - vx == pytest.approx(2 * lx**2, rel=1e-12)
    assert py == pytest.approx(vy, rel=1e-12)


def test_spin_squeeze_definition():
    p = ThreeModeParams(make_mode(), lit(0.1, 1.0 + 0.5j), lit(0.1, 1.3))
    sx, sy = spin_squeeze_indicators(p)
    e = angular_expectations(p)
    vx, vy = angular_variances(e)
    lz = abs(e.lz)
    assert sx == pytest.approx((2 * vx - lz) / lz) and sy == pytest.approx((2 * vy - lz) / lz)
