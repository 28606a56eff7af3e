from fractions import Fraction

import numpy as np
import pytest
from numpy.polynomial import hermite as nph
from scipy.special import eval_genlaguerre

from isoq.special_fn import (
    Poly,
    RationalFunction,
    apply_Ak,
    apply_Bk,
    hermite_eval,
    hermite_poly,
    hermite_scaled,
    laguerre_assoc_eval,
    laguerre_poly,
    x1_laguerre,
    x1_ode_residual,
)

F = Fraction


def test_hermite_base_cases():
    assert hermite_eval(0, 3 - 2j) == 1
    assert hermite_eval(1, 2) == 4
    # 4 z^2 - 2 with z^2 = 2 + 1.5i
    assert hermite_eval(2, 1.5 + 0.5j) == pytest.approx(6 + 6j)


def test_hermite_matches_numpy_series(rng):
    z = rng.normal(size=100) + 1j * rng.normal(size=100)
    for n in range(31):
        coef = np.zeros(n + 1)
        coef[n] = 1
        ref = nph.hermval(z, coef)
        got = np.array([hermite_eval(n, zi) for zi in z])
        assert np.allclose(got, ref, rtol=1e-10, atol=1e-10 * np.max(np.abs(ref)))


def test_hermite_exact_poly_matches_recurrence(rng):
    for n in (5, 12, 30):
        p = hermite_poly(n)
        assert all(isinstance(c, int) for c in p.coeffs)
        for z in rng.normal(size=5):
            assert hermite_eval(n, z) == pytest.approx(float(p(F(z))), rel=1e-10)


def test_hermite_scaled_large_order_stays_finite():
    import math

    m, s = hermite_scaled(600, 7.0 + 3j)
    assert np.isfinite(m) and s > 100
    # exact integer value of H_600(7) as the oracle for the log magnitude
    m2, s2 = hermite_scaled(600, 7.0)
    ref = hermite_poly(600)(7)
    assert math.log(abs(m2)) + s2 == pytest.approx(math.log(abs(ref)), rel=1e-12)
    assert np.sign(m2.real) == np.sign(ref)


def test_laguerre_examples():
    assert laguerre_assoc_eval(0, 0.3, 5.0) == 1
    assert laguerre_assoc_eval(1, 0.5, 2.0) == pytest.approx(-0.5)
    x = np.linspace(-2, 5, 9)
    assert np.allclose(laguerre_assoc_eval(2, -2, x), x**2 / 2, atol=1e-14)


def test_laguerre_negative_superscript_identity():
    from math import factorial

    x = np.linspace(0, 4, 13)
    for n in range(11):
        assert np.max(np.abs(laguerre_assoc_eval(n, -n, x) - (-x) ** n / factorial(n))) < 1e-12 * max(1, 4**n / factorial(n))


def test_laguerre_matches_scipy(rng):
    x = rng.uniform(0, 20, 50)
    for n in range(15):
        for k in (0, 0.5, 2.5, 7):
            assert np.allclose(laguerre_assoc_eval(n, k, x), eval_genlaguerre(n, k, x), rtol=1e-10, atol=1e-10)


def test_laguerre_poly_conventions():
    assert laguerre_poly(-1, F(1, 2)).is_zero
    assert laguerre_poly(0, F(1, 2)) == Poly((F(1),))


@pytest.mark.parametrize("k", [F(1, 2), F(3, 2), F(5, 2), F(1)])
def test_x1_low_degrees(k):
    assert x1_laguerre(1, k) == Poly((-(k + 1), F(-1)))
    assert x1_laguerre(2, k) == Poly((-k * (k + 2), F(0), F(1)))
    assert x1_laguerre(3, k) == Poly((-k / 2 * (3 + 4 * k + k * k), k * (k + 3) / 2, (k + 3) / 2, F(-1, 2)))


def test_x1_domain_errors():
    with pytest.raises(ValueError):
        x1_laguerre(0, 1)
    with pytest.raises(ValueError):
        x1_laguerre(2, 0)
    with pytest.raises(ValueError):
        x1_laguerre(2, -1.5)


@pytest.mark.parametrize("k", [F(1, 2), F(3, 2), F(5, 2)])
def test_ode_residual_exact_zero(k):
    for nu in range(1, 13):
        assert x1_ode_residual(nu, k).is_zero


def test_ode_residual_float_mode():
    r = x1_ode_residual(5, 1.5, exact=False)
    assert r.max_abs_coeff() < 1e-10
    assert x1_ode_residual(1, 1.0).is_zero
    assert x1_ode_residual(2, 0.5).is_zero


def test_ode_residual_detects_wrong_degree():
    # the degree-4 member does not solve the degree-5 equation
    y = x1_laguerre(4, F(3, 2))
    x = Poly((F(0), F(1)))
    k = F(3, 2)
    res = x * (x + k) * y.deriv().deriv() - (x - k) * (x + k + 1) * y.deriv() + ((x - k) + (x + k) * 4) * y
    assert not res.is_zero


@pytest.mark.parametrize("k", [F(1, 2), F(3, 2), F(7, 2)])
def test_Ak_lowers_within_family(k):
    assert apply_Ak(x1_laguerre(1, k), k).is_zero
    for n in range(1, 6):
        assert apply_Ak(x1_laguerre(n + 1, k), k) == x1_laguerre(n, k + 1)


@pytest.mark.parametrize("k", [F(1, 2), F(3, 2), F(7, 2)])
def test_Bk_raises_within_family(k):
    for n in range(1, 7):
        assert apply_Bk(x1_laguerre(n, k + 1), k) == x1_laguerre(n + 1, k) * n


@pytest.mark.parametrize("k", [F(1, 2), F(5, 2)])
def test_factorization_closure_integer_eigenvalues(k):
    for nu in range(1, 9):
        y = x1_laguerre(nu, k)
        ba = apply_Bk(apply_Ak(y, k), k)
        # B_k A_k has eigenvalue nu - 1 on the degree-nu member
        assert ba == y * (nu - 1)
    for n in range(1, 7):
        y = x1_laguerre(n, k + 1)
        assert apply_Ak(apply_Bk(y, k), k) == y * n


def test_factorization_closure_float_mode():
    y = x1_laguerre(6, 1.5, exact=False)
    ba = apply_Bk(apply_Ak(y, 1.5), 1.5)
    lam = ba.coeffs[-1] / y.coeffs[-1]
    assert abs(lam - round(lam)) < 1e-9 and round(lam) == 5
    assert (ba - y * lam).max_abs_coeff() < 1e-9 * y.max_abs_coeff()


def test_operators_on_zero_and_constants():
    assert apply_Ak(Poly(()), 1).is_zero
    assert apply_Bk(Poly(()), 1).is_zero
    out = apply_Bk(Poly((F(1),)), 1)
    assert isinstance(out, RationalFunction)
    for x in (F(1, 3), F(2), F(7, 5)):
        assert out(x) == -(x * (x + 1) / (x + 2)) + 1


def test_poly_arithmetic():
    p = Poly((F(1), F(2)))
    q = Poly((F(-1), F(0), F(3)))
    assert (p * q)(F(2)) == p(F(2)) * q(F(2))
    quo, rem = (p * q + 5).divmod(q)
    assert quo == p and rem == Poly((F(5),))
    assert Poly((1, 0, 0)).degree == 0
    assert np.allclose(p.to_float()(np.array([0.0, 1.0])), [1.0, 3.0])


def test_Bk_on_same_parameter_is_not_polynomial():
    k = F(3, 2)
    out = apply_Bk(x1_laguerre(3, k), k)
    assert isinstance(out, RationalFunction)
    with pytest.raises(TypeError):
        apply_Ak(out, k)
