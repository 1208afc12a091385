import math

import numpy as np
import pytest
from fractions import Fraction
from math import comb

from hypothesis import given
from hypothesis import strategies as st

from chebilateral import (
    cheb_eval,
    cheb_monomial_table,
    cheb_zeros,
    fit_exp_chebyshev,
    monomial_from_chebyshev,
    taylor_coeffs,
)
from chebilateral.approximation import MAX_DEGREE, approximation_errors, exp_coefficients, linf_errors

# Chebyshev-series coefficients of exp on [-1, 1]: (2/pi) int_0^pi exp(cos t) cos(l t) dt
# (halved for l = 0), by 40-digit mpmath quadrature; they equal 2 I_l(1).
EXP_SERIES = [
    1.2660658777520083356,
    1.1303182079849700544,
    0.27149533953407656237,
    0.044336849848663804953,
    0.0054742404420937326503,
    0.00054292631191394375036,
    0.000044977322954295146655,
]


def test_cheb_eval_examples():
    assert cheb_eval(2, 0.5) == pytest.approx(-0.5, abs=1e-15)
    assert cheb_eval(0, 0.3) == 1.0
    assert cheb_eval(1, 0.3) == 0.3
    assert cheb_eval(5, 0.3) == pytest.approx(math.cos(5 * math.acos(0.3)), abs=1e-12)


@pytest.mark.parametrize("l", [0, 1, 7, 30])
def test_cheb_eval_at_one(l):
    assert cheb_eval(l, 1.0) == 1.0


def test_cheb_eval_matches_closed_form_on_grid():
    x = np.linspace(-1, 1, 1000)
    for l in range(31):
        assert np.max(np.abs(cheb_eval(l, x) - np.cos(l * np.arccos(x)))) <= 1e-9
        assert np.max(np.abs(cheb_eval(l, x))) <= 1 + 1e-12


def test_cheb_eval_rejects_negative_degree():
    with pytest.raises(ValueError):
        cheb_eval(-1, 0.0)


def test_table_rows():
    table = cheb_monomial_table(6)
    assert table.row(0).tolist() == [1]
    assert table.row(1).tolist() == [0, 1]
    assert table.row(2).tolist() == [-1, 0, 2]
    assert table.row(4).tolist() == [1, 0, -8, 0, 8]


def test_table_invariants():
    table = cheb_monomial_table(40)
    a = table.a
    for l in range(1, 40):
        expected = -a[l - 1].copy()
        expected[1:] += 2 * a[l, :-1]
        assert np.array_equal(a[l + 1], expected)
    l, n = np.indices(a.shape)
    assert np.all(a[(l - n) % 2 == 1] == 0)
    assert np.all(a[n > l] == 0)
    # integer entries, exactly representable
    assert np.all(a == np.round(a))


def _closed_form_row(l):
    # a[l][l - 2m] = (-1)^m 2^(l-2m-1) l / (l-m) C(l-m, m), in exact integers.
    row = [0] * (l + 1)
    if l == 0:
        row[0] = 1
        return row
    for m in range(l // 2 + 1):
        num = (-1) ** m * 2 ** (l - 2 * m) * l * comb(l - m, m)
        row[l - 2 * m] = num // (2 * (l - m))
    return row


def test_table_matches_closed_form():
    table = cheb_monomial_table(MAX_DEGREE)
    for l in range(MAX_DEGREE + 1):
        assert [int(v) for v in table.row(l)] == _closed_form_row(l)


def test_table_reproduces_polynomials():
    # Rows reach 1.5e11 at l = 30, so the monomial sum is evaluated exactly in
    # rationals; float evaluation would measure cancellation, not the table.
    table = cheb_monomial_table(30)
    x = np.linspace(-1, 1, 201)
    for l in range(31):
        coeffs = [Fraction(int(v)) for v in table.row(l)]
        exact = [float(sum(c * Fraction(xi) ** n for n, c in enumerate(coeffs))) for xi in x]
        assert np.max(np.abs(np.array(exact) - cheb_eval(l, x))) <= 1e-8


@pytest.mark.parametrize("n_max", [-1, 41])
def test_table_range(n_max):
    with pytest.raises(ValueError):
        cheb_monomial_table(n_max)


def test_zeros():
    assert cheb_zeros(1) == pytest.approx([0.0], abs=1e-16)
    assert cheb_zeros(2) == pytest.approx([math.sqrt(2) / 2, -math.sqrt(2) / 2], abs=1e-15)
    assert cheb_zeros(3) == pytest.approx([math.sqrt(3) / 2, 0.0, -math.sqrt(3) / 2], abs=1e-15)
    with pytest.raises(ValueError):
        cheb_zeros(0)


@pytest.mark.parametrize("l", range(1, 21))
def test_discrete_orthogonality(l):
    xi = cheb_zeros(l)
    assert np.all(np.abs(xi) < 1)
    for i in range(l):
        for j in range(l):
            s = float(np.sum(cheb_eval(i, xi) * cheb_eval(j, xi)))
            expected = 0.0 if i != j else (l if i == 0 else l / 2)
            assert s == pytest.approx(expected, abs=1e-8)


def test_fit_degree_zero():
    fit = fit_exp_chebyshev(0, 3.7)
    assert fit.d.tolist() == [1.0]
    assert cheb_zeros(7)[3] == 0.0
    np.testing.assert_array_equal(cheb_zeros(6), -cheb_zeros(6)[::-1])


def test_fit_matches_series_coefficients():
    fit = fit_exp_chebyshev(10, 1.0)
    for l, ref in enumerate(EXP_SERIES):
        assert fit.d[l] == pytest.approx(ref, abs=1e-6)


def test_series_oracle_is_bessel():
    from scipy.special import iv

    for l, ref in enumerate(EXP_SERIES):
        assert ref == pytest.approx((1 if l == 0 else 2) * iv(l, 1.0), rel=1e-14)


@pytest.mark.parametrize("n, mu", [(0, 1.0), (5, 0.3), (10, 1.0), (20, 18.0625), (30, 4.0)])
def test_fit_interpolates_at_nodes(n, mu):
    fit = fit_exp_chebyshev(n, mu)
    xi = cheb_zeros(n + 1)
    values = sum(fit.d[l] * cheb_eval(l, xi) for l in range(n + 1))
    assert np.max(np.abs(values - np.exp(mu * xi))) <= 1e-8 * math.exp(mu)
    # the fit object evaluates the same series in x = mu * t
    assert np.allclose(fit(mu * xi), values, rtol=1e-12, atol=1e-12 * math.exp(mu))


def test_fit_rejects_bad_mu():
    with pytest.raises(ValueError):
        fit_exp_chebyshev(4, 0.0)
    with pytest.raises(ValueError):
        fit_exp_chebyshev(4, float("inf"))


def test_chebyshev_beats_taylor_at_degree_10():
    x = np.linspace(-1, 1, 100001)
    cheb = np.max(np.abs(fit_exp_chebyshev(10, 1.0)(x) - np.exp(x)))
    taylor = np.max(np.abs(taylor_coeffs(10)(x) - np.exp(x)))
    assert cheb < taylor


@pytest.mark.parametrize("n", range(2, 17))
def test_near_minimax_dominance(n):
    taylor, cheb = linf_errors(n, 1.0)
    assert cheb < taylor


@pytest.mark.parametrize("n", range(17, 21))
def test_errors_reach_rounding_floor(n):
    # Past N = 16 both truncation errors are below one ulp of e.
    taylor, cheb = linf_errors(n, 1.0)
    ulp = math.ulp(math.e)
    assert taylor <= ulp
    assert cheb <= 8 * ulp


def test_monomial_small_cases():
    fit0 = fit_exp_chebyshev(0, 2.0)
    assert monomial_from_chebyshev(fit0).c.tolist() == [fit0.d[0]]
    fit1 = fit_exp_chebyshev(1, 2.0)
    c = monomial_from_chebyshev(fit1, cheb_monomial_table(1)).c
    assert c[0] == fit1.d[0]
    assert c[1] == fit1.d[1] / 2


def test_monomial_agrees_with_chebyshev_basis_at_point():
    fit = fit_exp_chebyshev(10, 1.0)
    poly = monomial_from_chebyshev(fit)
    direct = sum(fit.d[l] * math.cos(l * math.acos(0.7)) for l in range(11))
    assert poly(0.7) == pytest.approx(direct, abs=1e-9)
    assert poly.provenance == "chebyshev"


@pytest.mark.parametrize("n, mu", [(4, 1.0), (10, 1.0), (20, 18.0625), (30, 18.0625), (30, 5.0)])
def test_monomial_dense_grid_consistency(n, mu):
    fit = fit_exp_chebyshev(n, mu)
    poly = monomial_from_chebyshev(fit)
    x = np.linspace(-mu, mu, 20001)
    assert np.max(np.abs(poly(x) - fit(x))) <= 1e-6 * math.exp(mu)


def test_monomial_needs_large_enough_table():
    with pytest.raises(ValueError):
        monomial_from_chebyshev(fit_exp_chebyshev(5, 1.0), cheb_monomial_table(4))


def test_taylor_coefficients():
    assert taylor_coeffs(0).c.tolist() == [1.0]
    assert taylor_coeffs(3).c.tolist() == [1.0, 1.0, 0.5, 1 / 6]
    c = taylor_coeffs(40).c
    for n in range(41):
        assert c[n] == pytest.approx(1 / math.factorial(n), rel=1e-15)
    assert taylor_coeffs(5).provenance == "taylor"


def test_taylor_error_maximal_at_right_endpoint():
    partial = math.fsum(1 / math.factorial(n) for n in range(11))
    x, taylor, _ = approximation_errors(10, 1.0, 100001)
    assert x[np.argmax(np.abs(taylor))] == 1.0
    assert np.max(np.abs(taylor)) == pytest.approx(math.e - partial, abs=1e-12)
    assert taylor_coeffs(10).c.sum() == pytest.approx(partial, abs=1e-15)


def test_exp_coefficients_dispatch():
    assert exp_coefficients("taylor", 3).provenance == "taylor"
    assert exp_coefficients("chebyshev", 3, 2.0).provenance == "chebyshev"
    with pytest.raises(ValueError):
        exp_coefficients("chebyshev", 3)
    with pytest.raises(ValueError):
        exp_coefficients("remez", 3, 1.0)


@given(st.integers(0, 30), st.floats(-1, 1))
def test_cheb_eval_bounded(l, x):
    assert abs(cheb_eval(l, x)) <= 1 + 1e-12
