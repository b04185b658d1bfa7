from fractions import Fraction as F

import mpmath
import pytest
from hypothesis import given, settings, strategies as st

from gpfkit.errors import DivergenceError, PoleError
from gpfkit.exactnum import Poly, RatFunc
from gpfkit.hyperseries import (
    appell_f3,
    appell_f3_terminating,
    dihedral_rhs,
    gamma_fn,
    gauss_2f1,
    mp_context,
    terminating_F,
)

PREC = 256
ctx = mp_context(PREC)


def rel(a, b):
    a, b = mpmath.mpf(a), mpmath.mpf(b)
    return abs(a - b) / abs(b) if b else abs(a)


# -- 2F1 ------------------------------------------------------------------------

def test_value_at_zero_is_one():
    assert gauss_2f1(F(1, 3), F(2, 7), F(5, 2), F(0), PREC).value == 1


def test_log_identity():
    res = gauss_2f1(F(1), F(1), F(2), F(1, 2), PREC)
    expected = 2 * ctx.log(2)
    assert abs(res.value - expected) <= res.error_bound + ctx.ldexp(1, -PREC + 4)


def test_first_reference_formula_at_two():
    res = gauss_2f1(F(-1, 4), F(1, 4), F(2), F(-1, 3), 426)
    c = mp_context(426)
    rhs = c.sqrt(c.mpf(8) / 9) * gamma_fn(F(4, 3), 426) * gamma_fn(F(2), 426) / (
        gamma_fn(F(3, 2), 426) * gamma_fn(F(11, 6), 426))
    assert rel(res.value, rhs) < mpmath.mpf("1e-30")


def test_pole_and_divergence_errors():
    with pytest.raises(PoleError):
        gauss_2f1(F(1, 2), F(1, 3), F(-2), F(1, 2), PREC)
    with pytest.raises(DivergenceError):
        gauss_2f1(F(1, 2), F(1, 3), F(3, 2), F(1), PREC)


def test_terminating_series_is_exact_polynomial():
    # 2F1(-2, b; c; x) = 1 - 2 b x / c + b (b+1) x^2 / (c (c+1))
    b, c, x = F(3, 5), F(7, 4), F(1, 3)
    res = gauss_2f1(F(-2), b, c, x, PREC)
    exact = 1 - 2 * b * x / c + b * (b + 1) * x * x / (c * (c + 1))
    assert abs(res.value - ctx.mpf(exact.numerator) / exact.denominator) < ctx.ldexp(1, -PREC + 2)


params = st.fractions(min_value=-3, max_value=3, max_denominator=9)
xs = st.fractions(min_value=F(-9, 10), max_value=F(9, 10), max_denominator=20)


@settings(max_examples=50)
@given(params, params, st.fractions(min_value=F(1, 4), max_value=5, max_denominator=9), xs)
def test_against_independent_oracle(a, b, c, x):
    res = gauss_2f1(a, b, c, x, PREC)
    with mpmath.workprec(PREC + 40):
        want = mpmath.hyp2f1(mpmath.mpf(a.numerator) / a.denominator, mpmath.mpf(b.numerator) / b.denominator,
                             mpmath.mpf(c.numerator) / c.denominator, mpmath.mpf(x.numerator) / x.denominator)
        assert abs(res.value - want) <= res.error_bound + abs(want) * mpmath.ldexp(1, -PREC + 8) + mpmath.ldexp(1, -PREC + 8)


@settings(max_examples=50)
@given(params, params, st.fractions(min_value=F(1, 4), max_value=5, max_denominator=9), xs)
def test_euler_and_pfaff_transformations(a, b, c, x):
    base = gauss_2f1(a, b, c, x, PREC)
    euler = gauss_2f1(c - a, c - b, c, x, PREC)
    scale = ctx.power(1 - ctx.mpf(x.numerator) / x.denominator, ctx.mpf((c - a - b).numerator) / (c - a - b).denominator)
    tol = base.error_bound + scale * euler.error_bound + ctx.ldexp(abs(base.value) + 1, -PREC + 12)
    assert abs(base.value - scale * euler.value) <= tol
    if x < F(1, 2):  # keep x/(x-1) inside the unit disc with room to spare
        y = x / (x - 1)
        pfaff = gauss_2f1(a, c - b, c, y, PREC)
        s2 = ctx.power(1 - ctx.mpf(x.numerator) / x.denominator, -ctx.mpf(a.numerator) / a.denominator)
        assert abs(base.value - s2 * pfaff.value) <= base.error_bound + s2 * pfaff.error_bound + ctx.ldexp(
            abs(base.value) + 1, -PREC + 12)


@pytest.mark.parametrize("prec", [128, 256])
def test_precision_ladder(prec):
    lo = gauss_2f1(F(2, 3), F(-5, 7), F(9, 4), F(8, 9), prec).value
    hi = gauss_2f1(F(2, 3), F(-5, 7), F(9, 4), F(8, 9), 2 * prec).value
    assert rel(lo, hi) < mpmath.ldexp(1, -prec + 8)


# -- Gamma ---------------------------------------------------------------------

def test_gamma_small_values():
    assert gamma_fn(F(1), PREC) == 1
    assert abs(gamma_fn(F(5), PREC) - 24) < ctx.ldexp(1, -PREC + 8)
    assert rel(gamma_fn(F(1, 2), PREC), ctx.sqrt(ctx.pi)) < ctx.ldexp(1, -PREC + 4)


def test_gamma_poles():
    for z in (0, -1, -7):
        with pytest.raises(PoleError):
            gamma_fn(F(z), PREC)


def test_gamma_ratio_ladder():
    def ratio(p):
        return gamma_fn(F(4, 3), p) / (gamma_fn(F(3, 2), p) * gamma_fn(F(11, 6), p))

    assert rel(ratio(PREC), ratio(2 * PREC)) < mpmath.ldexp(1, -PREC + 8)


@settings(max_examples=50)
@given(st.fractions(min_value=F(-15, 2), max_value=60, max_denominator=97))
def test_gamma_recurrence_and_oracle(z):
    if z.denominator == 1 and z <= 0:
        return
    if (z + 1).denominator == 1 and z + 1 <= 0:
        return
    g, g1 = gamma_fn(z, PREC), gamma_fn(z + 1, PREC)
    zz = ctx.mpf(z.numerator) / z.denominator
    assert rel(g1, zz * g) < ctx.ldexp(1, -PREC + 4)
    with mpmath.workprec(PREC + 20):
        assert rel(g, mpmath.gamma(mpmath.mpf(z.numerator) / z.denominator)) < mpmath.ldexp(1, -PREC + 4)


# -- terminating sums and F3 ---------------------------------------------------------

def test_terminating_F_examples():
    x = Poly.x("x")
    assert terminating_F(0, F(3), F(5), F(1, 7)) == 1
    beta, gamma = F(2, 3), F(-5, 4)
    assert terminating_F(1, beta, gamma, F(1, 9)) == gamma - beta * F(1, 9)
    assert terminating_F(2, 0, 0, x) == Poly(())


@pytest.mark.parametrize("k", range(0, 7))
def test_terminating_F_derivative_and_shift_relations(k):
    x = Poly.x("x")
    beta, gamma = F(2, 7), F(-9, 5)
    Fk = terminating_F(k, beta, gamma, x)
    if k >= 1:
        # d/dx F_k(beta; gamma; x) = -k beta F_{k-1}(beta + 1; gamma + 1; x)
        lower = terminating_F(k - 1, beta + 1, gamma + 1, x)
        assert Fk.derivative() == lower * (-k * F(2, 7))
    # F_{k+1}(beta; gamma) = (gamma + k) F_k(beta; gamma) - beta x F_k(beta+1; gamma+1)
    # follows from Pascal's rule on C(k+1, j) together with (gamma+j)_{k+1-j} splitting.
    nxt = terminating_F(k + 1, beta, gamma, x)
    rhs = Fk * (gamma + k) - terminating_F(k, beta + 1, gamma + 1, x) * x * F(2, 7)
    assert nxt == rhs


def test_f3_trivial():
    assert appell_f3(-1, -2, 3, 4, F(5, 2), 0, 0) == 1
    assert appell_f3_terminating(0, 0, F(3), F(1, 2)) == 1


@pytest.mark.parametrize("ij", [(0, 0), (1, 0), (0, 1), (2, 1)])
def test_dihedral_identity(ij):
    from gpfkit.analysis import dihedral_error

    i, j = ij
    assert dihedral_error(i, j, F(3), F(1, 2), 256) < mpmath.mpf("1e-25")
    # second route: left side from mpmath, right side from the exact S_ij
    with mpmath.workprec(256):
        lhs = mpmath.hyp2f1(mpmath.mpf(3) / 2 + i, mpmath.mpf(1) + j, 3, mpmath.mpf(1) / 2)
        assert abs(lhs - dihedral_rhs(i, j, F(3), F(1, 2), 256)) / abs(lhs) < mpmath.mpf("1e-25")


def test_s10_is_rational_function_in_w():
    w = Poly.x("w")
    S = appell_f3_terminating(1, 0, w, F(1, 2))
    assert isinstance(S, RatFunc)
    assert S.num.radicand() in (None, 2)
