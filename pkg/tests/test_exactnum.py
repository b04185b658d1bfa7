from fractions import Fraction as F

import mpmath
import pytest
from hypothesis import given, strategies as st

from gpfkit.contiguous import spectral_polys
from gpfkit.exactnum import (
    FieldMismatchError,
    Poly,
    RatFunc,
    conj,
    factor_small,
    field_sign,
    field_sqrt,
    format_field,
    isolate_real_roots,
    poly_gcd,
    quad,
    resultant,
    roots_in_field,
    to_field,
)
from gpfkit.parsing import parse_exact

w = Poly.x("w")
z = Poly.x("z")

small_q = st.fractions(min_value=-20, max_value=20, max_denominator=12)


def quad_elems(D=5):
    return st.builds(lambda a, b: quad(a, b, D), small_q, small_q)


def polys(max_deg=4):
    return st.lists(st.integers(-6, 6), min_size=1, max_size=max_deg + 1).map(
        lambda cs: Poly(tuple(F(c) for c in cs), "w")
    )


# -- scalars ----------------------------------------------------------------

def test_rational_normalisation():
    assert F(6, -4) == F(-3, 2)
    assert to_field(F(0, 5)) == 0


def test_quadratic_collapses_to_rational():
    assert quad(F(1, 2), 0, 5) == F(1, 2)
    assert isinstance(quad(1, 1, 5) * conj(quad(1, 1, 5)), F)


def test_radicand_square_free_part():
    assert field_sqrt(F(12)) == 2 * quad(0, 1, 3)
    assert field_sqrt(F(9, 4)) == F(3, 2)


def test_mixed_radicands_rejected():
    with pytest.raises(FieldMismatchError):
        quad(0, 1, 2) + quad(0, 1, 3)


@pytest.mark.parametrize("value, sign", [
    (quad(-2, 1, 5), 1),        # sqrt5 - 2 > 0
    (quad(3, -1, 10), -1),      # 3 - sqrt10 < 0
    (quad(1, -1, 2), -1),       # 1 - sqrt2 < 0
])
def test_exact_sign(value, sign):
    assert field_sign(value) == sign


@given(quad_elems(), quad_elems(), quad_elems())
def test_quadratic_associativity_and_conjugation(x, y, zz):
    assert (x * y) * zz == x * (y * zz)
    assert conj(x * y) == conj(x) * conj(y)


@given(quad_elems())
def test_quadratic_inverse(x):
    if x != 0:
        assert x * (1 / x) == 1


def test_serialisation_round_trip():
    x = 4 * (quad(0, 1, 5) - 2)
    assert format_field(x) == "-8+4*sqrt(5)"
    assert parse_exact(format_field(x)) == x
    assert parse_exact("(3/4)*(3-sqrt(3))") == F(3, 4) * (3 - quad(0, 1, 3))
    assert format_field(F(-3, 7)) == "-3/7"


# -- polynomials -----------------------------------------------------------

def test_gcd_examples():
    assert poly_gcd(w ** 2 - 1, w - 1) == w - 1
    assert poly_gcd(w + 1, w + 2) == Poly.const(1)
    g = w - F(8, 9)
    assert poly_gcd(g * (w + 3), g) == g


@given(polys(), polys(), polys(3))
def test_gcd_of_common_multiple(a, b, g):
    if a.is_zero() or b.is_zero() or g.is_zero():
        return
    if poly_gcd(a, b) != Poly.const(1):
        return
    assert poly_gcd(a * g, b * g) == g.monic()


def test_resultant_detects_common_root():
    assert resultant(w ** 2 - 2, w - 1) != 0
    assert resultant((w - 3) * (w + 1), (w - 3) * w) == 0
    # Res(w - a, w - b) = a - b up to sign
    assert abs(resultant(w - 5, w - 2)) == 3


def test_quadratic_field_polynomials():
    s5 = quad(0, 1, 5)
    p = (w - s5) * (w + 1)
    assert p.radicand() == 5
    assert poly_gcd(p, w - s5) == w - s5


def test_ratfunc_reduced_and_monic_denominator():
    R = RatFunc((w + 1) * (w + 2), (w + 1) * 3 * w)
    assert R.den == w
    assert R.num == (w + 2) * F(1, 3)


# -- roots --------------------------------------------------------------------

def test_isolate_sqrt2():
    [(iv, mult)] = isolate_real_roots(z ** 2 - 2, F(0), F(2))
    assert mult == 1 and iv[0] ** 2 < 2 < iv[1] ** 2 and iv[1] - iv[0] < F(1, 2 ** 64)


def test_isolate_double_root():
    [(iv, mult)] = isolate_real_roots((z - F(1, 2)) ** 2, F(0), F(1))
    assert mult == 2 and iv[0] <= F(1, 2) <= iv[1]


def test_isolate_spectral_y_114():
    Y = spectral_polys((1, 1, 4)).Y
    found = isolate_real_roots(Y, F(0), F(1))
    assert len(found) == 1
    (lo, hi), _ = found[0]
    assert lo <= F(8, 9) <= hi


@given(st.lists(st.fractions(min_value=-3, max_value=3, max_denominator=6), min_size=1, max_size=5, unique=True))
def test_isolation_matches_numeric_roots(roots):
    p = Poly.from_roots(roots, "z") * (z ** 2 + 1)
    found = isolate_real_roots(p, F(-4), F(4))
    assert len(found) == len(roots)
    with mpmath.workprec(128):
        numeric = sorted(float(t.real) for t in mpmath.polyroots(
            [float(c) for c in reversed(p.coeffs)], maxsteps=200, extraprec=200) if abs(t.imag) < 1e-20)
    for ((lo, hi), _), r in zip(found, numeric):
        assert float(lo) - 1e-12 <= r <= float(hi) + 1e-12


def test_factor_small_examples():
    fs = factor_small(z ** 2 - z)
    assert sorted(fs.linear_roots()) == [0, 1]
    fs = factor_small(z ** 2 - 2)
    assert fs.factors == [z ** 2 - 2] and fs.cofactor.degree == 0
    Y = spectral_polys((1, 1, 4)).Y
    fs = factor_small(Y)
    assert sorted(fs.linear_roots()) == [F(8, 9), F(4, 3)]


@given(st.lists(st.fractions(min_value=-4, max_value=4, max_denominator=5), min_size=1, max_size=4),
       st.integers(-3, 3))
def test_factor_small_product_identity(roots, shift):
    p = Poly.from_roots(roots, "z") * (z ** 2 - (2 + shift * shift)) * 3
    fs = factor_small(p)
    assert fs.product() == p


def test_roots_in_field_quadratic():
    x = 4 * (quad(0, 1, 5) - 2)
    p = (z - x) * (z - conj(x))
    got = roots_in_field(p, 0, 1)
    assert got.complete and got.roots == [x]
