import itertools
import random
from fractions import Fraction as F

import pytest

from gpfkit.contiguous import (
    conjugate_norm_product,
    contig_product,
    det_formula,
    leading_limit,
    path_product,
    phi_entries,
    principal_matrices,
    principal_product,
    spectral_polys,
    step_det,
    step_matrix,
)
from gpfkit.errors import DegenerateSubstitutionError, HypothesisError
from gpfkit.exactnum import Poly, RatFunc, pochhammer
from gpfkit.gpfsearch import Parameter, phi_poly

W = Poly.x("w")


def _rf(c):
    return RatFunc.of(c, "w")


def triples(rmax):
    for r in range(1, rmax + 1):
        for p in range(1, r + 1):
            for q in range(1, r + 1):
                yield (p, q, r)


# -- step matrices ---------------------------------------------------------------

def test_step_determinants_match_closed_form():
    pqr, ab, x = (1, 1, 2), (F(0), F(1, 4)), F(1, 3)
    alpha = W + ab[0]
    for i in (1, 2, 3):
        assert step_matrix(i, pqr, ab, x).det() == step_det(i, pqr, ab, x)
    # A_1: (gamma - alpha - 1) / ((alpha + 1)(z - 1))
    gamma = W * 2
    assert step_det(1, pqr, ab, x) == RatFunc(gamma - alpha - 1, (alpha + 1) * (x - 1))


def test_a3_upper_left_entry():
    pqr, ab, x = (1, 1, 2), (F(0), F(1, 4)), F(1, 3)
    alpha, beta, gamma = W + ab[0], W + ab[1], W * 2
    want = RatFunc(gamma * (gamma - alpha - beta), (gamma - alpha) * (gamma - beta))
    assert step_matrix(3, pqr, ab, x)[0, 0] == want


@pytest.mark.parametrize("i, j", [(1, 2), (1, 3), (2, 3)])
def test_step_commutation(i, j):
    pqr, ab, x = (1, 1, 2), (F(0), F(1, 4)), F(1, 3)
    ei = tuple(int(k == i - 1) for k in range(3))
    ej = tuple(int(k == j - 1) for k in range(3))
    left = step_matrix(i, pqr, ab, x, ej) * step_matrix(j, pqr, ab, x)
    right = step_matrix(j, pqr, ab, x, ei) * step_matrix(i, pqr, ab, x)
    assert left == right


def test_degenerate_x_rejected():
    with pytest.raises(DegenerateSubstitutionError):
        step_matrix(1, (1, 1, 2), (F(0), F(1, 4)), F(1))


# -- products -------------------------------------------------------------------

@pytest.mark.parametrize("pqr", list(triples(6)))
def test_det_identity_all_small_triples(pqr):
    ab, x = (F(1, 7), F(-2, 5)), F(3, 11)
    cp = contig_product(pqr, ab, x)
    assert cp.A.det() == det_formula(pqr, ab, x)


def test_det_example_114():
    ab, x = (F(0), F(1, 4)), F(8, 9)
    expected = RatFunc(pochhammer(Poly.linear(0, 4), 4) * pochhammer(Poly.linear(1, 4), 4),
                       (W + 1) * (W + F(5, 4)) * pochhammer(Poly.linear(0, 3), 3)
                       * pochhammer(Poly.linear(F(-1, 4), 3), 3)) * (F(8, 9) ** -4 * F(1, 81))
    assert contig_product((1, 1, 4), ab, x).A.det() == expected


@pytest.mark.parametrize("pqr", [(1, 1, 3), (2, 1, 4), (3, 3, 6), (2, 3, 5)])
def test_path_independence(pqr):
    rng = random.Random(hash(pqr) & 0xFFFF)
    ab, x = (F(2, 9), F(1, 6)), F(5, 7)
    base = contig_product(pqr, ab, x).A
    steps = [1] * pqr[0] + [2] * pqr[1] + [3] * pqr[2]
    for _ in range(5):
        rng.shuffle(steps)
        assert path_product(pqr, ab, x, steps) == base


def test_contig_hypothesis_enforced():
    with pytest.raises(HypothesisError):
        contig_product((5, 1, 4), (F(0), F(0)), F(1, 2))


def test_phi_entry_degree_bounds_226():
    cp = contig_product((2, 2, 6), (F(0), F(1, 3)), F(1, 5))
    e = phi_entries(cp)
    assert e["11"].degree <= 4 and e["12"].degree <= 5
    assert e["21"].degree <= 5 and e["22"].degree <= 6


# -- principal parts and spectral polynomials -----------------------------------------

def test_principal_matrices_commute():
    b1, b2, b3 = principal_matrices((1, 1, 4))
    assert b1 * b2 == b2 * b1 and b1 * b3 == b3 * b1 and b2 * b3 == b3 * b2


@pytest.mark.parametrize("pqr", [(1, 1, 2), (1, 1, 4), (2, 1, 5), (2, 2, 6), (3, 1, 6), (4, 2, 8)])
def test_principal_product_closed_form(pqr):
    prod = principal_product(pqr)  # raises on mismatch
    sp = spectral_polys(pqr)
    p, q, r = pqr
    z = Poly.x("z")
    c = RatFunc(Poly.const(F(r ** r, 2 ** r * p ** p * q ** q * (r - p) ** (r - p) * (r - q) ** (r - q)), "z"), z ** r)
    assert prod[0, 1] == c * (sp.Y * z * (z - 1) * F(2 * p * q, r))


def test_leading_limit_equals_principal_product():
    lam = Parameter(1, 1, 4, 0, F(1, 4), F(8, 9))
    lim = leading_limit(contig_product((1, 1, 4), lam.ab, lam.x).A)
    pp = principal_product((1, 1, 4))
    for i, j in itertools.product((0, 1), repeat=2):
        e = pp[i, j]
        assert lim[i, j] == e.num(lam.x) / e.den(lam.x)


@pytest.mark.parametrize("pqr", [(1, 1, 2), (1, 1, 4), (2, 1, 5), (3, 2, 7), (2, 2, 6), (4, 2, 8)])
def test_spectral_norm_and_boundary_values(pqr):
    p, q, r = pqr
    sp = spectral_polys(pqr)
    assert sp.X ** 2 - sp.Y ** 2 * sp.Delta == conjugate_norm_product(pqr)
    assert all(F(c).denominator == 1 for c in sp.X.coeffs + sp.Y.coeffs)
    assert sp.Y(0) == (-1) ** (r - p - q) * (2 * r) ** (r - 1)
    gap = r - p - q
    if gap > 0:
        assert sp.Y(1) == -(2 ** (r - 1)) * p ** p * q ** q * gap ** (gap - 1)
    bound = r - p - 1 if p == q else r - 1
    assert sp.Y.degree <= bound


def test_y_values_114():
    sp = spectral_polys((1, 1, 4))
    assert sp.Y(0) == 512 and sp.Y(1) == -16


def test_y_at_x_equals_phi_top_coefficient(table2):
    for e in table2:
        p, q, r = e.p, e.q, e.r
        sp = spectral_polys((p, q, r))
        lam = Parameter(p, q, r, F(1, 3), F(2, 7), e.x)  # generic (a, b): Phi is not zero
        phi = phi_poly(lam).phi
        assert sp.Y(e.x) == (-1) ** (r - p - q) * 2 ** (r - 1) * phi.coeff(r - 1)
