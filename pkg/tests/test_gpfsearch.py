import random
from fractions import Fraction as F

import mpmath
import pytest
from hypothesis import given, settings, strategies as st

from gpfkit.canonical import lambda_value
from gpfkit.contiguous import contig_product, phi_entries, spectral_polys
from gpfkit.corpus import TABLE2, TABLE3
from gpfkit.errors import RegionError, SolutionTypeError
from gpfkit.exactnum import Poly, RatFunc, quad, to_mpf
from gpfkit.gpfsearch import (
    Parameter,
    apply_symmetry,
    candidate_x,
    closed_form_R,
    division_target,
    duplicate,
    elementary_kind,
    mandatory_factors,
    p_poly,
    phi_poly,
    reduce_symmetry,
    search_triple,
    search_triples,
    solve_ab,
    terminating_system,
    undouble,
)

W = Poly.x("w")
S5 = quad(0, 1, 5)


def _apollo_triples(rmax):
    return [(p, q, r) for r in range(2, rmax + 1) for p in range(1, r) for q in range(1, p + 1) if p + q <= r]


# -- Phi and P ----------------------------------------------------------------------

def test_phi_vanishes_on_first_row():
    assert phi_poly(Parameter(1, 1, 4, 0, F(1, 4), F(8, 9))).is_zero()


def test_phi_nonzero_off_the_spectral_root():
    assert not phi_poly(Parameter(1, 1, 4, 0, F(1, 4), F(1, 2))).is_zero()


def test_phi_two_forms_agree_on_random_parameters():
    rng = random.Random(7)
    triples = _apollo_triples(6)
    for _ in range(20):
        p, q, r = rng.choice(triples)
        a = F(rng.randint(-9, 9), rng.randint(1, 7))
        b = F(rng.randint(-9, 9), rng.randint(1, 7))
        x = F(rng.randint(1, 19), 20)
        lam = Parameter(p, q, r, a, b, x)
        assert phi_poly(lam, "direct").phi == phi_poly(lam, "euler").phi


@settings(max_examples=50)
@given(st.sampled_from(_apollo_triples(7)),
       st.fractions(min_value=-4, max_value=4, max_denominator=8),
       st.fractions(min_value=-4, max_value=4, max_denominator=8),
       st.fractions(min_value=F(1, 50), max_value=F(49, 50), max_denominator=50))
def test_degree_bounds(pqr, a, b, x):
    p, q, r = pqr
    lam = Parameter(p, q, r, a, b, x)
    assert phi_poly(lam).phi.degree <= r - 1
    if p + q <= r - 1:
        assert p_poly(lam).P.degree <= r


@pytest.mark.parametrize("entry", TABLE2, ids=lambda e: e.label)
def test_table2_structure(entry):
    lam = entry.lam
    p, q, r = lam.int_pqr()
    assert phi_poly(lam).is_zero()
    P = p_poly(lam).P
    assert P.degree == r
    assert division_target(lam) % P == Poly((), "w")
    for f in mandatory_factors(lam):
        assert P % f == Poly((), "w")
    assert closed_form_R(lam) == entry.R()
    # degree identity of the diagonal entries when Phi vanishes
    ent = phi_entries(contig_product((p, q, r), lam.ab, lam.x))
    assert ent["11"] * ent["22"] == division_target(lam) * (lam.x ** (-r) * (lam.x - 1) ** (r - p - q))


def test_first_row_closed_form():
    R = closed_form_R(Parameter(1, 1, 4, 0, F(1, 4), F(8, 9)))
    assert R == RatFunc((W + F(2, 4)) * (W + F(3, 4)), (W + F(2, 3)) * (W + F(7, 12))) * F(4, 3)


@pytest.mark.parametrize("entry", TABLE2 + TABLE3, ids=lambda e: e.label)
def test_pipeline_closure_numeric(entry):
    lam, R = entry.lam, entry.R()
    ctx = mpmath.MPContext()
    ctx.prec = 426
    for w in (F(13, 10), F(27, 10), F(51, 10)):
        f0 = lambda_value(lam, w, 426).value
        f1 = lambda_value(lam, w + 1, 426).value
        Rw = R.num(w) / R.den(w)
        assert abs(f1 - to_mpf(Rw, ctx) * f0) < ctx.mpf("1e-60") * abs(f1)


# -- candidate x -------------------------------------------------------------------------

def test_candidate_x_examples():
    assert list(candidate_x((1, 1, 4))) == [F(8, 9)]
    assert 4 * (S5 - 2) in candidate_x((3, 1, 6))
    assert list(candidate_x((1, 1, 2))) == []


def test_no_spectral_root_when_gap_zero():
    Y = spectral_polys((1, 1, 2)).Y
    for t in range(0, 100):
        assert Y(F(t, 100)) != 0


def test_odd_gap_flagged():
    xs = candidate_x((2, 1, 4))
    assert any("not positive and even" in w for w in xs.warnings)


def test_search_triples_filter():
    got = list(search_triples(8))
    assert all((r - p - q) > 0 and (r - p - q) % 2 == 0 for p, q, r in got)
    assert (1, 1, 3) not in got and (1, 1, 2) not in got
    assert [t[2] for t in got] == sorted(t[2] for t in got)
    assert [t for t in got if t[2] == 4] == [(1, 1, 4)]


def test_negative_control_112():
    res = search_triple((1, 1, 2))
    assert res.candidates == [] and res.solutions == []


# -- terminating system -------------------------------------------------------------------

def test_terminating_system_shape_114():
    ts = terminating_system((1, 1, 4), F(8, 9))
    assert len(ts.starred) == 3 and len(ts.plain) == 1
    assert len(ts.equations) == 4
    last = [e for e in ts.starred if e.index == 4 - 1 - 1][0]
    assert last.second.is_const() and last.second.const_value() == 1


@pytest.mark.parametrize("pqr", [(2, 2, 6), (3, 1, 6)])
def test_equation_count_equals_r(pqr):
    x = candidate_x(pqr)[0]
    assert len(terminating_system(pqr, x).equations) == pqr[2]


# -- solve_ab -------------------------------------------------------------------------------

def _ab_set(sols):
    out = set()
    for s in sols:
        a, b = s.lam.a, s.lam.b
        out.add(frozenset((a, b)) if s.lam.p == s.lam.q else (a, b))
    return out


def test_solve_ab_114():
    sols = solve_ab((1, 1, 4), F(8, 9))
    assert _ab_set(sols) == {frozenset((F(0), F(1, 4))), frozenset((F(1, 2), F(1, 4))), frozenset((F(0), F(1, 2)))}
    assert all(s.certificates["phi_zero"] for s in sols)


def test_solve_ab_316():
    sols = solve_ab((3, 1, 6), 4 * (S5 - 2))
    assert _ab_set(sols) == {(F(0), F(1, 6)), (F(0), F(1, 2))}


def test_solve_ab_428():
    sols = solve_ab((4, 2, 8), 4 * (3 * quad(0, 1, 2) - 4))
    assert _ab_set(sols) == {(F(0), F(1, 4))}


def test_swap_closure_when_p_equals_q():
    for sol in solve_ab((1, 1, 4), F(8, 9)):
        assert phi_poly(sol.lam.swapped()).is_zero()


# -- symmetries -------------------------------------------------------------------------

def test_reduce_symmetry_examples():
    # only q lies in (0, r): the swap comes first
    lam = Parameter(5, 1, 4, F(1, 4), 0, F(8, 9))
    img, trace = reduce_symmetry(lam)
    assert trace[0] == "sym0" and img.in_pencil

    lam = Parameter(1, 7, 6, 0, F(1, 2), F(1, 3))  # q >= r
    img, trace = reduce_symmetry(lam)
    assert "sym1" in trace and img.in_pencil

    lam = Parameter(1, 1, 4, 0, F(1, 4), F(-1, 2))
    img, trace = reduce_symmetry(lam)
    assert trace == ["sym3"] and img.x == F(1, 3)

    already = Parameter(1, 1, 4, 0, F(1, 4), F(8, 9))
    assert reduce_symmetry(already) == (already, [])


def test_reduce_symmetry_outside_cross():
    with pytest.raises(RegionError):
        reduce_symmetry(Parameter(5, 6, 4, 0, 0, F(1, 2)))


@pytest.mark.parametrize("entry", TABLE2, ids=lambda e: e.label)
def test_symmetry_preserves_solutions(entry):
    perturbed = apply_symmetry("sym1", apply_symmetry("sym0", entry.lam))
    back, _ = reduce_symmetry(perturbed)
    assert phi_poly(back).is_zero()


# -- duplication ---------------------------------------------------------------------------

def test_duplication_and_undoubling():
    for half, full in ((TABLE3[0], TABLE2[3]), (TABLE3[1], TABLE2[4])):
        hat, R_hat = duplicate(half.lam, half.R())
        assert hat == full.lam and R_hat == full.R()
        lam, R = undouble(full.lam, full.R())
        assert lam == half.lam and R == half.R()


def test_duplicated_leading_constant():
    _, R_hat = duplicate(TABLE3[0].lam, TABLE3[0].R())
    assert R_hat.leading_ratio() == F(27, 25) ** 2


def test_duplicate_needs_half_integers():
    with pytest.raises(SolutionTypeError):
        duplicate(TABLE2[0].lam, TABLE2[0].R())


def test_elementary_kind_labels():
    assert elementary_kind(Parameter(1, 0, 4, F(1, 3), -3, F(1, 2))) == "elementary1"
    assert elementary_kind(Parameter(2, 2, 4, 1, F(1, 2), F(1, 2))) == "elementary2"
    assert elementary_kind(TABLE2[0].lam) is None
