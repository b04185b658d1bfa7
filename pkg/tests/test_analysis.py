import math
import random
from fractions import Fraction as F

import mpmath
import pytest
from hypothesis import given, settings, strategies as st

from conftest import oracle_f
from gpfkit.analysis import (
    KAPPA,
    asymptotic_constants,
    bailey_gpf,
    bailey_null_deficiency,
    bailey_parameter,
    classify,
    deficiency,
    dilation,
    dilation_value,
    elementary_check,
    integer_coincidences,
    parity_constant,
    pole_structure,
    residue_at,
    residue_coefficient,
    residue_limit,
    sine_sine_classify,
    sine_sine_sequence,
    solve_progression,
    stationary_point,
)
from gpfkit.canonical import verify_gpf_numeric
from gpfkit.corpus import TABLE2, TABLE3
from gpfkit.errors import CoprimalityError, RegionError
from gpfkit.exactnum import quad, to_mpf
from gpfkit.gpfsearch import Parameter
from gpfkit.hyperseries import mp_context

CORPUS = TABLE2 + TABLE3
TINY = mpmath.mpf(2) ** -200


def _random_hstrip(rng):
    r = rng.randint(2, 8)
    p = rng.randint(1, r - 1)
    q = rng.randint(-3, r - 1)
    return Parameter(p, q, r, F(rng.randint(-5, 5), 7), F(rng.randint(-5, 5), 11), F(rng.randint(1, 19), 20))


# -- asymptotics ------------------------------------------------------------------------

@pytest.mark.parametrize("seed", range(20))
def test_stationary_point_brackets_and_B_positive(seed):
    lam = _random_hstrip(random.Random(seed))
    p, q, r, x = (F(v) for v in (lam.p, lam.q, lam.r, lam.x))

    def phi1(t):
        return -(r - q) * x * t * t + ((p - q) * x + r) * t - p

    assert phi1(0) == -p < 0
    assert phi1(1) == (r - p) * (1 - x) and phi1(1) >= 0
    prof = asymptotic_constants(lam, 300)
    assert 0 < prof.t0 < 1
    ctx = mp_context(300)
    t = prof.t0
    value = -(to_mpf(r - q, ctx)) * to_mpf(x, ctx) * t * t + to_mpf((p - q) * x + r, ctx) * t - to_mpf(p, ctx)
    assert abs(value) < TINY
    assert prof.B > 0


def test_exact_stationary_point():
    prof = stationary_point(TABLE2[0].lam)
    assert prof.t0_exact == F(3, 4) - quad(0, F(1, 4), 3)


@pytest.mark.parametrize("entry", CORPUS, ids=lambda e: e.label)
def test_growth_base_equals_dilation(entry):
    prof = asymptotic_constants(entry.lam, 426)
    d = dilation(entry.lam)
    assert d is not None
    ctx = mp_context(426)
    assert abs(prof.B - to_mpf(d, ctx)) < TINY
    assert abs(dilation_value(entry.lam, 426) - to_mpf(d, ctx)) < TINY


def test_dilation_examples():
    assert dilation(TABLE2[0].lam) == F(4, 3)
    assert dilation(TABLE2[3].lam) == F(3 ** 6, 5 ** 4)
    assert dilation(TABLE2[8].lam) == F(4, 27) * (17 + 12 * quad(0, 1, 2))


@pytest.mark.parametrize("entry", [TABLE2[0], TABLE2[5]], ids=lambda e: e.label)
def test_leading_asymptotics_trend(entry):
    prof = asymptotic_constants(entry.lam, 300)
    gaps = []
    for w in (40, 80):
        f = oracle_f(entry.lam, w)
        with mpmath.workdps(90):
            gaps.append(abs(f / (mpmath.mpf(prof.A) * mpmath.mpf(prof.B) ** w) - 1))
    assert gaps[1] < gaps[0] < mpmath.mpf("0.05")
    # the correction is O(1/w)
    assert gaps[1] / gaps[0] < mpmath.mpf("0.7")


# -- residues -------------------------------------------------------------------------------

@pytest.mark.parametrize("entry", CORPUS, ids=lambda e: e.label)
def test_first_residue_coefficient(entry):
    lam = entry.lam
    assert residue_coefficient(lam, 0) == lam.a * lam.b * lam.x / lam.r


@pytest.mark.parametrize("j", [2, 3, 6])
def test_residue_against_limit(j):
    lam = TABLE2[0].lam
    rec = residue_at(lam, j, 300)
    assert rec.C_j != 0
    lim = residue_limit(lam, j, prec=300)
    assert abs(rec.value - lim) <= mpmath.mpf("1e-15") * abs(rec.value)


def test_vanishing_residue_is_tiny_in_the_limit():
    lam = TABLE2[0].lam
    rec = residue_at(lam, 5, 300)
    assert rec.C_j == 0 and rec.holomorphic
    assert abs(residue_limit(lam, 5, prec=300)) < mpmath.mpf("1e-15")


@pytest.mark.parametrize("entry", CORPUS[:5] + CORPUS[9:], ids=lambda e: e.label)
def test_residue_zeros_follow_progressions(entry):
    lam = entry.lam
    ps = pole_structure(lam)
    for j in range(201):
        assert (residue_coefficient(lam, j) == 0) == ps.J_contains(j), j


# -- progressions ------------------------------------------------------------------------------

def test_progression_examples():
    prog = solve_progression(5, 2, 1)
    assert (prog.start, prog.step) == (3, 5)
    assert solve_progression(5, 2, F(1, 2)) is None
    prog = solve_progression(2, 1, 0)
    assert (prog.start, prog.step) == (0, 2)
    with pytest.raises(CoprimalityError):
        solve_progression(4, 2, 1)
    with pytest.raises(ValueError):
        solve_progression(3, 3, 1)


@settings(max_examples=150)
@given(st.integers(2, 9), st.integers(1, 8), st.integers(-12, 12))
def test_progression_matches_enumeration(lam_, mu, nu):
    if mu >= lam_ or math.gcd(lam_, mu) != 1:
        with pytest.raises((ValueError, CoprimalityError)):
            solve_progression(lam_, mu, nu)
        return
    prog = solve_progression(lam_, mu, nu)
    brute = [j for j in range(80) if any(nu + lam_ * i == mu * j for i in range(j + 1))]
    assert prog.members(79) == brute


def test_pole_structure_cases():
    ps = pole_structure(TABLE2[0].lam)
    assert ps.case == "IV" and ps.density == F(1, 2) and ps.hol_density == 2
    assert (ps.jp.start, ps.jq.start, ps.jp.step) == (0, 1, 4)
    generic = Parameter(1, 1, 4, F(1, 7), F(1, 11), F(1, 2))
    ps = pole_structure(generic)
    assert ps.case == "I" and ps.density == 0 and not ps.J_contains(0)
    assert pole_structure(Parameter(1, 1, 4, 0, F(1, 11), F(1, 2))).case == "III"
    assert pole_structure(Parameter(1, 1, 4, F(1, 7), F(1, 2), F(1, 2))).case == "II"
    assert pole_structure(Parameter(1, 1, 4, 0, F(1, 4) - 1, F(1, 2))).case == "IV"
    five = pole_structure(Parameter(1, 1, 4, 0, 0, F(1, 2)))
    assert five.case == "V" and five.density == F(1, 4)
    elem = pole_structure(Parameter(1, 0, 4, F(1, 3), -2, F(1, 2)))
    assert elem.case == "elementary1" and elem.jq.start == 2 and elem.density == 1
    with pytest.raises(RegionError):
        pole_structure(Parameter(5, 1, 4, 0, 0, F(1, 2)))


# -- elementary and sine-sine --------------------------------------------------------------------

def test_elementary_examples():
    assert elementary_check(Parameter(1, 0, 3, F(1, 3), -2, F(1, 2))).kind == "elementary1"
    assert elementary_check(Parameter(2, 2, 4, 0, F(1, 2), F(1, 3))).kind == "elementary2"
    assert elementary_check(TABLE2[0].lam).kind == "non-elementary"
    assert classify(Parameter(2, 2, 4, 0, F(1, 2), F(1, 3))).kind == "elementary2"


def test_sine_sine_examples():
    rep = sine_sine_classify(1, 1, 4, F(1, 3), F(1, 6))
    assert rep.cases == (2,) and rep.verdict == "typeA"
    rep = sine_sine_classify(F(1, 2), F(1, 2), 3, F(1, 6), F(-1, 3))
    assert rep.cases == (5,) and rep.verdict == "typeB"
    rep = sine_sine_classify(F(1, 2), F(1, 2), 3, F(1, 4), F(1, 4))
    assert rep.constant and not rep.parity_constant and rep.verdict == "ruled-out"
    rep = sine_sine_classify(F(1, 3), F(1, 3), 4, KAPPA, -KAPPA)
    assert rep.cases == (6,) and rep.verdict == "ruled-out"
    assert not sine_sine_classify(F(1, 3), F(1, 2), 4, F(1, 5), F(1, 7)).constant


SMALL_FRACTIONS = st.fractions(min_value=-2, max_value=2, max_denominator=8)
RATES = st.sampled_from([F(1), F(2), F(-1), F(1, 2), F(3, 2), F(-1, 2), F(1, 3), F(2, 3), F(1, 4), F(3, 4)])


@settings(max_examples=200)
@given(RATES, RATES, SMALL_FRACTIONS, SMALL_FRACTIONS)
def test_sine_sine_constancy_against_floats(p, q, alpha, beta):
    rep = sine_sine_classify(p, q, 4, alpha, beta)
    seq = sine_sine_sequence(p, q, alpha, beta, 200)
    assert rep.constant == (max(seq) - min(seq) < 1e-9)


@settings(max_examples=200)
@given(RATES, RATES, st.integers(1, 7), SMALL_FRACTIONS, SMALL_FRACTIONS)
def test_parity_against_enumeration(p, q, r, alpha, beta):
    parities = {(math.floor(p * j + alpha) + math.floor(q * j + beta) + r * j) % 2 for j in range(-60, 60)}
    assert parity_constant(p, q, r, alpha, beta) == (len(parities) == 1)


# -- classification and deficiency ---------------------------------------------------------------

@pytest.mark.parametrize("entry", CORPUS, ids=lambda e: e.label)
def test_m_plus_deficiency_equals_r(entry):
    cls = classify(entry.lam)
    assert cls.kind == ("typeB" if entry in TABLE3 else "typeA")
    assert cls.details["m_plus_N"] == entry.lam.r
    assert cls.details["m"] == len(entry.u)
    assert cls.details["deficiency"]["case"] == "IV"


def test_deficiency_examples():
    assert deficiency(TABLE2[0].lam, "typeA").N == 2
    rep = deficiency(TABLE3[0].lam, "typeB")
    assert rep.N == 1 and rep.case == "IV"
    assert deficiency(Parameter(1, 1, 4, F(1, 7), F(1, 11), F(1, 2)), "typeA").N == 0
    with pytest.raises(RegionError):
        deficiency(Parameter(1, -1, 4, 0, 0, F(1, 2)), "typeA")


# -- Bailey family -----------------------------------------------------------------------------

def test_bailey_family():
    gp = bailey_gpf(2, 1, F(1, 3))
    assert gp.d == F(27, 32)
    assert not bailey_null_deficiency(2, 1, F(1, 3))
    assert integer_coincidences(gp) == [(F(1, 3), F(1, 3))]
    assert bailey_null_deficiency(3, 1, F(1, 5)) and bailey_null_deficiency(3, 2, F(1, 7))
    assert not bailey_null_deficiency(3, 1, 0)
    assert integer_coincidences(bailey_gpf(3, 1, 0))


@pytest.mark.parametrize("jkc", [(2, 1, F(1, 3)), (3, 1, F(1, 5)), (3, 2, F(1, 7))])
def test_bailey_identity(jkc):
    lam = bailey_parameter(*jkc)
    gp = bailey_gpf(*jkc)
    rep = verify_gpf_numeric(lam, gp, (F(17, 10),), 426)
    assert rep.max_error < mpmath.mpf("1e-30")
    f = oracle_f(lam, F(17, 10))
    with mpmath.workdps(140):
        g = mpmath.mpf(gp.evaluate(F(17, 10), 426))
        assert abs(f - g) / abs(f) < mpmath.mpf("1e-100")
