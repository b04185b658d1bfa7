"""Real-root isolation (Sturm sequences) and exact identification of
rational and quadratic roots.

Identification never trusts floating point: an isolating interval is
refined until at most one candidate of bounded height fits inside, the
candidate is reconstructed by best rational approximation, and it is then
checked by exact substitution.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .. import kernels
from .mpoly import MPoly, bivariate_resultant
from .poly import Poly, _int_form, poly_gcd, squarefree_decomposition, squarefree_part
from .quadext import field_sign, quad, radicand_of, squarefree_split

MAX_FACTOR_DEGREE = 12
ISOLATION_WIDTH = Fraction(1, 1 << 64)


class DegreeOverflowError(ValueError):
    """Raised when a polynomial is above the supported factorization degree."""


# -- integer-coefficient isolation --------------------------------------------

def _int_coeffs(p: Poly) -> list[int]:
    if not p.is_rational():
        raise TypeError("real-root isolation needs rational coefficients")
    ints, _ = _int_form(p.coeffs)
    return kernels.ipoly_primitive(ints)


def _sign_at(c: list[int], x: Fraction) -> int:
    v = kernels.ipoly_eval_homog(c, x.numerator, x.denominator)
    return (v > 0) - (v < 0)


def cauchy_bound(p: Poly) -> Fraction:
    """All complex roots of ``p`` have modulus strictly below this bound."""
    lc = abs(p.lc)
    return 1 + max((abs(c) / lc for c in p.coeffs[:-1]), default=Fraction(0))


class _Isolator:
    """Sturm-based isolation for one square-free integer polynomial."""

    def __init__(self, coeffs: list[int]):
        self.c = coeffs
        self.chain = kernels.sturm_chain(coeffs)

    def variations(self, x: Fraction) -> int:
        return kernels.sign_variations(self.chain, x.numerator, x.denominator)

    def count(self, a: Fraction, b: Fraction) -> int:
        """Number of distinct roots in the half-open interval (a, b]."""
        return self.variations(a) - self.variations(b)

    def isolate(self, lo: Fraction, hi: Fraction) -> list[tuple[Fraction, Fraction]]:
        """Intervals holding one root each: degenerate (m, m) or open (a, b)."""
        out: list[tuple[Fraction, Fraction]] = []
        stack = [(lo, hi, self.count(lo, hi))]
        while stack:
            a, b, n = stack.pop()
            if n == 0:
                continue
            if n == 1:
                out.append((b, b) if _sign_at(self.c, b) == 0 else (a, b))
                continue
            m = (a + b) / 2
            left = self.count(a, m)
            stack.append((a, m, left))
            stack.append((m, b, n - left))
        # The search covered (lo, hi]; drop a root sitting on hi itself.
        return sorted(iv for iv in out if iv != (hi, hi))

    def refine(self, iv: tuple[Fraction, Fraction], width: Fraction) -> tuple[Fraction, Fraction]:
        a, b = iv
        if a == b:
            return iv
        sa = _sign_at(self.c, a)
        while sa == 0:
            m = (a + b) / 2
            sm = _sign_at(self.c, m)
            if sm == 0:
                return (m, m)
            if self.count(a, m) == 1:
                b = m
            else:
                a, sa = m, sm
        while b - a >= width:
            m = (a + b) / 2
            sm = _sign_at(self.c, m)
            if sm == 0:
                return (m, m)
            if sm == sa:
                a = m
            else:
                b = m
        return (a, b)


def _default_range(p: Poly, lo, hi) -> tuple[Fraction, Fraction]:
    bound = cauchy_bound(p)
    lo = -bound if lo is None else Fraction(lo)
    hi = bound if hi is None else Fraction(hi)
    return lo, hi


def isolate_real_roots(p: Poly, lo=None, hi=None, width: Fraction = ISOLATION_WIDTH):
    """Isolate the distinct real roots of ``p`` in the open interval (lo, hi).

    Returns ``[((left, right), multiplicity), ...]`` sorted by position; each
    interval is either a single exact rational point or an open interval of
    width below ``width`` containing exactly one root.
    """
    if p.is_zero():
        raise ValueError("the zero polynomial has no isolated roots")
    lo, hi = _default_range(p, lo, hi)
    if lo >= hi:
        raise ValueError("empty interval")
    found: list[list] = []
    for factor, mult in squarefree_decomposition(p):
        iso = _Isolator(_int_coeffs(factor))
        for iv in iso.isolate(lo, hi):
            found.append([iso.refine(iv, width), mult, iso])
    # Factors are coprime, so overlapping intervals separate under refinement.
    found.sort(key=lambda item: item[0][0])
    changed = True
    while changed:
        changed = False
        for i in range(len(found) - 1):
            (a1, b1), _, iso1 = found[i]
            (a2, b2), _, iso2 = found[i + 1]
            if b1 >= a2:
                w1 = (b1 - a1) / 2 or width
                w2 = (b2 - a2) / 2 or width
                found[i][0] = iso1.refine((a1, b1), w1)
                found[i + 1][0] = iso2.refine((a2, b2), w2)
                changed = True
        found.sort(key=lambda item: item[0][0])
    return [(tuple(iv), mult) for iv, mult, _ in found]


# -- rational roots -------------------------------------------------------------

def rational_roots(p: Poly, lo=None, hi=None, den_bound: int | None = None) -> list[Fraction]:
    """All distinct rational roots of a rational polynomial in (lo, hi).

    ``den_bound`` caps the denominators searched for; by Gauss's lemma the
    leading coefficient of the primitive integer form is always sufficient.
    """
    if p.is_zero():
        raise ValueError("the zero polynomial has every root")
    if p.is_const():
        return []
    sf = squarefree_part(p)
    c = _int_coeffs(sf)
    lead = abs(c[-1])
    bound = lead if den_bound is None else min(lead, den_bound)
    lo, hi = _default_range(sf, lo, hi)
    iso = _Isolator(c)
    width = Fraction(1, 2 * bound * bound + 1)
    out = []
    for iv in iso.isolate(lo, hi):
        a, b = iso.refine(iv, min(width, ISOLATION_WIDTH))
        cand = a if a == b else ((a + b) / 2).limit_denominator(bound)
        if a <= cand <= b and _sign_at(c, cand) == 0 and lo < cand < hi:
            out.append(cand)
    return sorted(set(out))


def _divide_out(p: Poly, factor: Poly) -> tuple[Poly, int]:
    k = 0
    while True:
        q, r = divmod(p, factor)
        if not r.is_zero():
            return p, k
        p, k = q, k + 1


# -- factorization into small factors --------------------------------------------

@dataclass
class SmallFactorization:
    """Monic factors of degree one and two (with repetition) times a cofactor.

    ``flagged`` is set when the cofactor is non-constant and has a real root
    in (0, 1), i.e. it may hide an algebraic value of higher degree.
    """

    factors: list[Poly]
    cofactor: Poly
    flagged: bool = False

    def product(self) -> Poly:
        out = self.cofactor
        for f in self.factors:
            out = out * f
        return out

    def linear_roots(self) -> list[Fraction]:
        return [-f.coeff(0) for f in self.factors if len(f) == 2]


def _quadratic_candidates(p: Poly) -> list[Poly]:
    """Monic rational quadratics z^2 + s z + t dividing monic ``p``.

    The remainder of p modulo z^2 + s z + t is R1(s,t) z + R0(s,t); its
    common rational zeros are found by eliminating t with a resultant.
    """
    n = len(p) - 1
    names = ("s", "t")
    s, t = MPoly.gen(0, names), MPoly.gen(1, names)
    coeffs = [MPoly.const(c, names) for c in p.coeffs]
    for k in range(n, 1, -1):
        lead = coeffs[k]
        coeffs[k - 1] = coeffs[k - 1] - lead * s
        coeffs[k - 2] = coeffs[k - 2] - lead * t
    r1, r0 = coeffs[1], coeffs[0]
    # Denominators of s and t divide the leading integer coefficient.
    lead = abs(_int_coeffs(p)[-1])
    if r1.degree_in(1) > 0 and r0.degree_in(1) > 0:
        res = bivariate_resultant(r1, r0, eliminate=1)
        s_values = [] if res.is_zero() else rational_roots(res, den_bound=lead)
    else:
        pure = r1 if r1.degree_in(1) <= 0 else r0
        s_values = [] if pure.is_zero() else rational_roots(pure.to_poly(0), den_bound=lead)
    out = []
    for s0 in s_values:
        g = poly_gcd(r1.subs(0, s0).to_poly(1, "t"), r0.subs(0, s0).to_poly(1, "t"))
        if g.is_zero() or g.is_const():
            continue
        for t0 in rational_roots(g, den_bound=lead):
            out.append(Poly((t0, s0, 1), p.var))
    return out


def factor_small(p: Poly) -> SmallFactorization:
    """Split off every linear and quadratic factor over Q."""
    if not p.is_rational():
        raise TypeError("factor_small needs rational coefficients")
    if p.is_zero():
        raise ValueError("cannot factor the zero polynomial")
    if len(p) - 1 > MAX_FACTOR_DEGREE:
        raise DegreeOverflowError(f"degree {len(p) - 1} exceeds {MAX_FACTOR_DEGREE}")
    factors: list[Poly] = []
    rem = p
    for root in rational_roots(p):
        lin = Poly((-root, 1), p.var)
        rem, k = _divide_out(rem, lin)
        factors.extend([lin] * k)
    deg = len(rem) - 1
    if deg == 2:
        factors.append(rem.monic())
        rem = Poly.const(rem.lc, p.var)
    elif deg >= 4:
        for quad_factor in _quadratic_candidates(rem.monic()):
            if len(rem) - 1 < 2:
                break
            rem, k = _divide_out(rem, quad_factor)
            factors.extend([quad_factor] * k)
        if len(rem) - 1 == 2:
            factors.append(rem.monic())
            rem = Poly.const(rem.lc, p.var)
    flagged = False
    if len(rem) > 1:
        flagged = bool(isolate_real_roots(rem, 0, 1))
    return SmallFactorization(factors, rem, flagged)


# -- roots in Q or Q(sqrt D) --------------------------------------------------------

@dataclass
class FieldRoots:
    """Exact roots found plus isolating intervals of real roots left unidentified."""

    roots: list = field(default_factory=list)
    unidentified: list = field(default_factory=list)

    @property
    def complete(self) -> bool:
        return not self.unidentified


def _in_range(v, lo, hi) -> bool:
    if lo is not None and field_sign(v - lo) <= 0:
        return False
    if hi is not None and field_sign(v - hi) >= 0:
        return False
    return True


def _quadratic_roots(s_sum: Fraction, s_prod: Fraction):
    """Roots of z^2 - s_sum z + s_prod when they are real quadratic irrationals."""
    disc = s_sum * s_sum - 4 * s_prod
    if disc <= 0:
        return None
    k, m = squarefree_split(disc.numerator * disc.denominator)
    if m == 1:
        return None
    half = Fraction(k, 2 * disc.denominator)
    return m, quad(s_sum / 2, -half, m), quad(s_sum / 2, half, m)


def _numerically_vanishes(f: Poly, iv) -> bool:
    """Heuristic screen: is f small at the midpoint of a tiny interval?"""
    import mpmath

    ctx = mpmath.MPContext()
    ctx.prec = 256
    mid = ctx.mpf((iv[0] + iv[1]).numerator) / ctx.mpf(2 * (iv[0] + iv[1]).denominator)
    from .quadext import to_mpf

    val = ctx.mpf(0)
    scale = ctx.mpf(0)
    for c in reversed(f.coeffs):
        cv = to_mpf(c, ctx)
        val = val * mid + cv
        scale = scale * abs(mid) + abs(cv)
    return abs(val) <= scale * ctx.mpf(2) ** -40


def roots_in_field(f: Poly, lo=None, hi=None, radicand: int | None = None) -> FieldRoots:
    """Exact real roots of ``f`` in (lo, hi) lying in Q or a real quadratic field.

    For rational ``f`` quadratic roots of any radicand are returned unless
    ``radicand`` pins one.  For ``f`` over Q(sqrt D) only roots in that field
    can exist as degree-two values; the search goes through the norm
    polynomial f * conj(f).  Real roots that cannot be identified are
    reported as isolating intervals when ``f`` vanishes there numerically.
    """
    if f.is_zero():
        raise ValueError("the zero polynomial has every root")
    result = FieldRoots()
    if f.is_const():
        return result
    d = radicand_of(*f.coeffs)
    if d is not None:
        radicand = d
        norm = f * f.conj()
    else:
        norm = f
    sf = squarefree_part(norm)
    c = _int_coeffs(sf)
    lead = abs(c[-1])
    bound = cauchy_bound(sf)
    iso = _Isolator(c)
    width = min(ISOLATION_WIDTH, Fraction(1, 8 * lead * lead * (math.ceil(bound) + 1)))
    intervals = [iso.refine(iv, width) for iv in iso.isolate(-bound, bound)]

    found = set()
    pending = []
    for a, b in intervals:
        cand = a if a == b else ((a + b) / 2).limit_denominator(lead)
        if a <= cand <= b and _sign_at(c, cand) == 0:
            if f(cand) == 0:
                found.add(cand)
            continue
        pending.append((a, b))
    identified: dict[int, object] = {}
    for i in range(len(pending)):
        for j in range(i + 1, len(pending)):
            if i in identified or j in identified:
                continue
            (a1, b1), (a2, b2) = pending[i], pending[j]
            s_sum = ((a1 + b1 + a2 + b2) / 2).limit_denominator(lead)
            s_prod = ((a1 + b1) * (a2 + b2) / 4).limit_denominator(lead)
            q = Poly((s_prod, -s_sum, 1), sf.var)
            if not (sf % q).is_zero():
                continue
            parts = _quadratic_roots(s_sum, s_prod)
            if parts is None:
                continue
            m, lo_root, hi_root = parts
            if radicand is not None and m != radicand:
                continue
            identified[i], identified[j] = lo_root, hi_root
    for k, iv in enumerate(pending):
        if k in identified:
            if f(identified[k]) == 0:
                found.add(identified[k])
            continue
        if lo is not None and iv[1] <= Fraction(lo):
            continue
        if hi is not None and iv[0] >= Fraction(hi):
            continue
        if _numerically_vanishes(f, iv):
            result.unidentified.append(iv)
    result.roots = sorted((r for r in found if _in_range(r, lo, hi)), key=float)
    return result
