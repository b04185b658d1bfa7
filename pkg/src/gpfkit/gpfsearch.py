"""Search for parameters lambda = (p, q, r; a, b; x) whose hypergeometric
function f(w) = 2F1(p w + a, q w + b; r w; x) has a rational ratio
R(w) = f(w+1)/f(w).

The pipeline for an integer triple (p, q, r) is:

1. candidate x: exact roots of the spectral polynomial Y(z) in (0, 1);
2. for each x, the terminating system in (a, b), intersected factor by factor;
3. every surviving (a, b) is certified by expanding the truncated product
   Phi(w; lambda) exactly and checking it is the zero polynomial;
4. R(w) = (1 - x)^(r-p-q-1) (r w)_r / P(w).
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb

import mpmath

from .contiguous import spectral_polys
from .errors import (
    HypothesisError,
    InconsistencyError,
    RegionError,
    SolutionTypeError,
    UnsupportedIrrationalError,
)
from .exactnum import (
    MPoly,
    Poly,
    RatFunc,
    bivariate_gcd,
    bivariate_resultant,
    field_sign,
    field_sqrt,
    format_field,
    is_rational,
    mpoly_exquo,
    pochhammer,
    poly_gcd,
    radicand_of,
    roots_in_field,
    squarefree_part,
    to_field,
    to_mpf,
)
from .hyperseries import mp_context, terminating_F

log = logging.getLogger(__name__)

AB = ("a", "b")
WAB = ("w", "a", "b")


# -- parameters and regions ------------------------------------------------------------

@dataclass(frozen=True)
class Parameter:
    """lambda = (p, q, r; a, b; x) with exact entries."""

    p: object
    q: object
    r: object
    a: object
    b: object
    x: object

    def __post_init__(self):
        for name in ("p", "q", "r", "a", "b", "x"):
            object.__setattr__(self, name, to_field(getattr(self, name)))
        if self.x == 0:
            raise RegionError("x = 0 is excluded")

    @property
    def pqr(self) -> tuple:
        return (self.p, self.q, self.r)

    @property
    def ab(self) -> tuple:
        return (self.a, self.b)

    def is_integral(self) -> bool:
        return all(is_rational(v) and Fraction(v).denominator == 1 for v in self.pqr)

    def int_pqr(self) -> tuple[int, int, int]:
        if not self.is_integral():
            raise HypothesisError("(p, q, r) must be integers here")
        return tuple(int(v) for v in self.pqr)

    def _x_in(self, lo_closed: bool) -> bool:
        lo_ok = field_sign(self.x) >= 0 if lo_closed else field_sign(self.x + 1) > 0
        return lo_ok and field_sign(self.x - 1) < 0

    @property
    def in_cross(self) -> bool:
        p, q, r = self.pqr
        return (0 < p < r or 0 < q < r) and self._x_in(False)

    @property
    def in_square(self) -> bool:
        p, q, r = self.pqr
        return 0 < p < r and 0 < q < r and self._x_in(False)

    @property
    def in_hstrip(self) -> bool:
        p, q, r = self.pqr
        return 0 < p < r and q < r and self._x_in(True)

    @property
    def in_pencil(self) -> bool:
        p, q, r = self.pqr
        return 0 < p < r and q <= p and p + q <= r and self._x_in(True)

    @property
    def in_apollo(self) -> bool:
        p, q, r = self.pqr
        return 0 < q <= p and p + q <= r and self._x_in(True)

    def swapped(self) -> "Parameter":
        return Parameter(self.q, self.p, self.r, self.b, self.a, self.x)

    def __str__(self):
        f = format_field
        return f"({f(self.p)},{f(self.q)},{f(self.r)};{f(self.a)},{f(self.b)};{f(self.x)})"


def _radicand(*values):
    return radicand_of(*values)


# -- symmetries ----------------------------------------------------------------------------

def apply_symmetry(name: str, lam: Parameter) -> Parameter:
    p, q, r, a, b, x = lam.p, lam.q, lam.r, lam.a, lam.b, lam.x
    if name == "sym0":
        return Parameter(q, p, r, b, a, x)
    if name == "sym1":
        return Parameter(r - p, r - q, r, -a, -b, x)
    if name == "sym2":
        return Parameter(p, r - q, r, a, -b, x / (x - 1))
    if name == "sym3":
        return Parameter(r - p, q, r, -a, b, x / (x - 1))
    raise ValueError(f"unknown symmetry {name!r}")


def reduce_symmetry(lam: Parameter) -> tuple[Parameter, list[str]]:
    """Bring a parameter of the cross region into the pencil region.

    Square-region input lands in the apollo triangle.  Returns the image and
    the maps applied, in order.
    """
    if not lam.in_cross:
        raise RegionError(f"{lam} is outside the cross region")
    trace: list[str] = []

    def step(name):
        nonlocal lam
        lam = apply_symmetry(name, lam)
        trace.append(name)

    if not (0 < lam.p < lam.r):
        step("sym0")
    negative_x = field_sign(lam.x) < 0
    if lam.q >= lam.r:
        step("sym2" if negative_x else "sym1")
    elif negative_x:
        step("sym3")
    if lam.q > 0:
        if lam.p + lam.q > lam.r:
            step("sym1")
        if lam.q > lam.p:
            step("sym0")
    return lam, trace


# -- truncated hypergeometric products ------------------------------------------------------

def _wab(c0=0, cw=0, ca=0, cb=0) -> MPoly:
    return MPoly.affine(c0, (cw, ca, cb), WAB)


def _mpoch(v: MPoly, n: int) -> MPoly:
    out = MPoly.const(1, v.names)
    for t in range(n):
        out = out * (v + t)
    return out


def _series_terms(alpha: MPoly, beta: MPoly, n: int) -> list[MPoly]:
    """(alpha)_i (beta)_i / i! for i = 0..n."""
    out = [MPoly.const(1, alpha.names)]
    cur = out[0]
    for i in range(n):
        cur = cur * (alpha + i) * (beta + i) * Fraction(1, i + 1)
        out.append(cur)
    return out


def _truncated_product(kind: str, form: str, pqr, x, a=None, b=None) -> MPoly:
    """Phi (kind='phi') or P (kind='P') as a polynomial in (w, a, b).

    ``form`` picks the direct definition or its Euler-transformed twin.
    When a or b is given, it is substituted as a constant.
    """
    p, q, r = pqr
    trunc = r - q - 1
    lead = r - 1 if kind == "phi" else r
    av = _wab(ca=1) if a is None else MPoly.const(a, WAB)
    bv = _wab(cb=1) if b is None else MPoly.const(b, WAB)
    w1 = _wab(1, 1)  # w + 1
    if form == "direct":
        first = (_wab(cw=r - p) - av, _wab(cw=r - q) - bv)
        second = (1 - w1 * (r - p) + av, 1 - w1 * (r - q) + bv)
        power = 0
    elif form == "euler":
        first = (_wab(cw=p) + av, _wab(cw=q) + bv)
        shift = 1 if kind == "phi" else 0
        second = (shift - w1 * p - av, shift - w1 * q - bv)
        power = r - p - q - (0 if kind == "phi" else 1)
        if power < 0:
            raise RegionError("the Euler form needs r - p - q >= 0 (>= 1 for P)")
    else:
        raise ValueError("form must be 'direct' or 'euler'")
    t1 = _series_terms(*first, trunc)
    t2 = _series_terms(*second, trunc)
    # sum_{l <= trunc - n} C(power, l) (-x)^l, times x^n
    xs = [to_field(x) ** n for n in range(trunc + 1)]
    weight = []
    for n in range(trunc + 1):
        s = sum((comb(power, l) * (-1) ** l * xs[l] for l in range(trunc - n + 1)), Fraction(0))
        weight.append(s * xs[n])
    rw = _wab(cw=r)
    total = MPoly({}, WAB)
    for i in range(trunc + 1):
        for j in range(trunc - i + 1):
            coeff = weight[i + j] * (-1) ** j
            if coeff == 0:
                continue
            total = total + _mpoch(rw + i, lead - i - j) * t1[i] * t2[j] * coeff
    return total


def _as_w_poly(m: MPoly) -> Poly:
    coeffs = [c.const_value() if not c.is_zero() else Fraction(0) for c in m.coeffs_in(0)]
    for c in m.coeffs_in(0):
        if not c.is_const():
            raise ValueError("polynomial still depends on a or b")
    return Poly(coeffs, "w")


def _drop_w(m: MPoly) -> MPoly:
    return MPoly({e[1:]: c for e, c in m.terms.items()}, AB)


def _check_region(pqr, extra_gap: int = 0):
    p, q, r = pqr
    if not all(isinstance(v, int) for v in pqr):
        raise RegionError("p, q, r must be integers")
    if not (0 <= q <= p and p + q <= r - extra_gap and p < r):
        raise RegionError(f"{pqr} is outside the region 0 <= q <= p, p + q <= r - {extra_gap}")


@dataclass(frozen=True)
class TruncProduct:
    phi: Poly
    lam: Parameter

    @property
    def coefficients(self) -> list:
        return list(self.phi.coeffs)

    def is_zero(self) -> bool:
        return self.phi.is_zero()


@dataclass(frozen=True)
class PPoly:
    P: Poly
    lam: Parameter


def phi_poly(lam: Parameter, form: str = "direct") -> TruncProduct:
    """Phi(w; lambda) expanded exactly in w."""
    pqr = lam.int_pqr()
    _check_region(pqr)
    phi = _as_w_poly(_truncated_product("phi", form, pqr, lam.x, lam.a, lam.b))
    if phi.degree > pqr[2] - 1:
        raise InconsistencyError(f"Phi has degree {phi.degree} > r - 1")
    return TruncProduct(phi, lam)


def phi_symbolic(pqr, x, form: str = "direct") -> list[MPoly]:
    """The coefficients Phi_k(a, b), k = 0..r-1, as polynomials in (a, b)."""
    _check_region(pqr)
    full = _truncated_product("phi", form, pqr, x)
    coeffs = [_drop_w(c) for c in full.coeffs_in(0)]
    if len(coeffs) > pqr[2]:
        if any(not c.is_zero() for c in coeffs[pqr[2]:]):
            raise InconsistencyError("Phi has degree above r - 1")
        coeffs = coeffs[: pqr[2]]
    return coeffs + [MPoly({}, AB)] * (pqr[2] - len(coeffs))


def p_poly(lam: Parameter, form: str = "direct") -> PPoly:
    """P(w), the polynomial whose reciprocal carries R(w)."""
    pqr = lam.int_pqr()
    _check_region(pqr, extra_gap=1)
    P = _as_w_poly(_truncated_product("P", form, pqr, lam.x, lam.a, lam.b))
    if P.degree > pqr[2]:
        raise InconsistencyError(f"P has degree {P.degree} > r")
    return PPoly(P, lam)


def division_target(lam: Parameter) -> Poly:
    """(pw+a+1)_{p-1} (qw+b+1)_{q-1} ((r-p)w-a)_{r-p} ((r-q)w-b)_{r-q}."""
    p, q, r = lam.int_pqr()
    a, b = lam.a, lam.b
    return (
        pochhammer(Poly.linear(a + 1, p), p - 1)
        * pochhammer(Poly.linear(b + 1, q), q - 1)
        * pochhammer(Poly.linear(-a, r - p), r - p)
        * pochhammer(Poly.linear(-b, r - q), r - q)
    )


def mandatory_factors(lam: Parameter) -> list[Poly]:
    """w + (r-p-1-a)/(r-p) and w + (r-q-1-b)/(r-q)."""
    p, q, r = lam.int_pqr()
    return [
        Poly((Fraction(r - p - 1) / (r - p) - lam.a / (r - p), 1)),
        Poly((Fraction(r - q - 1) / (r - q) - lam.b / (r - q), 1)),
    ]


# -- candidate x ------------------------------------------------------------------------------

class CandidateX(tuple):
    """Exact roots of Y(z) in (0, 1), with diagnostics attached."""

    unidentified: list
    warnings: list

    def __new__(cls, roots, unidentified=(), warnings=()):
        obj = super().__new__(cls, roots)
        obj.unidentified = list(unidentified)
        obj.warnings = list(warnings)
        return obj

    @property
    def complete(self) -> bool:
        return not self.unidentified


def candidate_x(pqr) -> CandidateX:
    p, q, r = pqr
    if not (0 < q <= p and p + q <= r):
        raise RegionError(f"{pqr} is outside the apollo triangle")
    warnings = []
    gap = r - p - q
    if gap == 0 or gap % 2:
        warnings.append(f"r - p - q = {gap} is not positive and even: no type-A solution")
    if gap == 0:
        return CandidateX((), (), warnings)
    Y = spectral_polys(pqr).Y
    found = roots_in_field(Y, 0, 1)
    if found.unidentified:
        warnings.append(
            f"Y has {len(found.unidentified)} root(s) in (0,1) of degree > 2 for {pqr}"
        )
    return CandidateX(found.roots, found.unidentified, warnings)


# -- terminating system ------------------------------------------------------------------------

@dataclass(frozen=True)
class TermEquation:
    """factorial x F x F = 0 at one evaluation point, all in (a, b)."""

    starred: bool
    index: int
    w: MPoly
    beta: MPoly
    gamma: MPoly
    beta_t: MPoly
    gamma_t: MPoly
    factorial: tuple
    first: MPoly
    second: MPoly
    sign: int
    scale: object

    def product(self) -> MPoly:
        out = self.first * self.second
        for f in self.factorial:
            out = out * f
        return out

    def phi_value(self) -> MPoly:
        """The value of Phi at this point predicted by the closed form."""
        return self.product() * (self.scale * self.sign)

    def factors(self) -> list[MPoly]:
        return [f for f in (*self.factorial, self.first, self.second) if not f.is_const() or f.is_zero()]


@dataclass(frozen=True)
class TerminatingSystem:
    pqr: tuple
    x: object
    starred: tuple
    plain: tuple

    @property
    def equations(self) -> tuple:
        return self.starred + self.plain

    def exceptional_a(self) -> list[Fraction]:
        """Values of a where two evaluation points collide."""
        p, q, r = self.pqr
        out = {Fraction(p, r) * (k + j) - j for k in range(r - p) for j in range(p)}
        return sorted(out)

    def distinct(self, a) -> bool:
        return all(a != v for v in self.exceptional_a())


def terminating_system(pqr, x) -> TerminatingSystem:
    p, q, r = pqr
    x = to_field(x)
    A = MPoly.gen(0, AB)
    B = MPoly.gen(1, AB)
    starred = []
    for k in range(r - p):
        w = (A - k) * Fraction(1, r - p)
        beta = w * (r - q) - B
        gamma = w * r
        beta_t = 1 - (w + 1) * (r - q) + B
        gamma_t = 2 - (w + 1) * r
        starred.append(TermEquation(
            True, k, w, beta, gamma, beta_t, gamma_t,
            tuple(gamma + k + i for i in range(p)),
            _as_mpoly(terminating_F(k, beta, gamma, x)),
            _as_mpoly(terminating_F(r - p - 1 - k, beta_t, gamma_t, x)),
            (-1) ** (r - p - 1 - k), Fraction(1),
        ))
    plain = []
    for j in range(p):
        w = (A + j) * Fraction(-1, p)
        beta = w * q + B
        gamma = w * r
        beta_t = -(w + 1) * q - B
        gamma_t = 1 - (w + 1) * r
        plain.append(TermEquation(
            False, j, w, beta, gamma, beta_t, gamma_t,
            tuple(gamma + j + i for i in range(r - p)),
            _as_mpoly(terminating_F(j, beta, gamma, x)),
            _as_mpoly(terminating_F(p - 1 - j, beta_t + 1, gamma_t + 1, x)),
            (-1) ** (p - 1 - j), (1 - x) ** (r - p - q),
        ))
    return TerminatingSystem(tuple(pqr), x, tuple(starred), tuple(plain))


def _as_mpoly(v) -> MPoly:
    return v if isinstance(v, MPoly) else MPoly.const(v, AB)


# -- solving for (a, b) ------------------------------------------------------------------------

@dataclass(frozen=True)
class _Curve:
    poly: MPoly


class _Approx:
    """A real root known only numerically (degree > 2 over the base field)."""

    __slots__ = ("value",)

    def __init__(self, value):
        self.value = value

    def __repr__(self):
        return f"~{mpmath.nstr(self.value, 20)}"


def _exact(v) -> bool:
    return not isinstance(v, _Approx)


class _Intersector:
    """Intersects algebraic sets in the real (a, b)-plane with hypersurfaces.

    Components are ``_Curve`` objects or points (a, b).  Coordinates that are
    not rational or quadratic are carried as high-precision approximations so
    that spurious branches can be discarded numerically; a branch that
    survives every equation numerically marks the result ``incomplete``.
    """

    PREC = 320
    VANISH_BITS = 150

    def __init__(self, radicand):
        self.radicand = radicand
        self.incomplete = False
        self.ctx = mp_context(self.PREC)

    # numeric helpers
    def _num(self, v):
        return v.value if isinstance(v, _Approx) else to_mpf(v, self.ctx)

    def _eval(self, poly, values):
        """(value, magnitude scale) of an MPoly at numeric values."""
        ctx = self.ctx
        nums = [self._num(v) for v in values]
        val, scale = ctx.mpf(0), ctx.mpf(0)
        for exps, c in poly.terms.items():
            t = to_mpf(c, ctx)
            for v, k in zip(nums, exps):
                if k:
                    t *= v ** k
            val += t
            scale += abs(t)
        return val, scale

    def _vanishes(self, poly: MPoly, point) -> bool:
        if all(_exact(v) for v in point):
            return poly(*point) == 0
        val, scale = self._eval(poly, point)
        return abs(val) <= scale * self.ctx.mpf(2) ** -self.VANISH_BITS

    def _polish(self, poly: Poly, iv):
        ctx = self.ctx
        coeffs = [to_mpf(c, ctx) for c in squarefree_part(poly).coeffs]
        dcoeffs = [k * c for k, c in enumerate(coeffs)][1:]
        x = ctx.mpf(iv[0].numerator) / iv[0].denominator
        x = (x + ctx.mpf(iv[1].numerator) / iv[1].denominator) / 2
        for _ in range(40):
            f = ctx.polyval(coeffs[::-1], x)
            d = ctx.polyval(dcoeffs[::-1], x)
            if d == 0:
                break
            step = f / d
            x -= step
            if abs(step) <= abs(x) * ctx.mpf(2) ** (-self.PREC + 8):
                break
        return _Approx(x)

    def roots(self, poly: Poly) -> list:
        try:
            found = roots_in_field(poly, radicand=self.radicand)
        except UnsupportedIrrationalError:
            self.incomplete = True
            return []
        return list(found.roots) + [self._polish(poly, iv) for iv in found.unidentified]

    def _numeric_roots(self, poly_in_var: MPoly, var: int, fixed_index: int, fixed) -> list:
        """Real roots of an MPoly after fixing one coordinate numerically."""
        ctx = self.ctx
        coeffs = []
        for part in poly_in_var.coeffs_in(var):
            vals = [None, None]
            vals[fixed_index] = fixed
            vals[var] = Fraction(0)
            coeffs.append(self._eval(part, vals)[0] if not part.is_zero() else ctx.mpf(0))
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        if len(coeffs) <= 1:
            if not coeffs:
                self.incomplete = True
            return []
        try:
            found = ctx.polyroots(coeffs[::-1], maxsteps=400, extraprec=2 * self.PREC)
        except ctx.NoConvergence:
            self.incomplete = True
            return []
        tol = ctx.mpf(2) ** -(self.PREC // 3)
        return [_Approx(ctx.re(z)) for z in found if abs(ctx.im(z)) <= tol * (1 + abs(z))]

    # exact-or-numeric intersection
    def _points_on(self, c: MPoly, g: MPoly) -> list:
        """Finite intersection of c = 0 and g = 0 (no common factor)."""
        if c.is_const():
            return []
        points = []
        if c.degree_in(1) == 0 or g.degree_in(1) == 0:
            univariate, other = (c, g) if c.degree_in(1) == 0 else (g, c)
            for a0 in self.roots(univariate.to_poly(0)):
                points += [(a0, b0) for b0 in self._second_roots(other, 0, a0, None)]
            return points
        if c.degree_in(0) == 0 or g.degree_in(0) == 0:
            univariate, other = (c, g) if c.degree_in(0) == 0 else (g, c)
            for b0 in self.roots(univariate.to_poly(1)):
                points += [(a0, b0) for a0 in self._second_roots(other, 1, b0, None)]
            return points
        res = bivariate_resultant(c, g, eliminate=1)
        if res.is_zero():
            raise InconsistencyError("resultant vanished for coprime polynomials")
        for a0 in self.roots(res):
            points += [(a0, b0) for b0 in self._second_roots(c, 0, a0, g)]
        return points

    def _second_roots(self, f: MPoly, fixed_index: int, value, g: MPoly | None) -> list:
        """Roots in the other coordinate of f (and g, if given) with one coordinate fixed."""
        var = 1 - fixed_index
        if not _exact(value):
            cands = self._numeric_roots(f, var, fixed_index, value)
            if g is not None:
                cands = [v for v in cands if self._vanishes(g, _point(fixed_index, value, v))]
            return cands
        fu = f.subs(fixed_index, value).to_poly(var)
        if g is not None:
            gu = g.subs(fixed_index, value).to_poly(var)
            fu = gu if fu.is_zero() else (fu if gu.is_zero() else poly_gcd(fu, gu))
        if fu.is_zero():
            self.incomplete = True
            return []
        return self.roots(fu)

    def intersect(self, comp, g: MPoly) -> list:
        if g.is_zero():
            return [comp]
        if g.is_const():
            return []
        if comp is None:
            return [_Curve(g.primitive())]
        if isinstance(comp, tuple):
            return [comp] if self._vanishes(g, comp) else []
        c = comp.poly
        h = bivariate_gcd(c, g)
        out = []
        if not h.is_const():
            out.append(_Curve(h))
            c = mpoly_exquo(c, h)
        out += self._points_on(c, g)
        return out


def _point(fixed_index, fixed, other):
    return (fixed, other) if fixed_index == 0 else (other, fixed)


def _dedupe(components: list) -> list:
    curves, points = [], []
    for comp in components:
        if isinstance(comp, _Curve):
            if comp not in curves:
                curves.append(comp)
        elif comp not in points:
            points.append(comp)
    points = [
        pt for pt in points
        if not (all(_exact(v) for v in pt) and any(cv.poly(*pt) == 0 for cv in curves))
    ]
    return curves + points


@dataclass(frozen=True)
class Solution:
    lam: Parameter
    elementary: str | None
    certificates: dict = field(default_factory=dict, compare=False, hash=False)


class SolveResult(tuple):
    """Certified solutions for one (p, q, r, x), plus completeness data."""

    incomplete: bool
    curves: list
    patterns: int

    def __new__(cls, solutions, incomplete=False, curves=(), patterns=0):
        obj = super().__new__(cls, solutions)
        obj.incomplete = incomplete
        obj.curves = list(curves)
        obj.patterns = patterns
        return obj


def elementary_kind(lam: Parameter) -> str | None:
    """'elementary1' / 'elementary2' (up to the swap symmetry) or None."""
    def integral(v):
        return is_rational(v) and Fraction(v).denominator == 1

    for cand in (lam, lam.swapped()):
        if cand.q == 0 and integral(cand.b) and cand.b <= 0:
            return "elementary1"
        if cand.p == cand.q and cand.r == 2 * cand.p and integral(cand.a) and integral(cand.b - Fraction(1, 2)):
            return "elementary2"
    return None


def _equation_order(eq: TermEquation) -> tuple:
    degs = [f.total_degree() for f in (eq.first, eq.second) if not f.is_const()]
    return (max(degs, default=0), sum(degs))


def solve_ab(pqr, x) -> SolveResult:
    """All real (a, b) making Phi(w; p, q, r; a, b; x) vanish identically."""
    p, q, r = pqr
    _check_region(pqr)
    x = to_field(x)
    system = terminating_system(pqr, x)
    solver = _Intersector(_radicand(x))
    components = [None]
    patterns = 0
    for eq in sorted(system.equations, key=_equation_order):
        nxt = []
        for comp in components:
            for f in eq.factors():
                patterns += 1
                nxt += solver.intersect(comp, f)
        components = _dedupe(nxt)
        if not components:
            break
    # Curves can survive where two evaluation points collide; cut them with Phi itself.
    if any(isinstance(c, _Curve) or c is None for c in components):
        for phi_k in phi_symbolic(pqr, x):
            nxt = []
            for comp in components:
                if isinstance(comp, tuple):
                    nxt.append(comp)
                else:
                    nxt += solver.intersect(comp, phi_k)
            components = _dedupe(nxt)
    curves = [c.poly for c in components if isinstance(c, _Curve)]
    if curves:
        log.warning("solution curves survive for %s, x=%s: %s", pqr, format_field(x), curves)
    solutions = []
    approximate = [c for c in components if isinstance(c, tuple) and not all(_exact(v) for v in c)]
    if approximate:
        phis = phi_symbolic(pqr, x)
        for pt in approximate:
            if all(solver._vanishes(phi_k, pt) for phi_k in phis):
                solver.incomplete = True
                log.warning("numeric solution %s for %s, x=%s has no exact form", pt, pqr, format_field(x))
    for comp in components:
        if not isinstance(comp, tuple) or not all(_exact(v) for v in comp):
            continue
        lam = Parameter(p, q, r, comp[0], comp[1], x)
        if not phi_poly(lam).is_zero():
            continue
        solutions.append(Solution(lam, elementary_kind(lam), {"phi_zero": True}))
    if p == q:
        solutions = _dedupe_swap(solutions)
    solutions.sort(key=lambda s: (float(s.lam.a), float(s.lam.b)))
    return SolveResult(solutions, solver.incomplete, curves, patterns)


def _dedupe_swap(solutions: list[Solution]) -> list[Solution]:
    kept: list[Solution] = []
    for s in solutions:
        if any(k.lam.ab == (s.lam.b, s.lam.a) for k in kept):
            continue
        kept.append(s)
    return kept


# -- closed forms ------------------------------------------------------------------------------

def closed_form_R(lam: Parameter) -> RatFunc:
    """R(w) = (1 - x)^(r-p-q-1) (r w)_r / P(w) for a certified solution."""
    p, q, r = lam.int_pqr()
    if not phi_poly(lam).is_zero():
        raise InconsistencyError(f"Phi does not vanish for {lam}")
    P = p_poly(lam).P
    if P.degree != r:
        raise InconsistencyError(f"P has degree {P.degree}, expected {r}")
    scale = (1 - lam.x) ** (r - p - q - 1)
    return RatFunc(pochhammer(Poly.linear(0, r), r), P) * scale


def duplicate(lam: Parameter, R: RatFunc) -> tuple[Parameter, RatFunc]:
    """(p, q, r) -> (2p, 2q, 2r) with R^(w) = R(2w) R(2w+1)."""
    if not all(is_rational(v) and Fraction(v).denominator == 2 for v in (lam.p, lam.q)):
        raise SolutionTypeError("duplication needs half-integer p and q")
    hat = Parameter(2 * lam.p, 2 * lam.q, 2 * lam.r, lam.a, lam.b, lam.x)
    two_w = Poly((0, 2), R.var)
    return hat, R.compose(two_w) * R.compose(Poly((1, 2), R.var))


def _pair_chain(roots: list) -> list | None:
    """Split a multiset of shifts {c} into pairs (c, c+1); return the lower ends."""
    pool = sorted(roots, key=float)
    lower = []
    while pool:
        c = pool.pop(0)
        partner = next((i for i, v in enumerate(pool) if v == c + 1), None)
        if partner is None:
            return None
        pool.pop(partner)
        lower.append(c)
    return lower


def _linear_shifts(poly: Poly, radicand) -> list | None:
    """The c with poly = lc * prod (w + c), or None when not split over the field."""
    shifts = []
    rest = poly
    for root in roots_in_field(poly, radicand=radicand).roots:
        lin = Poly((-root, 1), poly.var)
        while rest.degree >= 1 and (rest % lin).is_zero():
            rest = rest.exquo(lin)
            shifts.append(-root)
    return shifts if rest.degree == 0 else None


def undouble(hat: Parameter, R_hat: RatFunc):
    """Candidate half-integer parameter and R with R(w) R(w+1) = R^(w/2).

    Returns ``(lam, R)`` or None.  The caller still has to certify that R is
    the ratio of lam (a period-two ambiguity is not excluded by algebra).
    """
    P, Q, Rr = hat.int_pqr()
    if P % 2 == 0 or Q % 2 == 0 or Rr % 2:
        return None
    T = R_hat.compose(Poly((0, Fraction(1, 2)), R_hat.var))
    rad = _radicand(hat.x)
    num_shifts = _linear_shifts(T.num, rad)
    den_shifts = _linear_shifts(T.den, rad)
    if num_shifts is None or den_shifts is None:
        return None
    num_low = _pair_chain(num_shifts)
    den_low = _pair_chain(den_shifts)
    if num_low is None or den_low is None:
        return None
    c = field_sqrt(T.num.lc / T.den.lc)
    if c is None:
        return None
    w = Poly.x(R_hat.var)
    num = Poly.const(1, R_hat.var)
    for s in num_low:
        num = num * (w + s)
    den = Poly.const(1, R_hat.var)
    for s in den_low:
        den = den * (w + s)
    R = RatFunc(num, den) * c
    if R * R.shift(1) != T:
        return None
    half = Fraction(1, 2)
    lam = Parameter(half * P, half * Q, Rr // 2, hat.a, hat.b, hat.x)
    return lam, R


# -- search driver -------------------------------------------------------------------------------

def search_triples(rmax: int, rmin: int = 1):
    """Integer triples by increasing r, then p >= q >= 1, with r - p - q even and positive."""
    for r in range(max(rmin, 1), rmax + 1):
        for p in range(1, r):
            for q in range(1, p + 1):
                gap = r - p - q
                if gap > 0 and gap % 2 == 0:
                    yield (p, q, r)


@dataclass
class TripleResult:
    pqr: tuple
    candidates: list
    solutions: list
    incomplete: bool
    notes: list


def search_triple(pqr) -> TripleResult:
    """Run the full pipeline for one integer triple."""
    xs = candidate_x(pqr)
    notes = list(xs.warnings)
    incomplete = not xs.complete
    solutions = []
    for x in xs:
        found = solve_ab(pqr, x)
        if found.incomplete:
            incomplete = True
            notes.append(f"unidentified (a, b) roots at x = {format_field(x)}")
        if found.curves:
            incomplete = True
            notes.append(f"curve components at x = {format_field(x)}")
        for sol in found:
            R = closed_form_R(sol.lam)
            solutions.append((sol, R))
    return TripleResult(tuple(pqr), list(xs), solutions, incomplete, notes)
