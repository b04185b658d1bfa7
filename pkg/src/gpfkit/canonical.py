"""Canonical decomposition of a rational function and gamma-product assembly.

A rational function R(w) is written as S(w+1)/S(w) * d * P(w)/Q(w) with
monic P, Q such that no integer shift of Q shares a root with P.  For a
solution lambda the roots of P and Q then give the gamma shifts of

    f(w) = C * S(w) * d^w * prod Gamma(w + u_i) / prod Gamma(w + v_i).
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction

import mpmath

from .errors import (
    CommensurabilityError,
    InconsistencyError,
    PrecisionError,
    UnsupportedIrrationalError,
)
from .exactnum import (
    Poly,
    RatFunc,
    field_sqrt,
    format_field,
    poly_gcd,
    radicand_of,
    resultant,
    roots_in_field,
    to_field,
    to_mpf,
)
from .hyperseries import VERIFY_PREC, gamma_fn, gauss_2f1, mp_context
from .parsing import evaluate_constant, parse_exact

SNAP_BITS = 200


# -- canonical form ---------------------------------------------------------------

@dataclass(frozen=True)
class CanonicalForm:
    """R(w) = S(w+1)/S(w) * d * P(w)/Q(w) with P, Q monic and strongly coprime."""

    S: RatFunc
    d: object
    P: Poly
    Q: Poly

    def reassemble(self) -> RatFunc:
        var = self.P.var
        shift_ratio = self.S.shift(1) / self.S
        return shift_ratio * RatFunc(self.P, self.Q, var) * self.d

    def to_json(self) -> dict:
        return {
            "S": str(self.S),
            "d": format_field(self.d),
            "P": format_factored_poly(self.P),
            "Q": format_factored_poly(self.Q),
        }


def root_modulus_bound(p: Poly) -> int:
    """An integer strictly above the modulus of every complex root of ``p``."""
    if p.degree < 1:
        return 0
    ctx = mp_context(64)
    lc = abs(to_mpf(p.lc, ctx))
    worst = max((abs(to_mpf(c, ctx)) / lc for c in p.coeffs[:-1]), default=ctx.mpf(0))
    return int(ctx.ceil(worst)) + 2


def shift_window(P: Poly, Q: Poly) -> int:
    """If P(w) and Q(w+j) share a root then |j| is at most this value."""
    return root_modulus_bound(P) + root_modulus_bound(Q)


def _monic_split(R: RatFunc):
    num, den = R.num, R.den
    d = num.lc / den.lc
    return d, num.monic(), den.monic()


def _shared_factor(P: Poly, Q: Poly):
    """First (j, h) with h = gcd(P(w), Q(w + j)) nonconstant, scanning |j| upward."""
    window = shift_window(P, Q)
    for size in range(window + 1):
        for j in ((0,) if size == 0 else (size, -size)):
            h = poly_gcd(P, Q.shift(j))
            if h.degree >= 1:
                return j, h.monic()
    return None


def canonicalize(R: RatFunc) -> CanonicalForm:
    """Canonical triple (S, d, P/Q) of a nonzero rational function.

    Each step removes one common factor h with h(w) | P(w) and h(w - j) | Q(w)
    and moves the telescoping product of shifts of h into S.  Factors are
    gcds over the coefficient field, so a real input never needs complex
    roots and the output stays real.
    """
    if R.is_zero():
        raise ValueError("the zero function has no canonical form")
    var = R.var
    d, P, Q = _monic_split(R)
    S_num = Poly.const(1, var)
    S_den = Poly.const(1, var)
    while True:
        found = _shared_factor(P, Q)
        if found is None:
            break
        j, h = found
        P = P.exquo(h)
        Q = Q.exquo(h.shift(-j))
        if j > 0:
            for t in range(j):
                S_num = S_num * h.shift(t - j)
        else:
            for t in range(-j):
                S_den = S_den * h.shift(t)
    return CanonicalForm(RatFunc(S_num, S_den, var), d, P, Q)


def strongly_coprime(P: Poly, Q: Poly, window: int | None = None) -> bool:
    """Res_w(P(w), Q(w + j)) != 0 for every integer |j| <= window."""
    if P.degree < 1 or Q.degree < 1:
        return True
    if window is None:
        window = shift_window(P, Q)
    return all(resultant(P, Q.shift(j)) != 0 for j in range(-window, window + 1))


# -- gamma products ---------------------------------------------------------------

@dataclass(frozen=True)
class GammaProduct:
    """C * S(w) * d^w * prod Gamma(w + u_i) / prod Gamma(w + v_i).

    The constant C is carried as a closed-form expression when one is known
    (``const_expr``), as an exact field element when it was snapped
    (``constant_exact``), or as a decimal string (``constant_digits``).
    """

    S: RatFunc
    d: object
    u: tuple
    v: tuple
    s: tuple
    r: object
    const_expr: str | None = None
    constant_exact: object = None
    constant_digits: str | None = None
    notes: tuple = field(default=())

    @property
    def m(self) -> int:
        return len(self.u)

    @property
    def n(self) -> int:
        return len(self.v)

    def constant(self, ctx):
        if self.const_expr is not None:
            return evaluate_constant(self.const_expr, ctx)
        if self.constant_exact is not None:
            return to_mpf(self.constant_exact, ctx)
        if self.constant_digits is not None:
            return ctx.mpf(self.constant_digits)
        return ctx.mpf(1)

    def evaluate(self, w, prec: int = VERIFY_PREC):
        ctx = mp_context(prec)
        wv = _num(w, ctx)
        value = self.constant(ctx) * ctx.power(to_mpf(self.d, ctx), wv)
        value *= _ratfunc_at(self.S, wv, ctx)
        for u in self.u:
            value *= gamma_fn(wv + to_mpf(u, ctx), prec)
        for v in self.v:
            value /= gamma_fn(wv + to_mpf(v, ctx), prec)
        return value

    def poles(self) -> list:
        """Real parts of the poles of S and of the numerator gammas' first pole."""
        ctx = mp_context(64)
        out = [-to_mpf(u, ctx) for u in self.u]
        for root in _numeric_roots(self.S.den):
            out.append(root)
        return out

    def to_json(self) -> dict:
        out = {
            "S": str(self.S),
            "d": format_field(self.d),
            "u": [format_field(u) for u in self.u],
            "v": [format_field(v) for v in self.v],
            "s": [int(s) for s in self.s],
            "r": format_field(self.r),
        }
        if self.const_expr is not None:
            out["constant"] = self.const_expr
        elif self.constant_exact is not None:
            out["constant"] = format_field(self.constant_exact)
        elif self.constant_digits is not None:
            out["constant_numeric"] = self.constant_digits
        return out

    @classmethod
    def from_json(cls, data: dict, var: str = "w") -> "GammaProduct":
        from .parsing import parse_ratfunc

        const = data.get("constant")
        expr, exact = None, None
        if const is not None:
            try:
                exact = parse_exact(const)
            except Exception:
                expr = const
        return cls(
            S=parse_ratfunc(data.get("S", "1"), var),
            d=parse_exact(data["d"]),
            u=tuple(parse_exact(t) for t in data["u"]),
            v=tuple(parse_exact(t) for t in data["v"]),
            s=tuple(int(t) for t in data.get("s", ())),
            r=parse_exact(data.get("r", "1")),
            const_expr=expr,
            constant_exact=exact,
            constant_digits=data.get("constant_numeric"),
        )

    def pretty(self) -> str:
        """One line in the layout ``C * S * d^w * Gamma(..)/Gamma(..)``."""

        def gam(shifts):
            return " ".join(f"G(w{_signed(s)})" for s in shifts) or "1"

        if self.const_expr is not None:
            const = self.const_expr
        elif self.constant_exact is not None:
            const = format_field(self.constant_exact)
        elif self.constant_digits is not None:
            const = self.constant_digits[:24] + "..."
        else:
            const = "1"
        S = "" if self.S == RatFunc.of(1, self.S.var) else f" * [{self.S}]"
        return f"{const}{S} * ({format_field(self.d)})^w * {gam(self.u)} / {gam(self.v)}"


def _signed(c) -> str:
    text = format_field(c)
    if text == "0":
        return ""
    return text if text.startswith("-") else "+" + text


def _num(value, ctx):
    if isinstance(value, (int, Fraction)) or hasattr(value, "radicand"):
        return to_mpf(value, ctx)
    return ctx.mpf(value)


def _ratfunc_at(R: RatFunc, wv, ctx):
    def at(p: Poly):
        acc = ctx.mpf(0)
        for c in reversed(p.coeffs):
            acc = acc * wv + to_mpf(c, ctx)
        return acc

    return at(R.num) / at(R.den)


def _numeric_roots(p: Poly) -> list:
    if p.degree < 1:
        return []
    ctx = mp_context(64)
    coeffs = [to_mpf(c, ctx) for c in reversed(p.coeffs)]
    roots = mpmath.polyroots(coeffs, maxsteps=200, extraprec=200)
    return [mpmath.re(z) for z in roots]


def _all_roots(p: Poly, what: str) -> list:
    """Every root of ``p`` with multiplicity; all must be real field elements."""
    roots = []
    rest = p
    while rest.degree >= 1:
        found = roots_in_field(rest)
        if not found.roots:
            raise UnsupportedIrrationalError(
                f"{what} = {p} has roots outside Q and real quadratic fields")
        for root in found.roots:
            while rest.degree >= 1 and rest(root) == 0:
                rest = rest.exquo(Poly((-root, 1), p.var))
                roots.append(root)
    return roots


def _fractional_order(values):
    return tuple(sorted(values, key=lambda t: (float(to_mpf(t, mp_context(64))), str(t))))


def _field_radicands(*values) -> list[int]:
    out = []
    for v in values:
        d = radicand_of(v)
        if d is not None and d not in out:
            out.append(d)
    return out


def snap_constant(value, ctx, radicands=(), bits: int = SNAP_BITS, maxcoeff: int = 10 ** 15):
    """Exact rational, rational * sqrt(rational) or rational + rational * sqrt(D)
    equal to ``value`` within 2^-bits, else None.

    Coefficients are capped so that a chance relation at 2^-bits is implausible.
    """
    tol = ctx.ldexp(abs(value) + 1, -bits)

    def relation(vec):
        rel = ctx.pslq(vec, maxcoeff=maxcoeff, maxsteps=10 ** 5, tol=ctx.ldexp(1, -bits))
        if not rel or not rel[0]:
            return None
        return [Fraction(-c, rel[0]) for c in rel[1:]]

    candidates = []
    rat = relation([value, ctx.mpf(1)])
    if rat is not None:
        candidates.append(rat[0])
    square = relation([value * value, ctx.mpf(1)])
    if square is not None and square[0] > 0:
        root = field_sqrt(square[0])
        if root is not None:
            candidates.extend([root, -root])
    for D in radicands:
        pair = relation([value, ctx.mpf(1), ctx.sqrt(D)])
        if pair is not None:
            candidates.append(to_field(pair[0] + pair[1] * field_sqrt(Fraction(D))))
    for cand in candidates:
        if abs(to_mpf(cand, ctx) - value) <= tol:
            return cand
    return None


def lambda_value(lam, w, prec: int = VERIFY_PREC):
    """f(w) = 2F1(p w + a, q w + b; r w; x) as a SeriesResult."""
    ctx = mp_context(prec + 32)
    wv = _num(w, ctx)
    p, q, r, a, b = (to_mpf(t, ctx) for t in (lam.p, lam.q, lam.r, lam.a, lam.b))
    return gauss_2f1(p * wv + a, q * wv + b, r * wv, lam.x, prec)


def reference_point(poles) -> Fraction:
    """A real point safely to the right of every listed pole."""
    top = max((float(t) for t in poles), default=0.0)
    return Fraction(3, 2) + max(0, math.ceil(top))


def assemble_gpf(lam, cf: CanonicalForm, prec: int = VERIFY_PREC) -> GammaProduct:
    """Gamma product formula for a verified solution from its canonical R(w)."""
    u = _all_roots(cf.P, "P")
    v = _all_roots(cf.Q, "Q")
    u = tuple(-t for t in u)
    v = tuple(-t for t in v)
    if len(u) != len(v):
        raise InconsistencyError(f"{len(u)} numerator gamma factors but {len(v)} denominator ones")
    r = lam.r
    s = []
    for t in u:
        scaled = t * r
        if not (isinstance(scaled, Fraction) and scaled.denominator == 1):
            raise CommensurabilityError(f"u = {format_field(t)} is not an integer multiple of 1/{format_field(r)}")
        s.append(int(scaled))
    u = _fractional_order(u)
    v = _fractional_order(v)
    s = tuple(sorted(s))
    s0 = cf.S.num.degree - cf.S.den.degree
    balance = sum(u, Fraction(0)) - sum(v, Fraction(0)) + s0
    if balance != 0:
        raise InconsistencyError(f"sum u - sum v + s0 = {format_field(balance)}, expected 0")

    bare = GammaProduct(cf.S, cf.d, u, v, s, r)
    ctx = mp_context(prec)
    w0 = reference_point(bare.poles())
    f0 = lambda_value(lam, w0, prec).value
    g0 = bare.evaluate(w0, prec)
    c = ctx.mpf(f0) / g0
    exact = snap_constant(c, ctx, _field_radicands(cf.d, lam.x))
    digits = None if exact is not None else mpmath.nstr(c, int(prec * 0.30), strip_zeros=False)
    return GammaProduct(cf.S, cf.d, u, v, s, r, constant_exact=exact, constant_digits=digits)


@dataclass(frozen=True)
class VerifyReport:
    points: tuple
    errors: tuple
    bounds: tuple

    @property
    def max_error(self):
        return max(self.errors)


def verify_gpf_numeric(lam, gp: GammaProduct, points=(Fraction(3, 2), Fraction(21, 5)),
                       prec: int = VERIFY_PREC, tol=None) -> VerifyReport:
    """Relative discrepancy |f(w) - g(w)| / |f(w)| at each point.

    Raises PrecisionError when the series error bound alone is larger than
    the tolerance, since then no verdict can be certified.
    """
    ctx = mp_context(prec)
    tol = ctx.ldexp(1, -prec // 4) if tol is None else ctx.mpf(tol)
    errors, bounds = [], []
    for w in points:
        series = lambda_value(lam, w, prec)
        f = ctx.mpf(series.value)
        g = gp.evaluate(w, prec)
        bound = ctx.mpf(series.error_bound) / abs(f) + ctx.ldexp(len(gp.u) + len(gp.v) + 4, -prec + 6)
        if bound > tol:
            raise PrecisionError(f"error bound {mpmath.nstr(bound, 5)} at w = {w} exceeds tolerance")
        errors.append(abs(f - g) / abs(f))
        bounds.append(bound)
    return VerifyReport(tuple(points), tuple(errors), tuple(bounds))


# -- formatting --------------------------------------------------------------------

def format_factored_poly(p: Poly) -> str:
    """Monic polynomial as a product of linear factors where possible."""
    if p.degree < 1:
        return format_field(p.coeffs[0]) if p.coeffs else "0"
    try:
        roots = _all_roots(p.monic(), "polynomial")
    except UnsupportedIrrationalError:
        return f"({p})"
    lead = "" if p.lc == 1 else f"{format_field(p.lc)}*"
    var = p.var
    parts = sorted(f"({var}{_signed(-t)})" if t != 0 else var for t in roots)
    return lead + "*".join(parts)


def format_factored(R: RatFunc) -> str:
    """d * prod(w + u_i) / prod(w + v_i), the layout used for closed forms."""
    d, P, Q = _monic_split(R)
    num = format_factored_poly(P)
    den = format_factored_poly(Q)
    text = format_field(d)
    if any(ch in text[1:] for ch in "+-"):
        text = f"({text})"
    if P.degree >= 1:
        text = num if text == "1" else f"{text}*{num}"
    if Q.degree >= 1:
        text += f"/({den})"
    return text


def dumps(gp: GammaProduct) -> str:
    return json.dumps(gp.to_json(), sort_keys=True)
