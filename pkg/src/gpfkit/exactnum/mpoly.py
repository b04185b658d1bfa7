"""Sparse multivariate polynomials with exact coefficients.

Used for the (a, b) elimination in the solver and for the quadratic-factor
search in :func:`factor_small`.  Terms are stored as ``{exponents: coeff}``.
"""

from __future__ import annotations

from fractions import Fraction

from .poly import Poly, _inverse, resultant
from .quadext import QuadExt, format_field


def _c(v):
    return Fraction(v) if isinstance(v, int) else v


class MPoly:
    __slots__ = ("_t", "_names")

    def __init__(self, terms=None, names=("a", "b")):
        clean = {}
        if terms:
            for exps, c in terms.items():
                if c != 0:
                    clean[tuple(exps)] = _c(c)
        object.__setattr__(self, "_t", clean)
        object.__setattr__(self, "_names", tuple(names))

    def __setattr__(self, name, value):
        raise AttributeError("MPoly is immutable")

    def __reduce__(self):
        return (MPoly, (dict(self._t), self._names))

    # -- constructors ------------------------------------------------------
    @classmethod
    def const(cls, c, names=("a", "b")) -> "MPoly":
        return cls({(0,) * len(names): c}, names)

    @classmethod
    def gen(cls, i: int, names=("a", "b")) -> "MPoly":
        exps = [0] * len(names)
        exps[i] = 1
        return cls({tuple(exps): 1}, names)

    @classmethod
    def affine(cls, const, coeffs, names=("a", "b")) -> "MPoly":
        """const + sum coeffs[i] * var_i."""
        n = len(names)
        terms = {(0,) * n: const}
        for i, c in enumerate(coeffs):
            e = [0] * n
            e[i] = 1
            terms[tuple(e)] = c
        return cls(terms, names)

    # -- accessors -----------------------------------------------------------
    @property
    def names(self) -> tuple:
        return self._names

    @property
    def nvars(self) -> int:
        return len(self._names)

    @property
    def terms(self) -> dict:
        return dict(self._t)

    def is_zero(self) -> bool:
        return not self._t

    def is_const(self) -> bool:
        return all(not any(e) for e in self._t)

    def const_value(self):
        return self._t.get((0,) * self.nvars, Fraction(0))

    def total_degree(self) -> int:
        return max((sum(e) for e in self._t), default=-1)

    def degree_in(self, i: int) -> int:
        return max((e[i] for e in self._t), default=-1)

    def coefficients(self):
        return self._t.values()

    # -- arithmetic ----------------------------------------------------------
    def _lift(self, other):
        if isinstance(other, MPoly):
            if other._names != self._names:
                raise ValueError("MPoly variable sets differ")
            return other
        if isinstance(other, (int, Fraction, QuadExt)):
            return MPoly.const(other, self._names)
        return None

    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        out = dict(self._t)
        for e, c in o._t.items():
            out[e] = out[e] + c if e in out else c
        return MPoly(out, self._names)

    __radd__ = __add__

    def __neg__(self):
        return MPoly({e: -c for e, c in self._t.items()}, self._names)

    def __sub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        out: dict = {}
        for e1, c1 in self._t.items():
            for e2, c2 in o._t.items():
                e = tuple(x + y for x, y in zip(e1, e2))
                v = c1 * c2
                out[e] = out[e] + v if e in out else v
        return MPoly(out, self._names)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            return NotImplemented
        result = MPoly.const(1, self._names)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def scale(self, s) -> "MPoly":
        return MPoly({e: c * s for e, c in self._t.items()}, self._names)

    def __eq__(self, other):
        if isinstance(other, MPoly):
            return self._t == other._t
        if isinstance(other, (int, Fraction, QuadExt)):
            if other == 0:
                return not self._t
            return self.is_const() and self.const_value() == other
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self._t.items()))

    # -- evaluation ------------------------------------------------------------
    def __call__(self, *values):
        total = Fraction(0)
        for e, c in self._t.items():
            t = c
            for v, k in zip(values, e):
                if k:
                    t = t * v ** k
            total = total + t
        return total

    def subs(self, i: int, value) -> "MPoly":
        """Substitute a scalar or an MPoly (same variables) for variable i."""
        out = MPoly({}, self._names)
        if isinstance(value, MPoly):
            powers = {}
            for e, c in self._t.items():
                k = e[i]
                if k not in powers:
                    powers[k] = value ** k
                rest = list(e)
                rest[i] = 0
                out = out + MPoly({tuple(rest): c}, self._names) * powers[k]
            return out
        terms: dict = {}
        for e, c in self._t.items():
            rest = list(e)
            k = rest[i]
            rest[i] = 0
            rest = tuple(rest)
            v = c * value ** k if k else c
            terms[rest] = terms[rest] + v if rest in terms else v
        return MPoly(terms, self._names)

    def to_poly(self, i: int, var: str | None = None) -> Poly:
        """View as univariate in variable i; every other exponent must be zero."""
        coeffs: dict = {}
        for e, c in self._t.items():
            if any(k for j, k in enumerate(e) if j != i):
                raise ValueError("polynomial still depends on other variables")
            coeffs[e[i]] = c
        n = max(coeffs, default=-1) + 1
        return Poly([coeffs.get(k, 0) for k in range(n)], var or self._names[i])

    def coeffs_in(self, i: int) -> list["MPoly"]:
        """Coefficients (as MPolys free of variable i) of powers of variable i."""
        deg = self.degree_in(i)
        parts = [dict() for _ in range(deg + 1)]
        for e, c in self._t.items():
            rest = list(e)
            k = rest[i]
            rest[i] = 0
            parts[k][tuple(rest)] = c
        return [MPoly(p, self._names) for p in parts]

    @classmethod
    def from_poly(cls, p: Poly, i: int, names=("a", "b")) -> "MPoly":
        terms = {}
        for k, c in enumerate(p.coeffs):
            e = [0] * len(names)
            e[i] = k
            terms[tuple(e)] = c
        return cls(terms, names)

    def primitive(self) -> "MPoly":
        """Scale so the leading term (lex order) has coefficient one."""
        if not self._t:
            return self
        lead = max(self._t)
        c = self._t[lead]
        return self if c == 1 else self.scale(_inverse(c))

    def __repr__(self):
        return f"MPoly({self})"

    def __str__(self):
        if not self._t:
            return "0"
        parts = []
        for e in sorted(self._t, reverse=True):
            c = self._t[e]
            mono = "*".join(
                n if k == 1 else f"{n}^{k}" for n, k in zip(self._names, e) if k
            )
            cs = format_field(c)
            if isinstance(c, QuadExt):
                cs = f"({cs})"
            if not mono:
                parts.append(cs)
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{cs}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")


# -- elimination ---------------------------------------------------------------

def _interpolate(xs, ys, var: str) -> Poly:
    """Lagrange interpolation through (xs, ys) as a Poly (Newton form)."""
    n = len(xs)
    coef = list(ys)
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            coef[i] = (coef[i] - coef[i - 1]) / (xs[i] - xs[i - j])
    out = Poly.const(coef[-1], var)
    for i in range(n - 2, -1, -1):
        out = out * Poly((-xs[i], 1), var) + coef[i]
    return out


def bivariate_resultant(f: MPoly, g: MPoly, eliminate: int) -> Poly:
    """Res_{var}(f, g) for two bivariate polynomials, as a Poly in the other variable.

    Computed by evaluating the kept variable at integer points, taking
    univariate resultants, and interpolating.  Points where a leading
    coefficient in the eliminated variable vanishes are skipped.
    """
    if f.nvars != 2:
        raise ValueError("bivariate_resultant needs two variables")
    keep = 1 - eliminate
    df, dg = f.degree_in(eliminate), g.degree_in(eliminate)
    if df <= 0 or dg <= 0:
        raise ValueError("both polynomials must involve the eliminated variable")
    lf = f.coeffs_in(eliminate)[-1]
    lg = g.coeffs_in(eliminate)[-1]
    bound = f.degree_in(keep) * dg + g.degree_in(keep) * df
    xs, ys = [], []
    t = 0
    while len(xs) < bound + 1:
        pt = Fraction(t)
        t = -t if t > 0 else -t + 1
        if lf.subs(keep, pt) == 0 or lg.subs(keep, pt) == 0:
            continue
        fu = f.subs(keep, pt).to_poly(eliminate)
        gu = g.subs(keep, pt).to_poly(eliminate)
        xs.append(pt)
        ys.append(resultant(fu, gu))
    return _interpolate(xs, ys, f.names[keep])


def _content_in(f: MPoly, var: int) -> Poly:
    """gcd of the coefficients of f viewed as a polynomial in ``var``."""
    from .poly import poly_gcd

    other = 1 - var
    g = None
    for c in f.coeffs_in(var):
        if c.is_zero():
            continue
        cp = c.to_poly(other)
        g = cp if g is None else poly_gcd(g, cp)
        if g.is_const():
            break
    return g if g is not None else Poly((), f.names[other])


def bivariate_gcd(f: MPoly, g: MPoly) -> MPoly:
    """Greatest common divisor of two bivariate polynomials (up to a scalar).

    Works over the coefficient field extended by rational functions of the
    first variable, then clears denominators and removes content.
    """
    from .ratfunc import RatFunc
    from .poly import poly_gcd

    if f.is_zero():
        return g.primitive()
    if g.is_zero():
        return f.primitive()
    names = f.names
    if f.is_const() or g.is_const():
        return MPoly.const(1, names)

    # Part depending only on variable 0: gcd of the contents.
    cf, cg = _content_in(f, 1), _content_in(g, 1)
    cont = poly_gcd(cf, cg)

    def as_ratpoly(h: MPoly) -> Poly:
        return Poly(
            [RatFunc.of(c.to_poly(0)) for c in h.coeffs_in(1)], names[1]
        )

    fp, gp = as_ratpoly(f), as_ratpoly(g)
    if len(fp) <= 1 or len(gp) <= 1:
        core = MPoly.const(1, names)
    else:
        a, b = fp, gp
        while not b.is_zero():
            a, b = b, _ratpoly_mod(a, b)
        core = _clear_denominators(a, names)
    if not cont.is_const():
        core = core * MPoly.from_poly(cont, 0, names)
    return core.primitive()


def _ratpoly_mod(a: Poly, b: Poly) -> Poly:
    rem = list(a.coeffs)
    db = len(b) - 1
    inv = b.lc.inverse()
    while len(rem) - 1 >= db and rem:
        f = rem[-1] * inv
        shift = len(rem) - 1 - db
        for j in range(db + 1):
            rem[shift + j] = rem[shift + j] - f * b.coeffs[j]
        rem.pop()
        while rem and rem[-1].is_zero():
            rem.pop()
    return Poly(rem, a.var)


def _clear_denominators(p: Poly, names) -> MPoly:
    from .poly import poly_lcm, poly_gcd

    den = Poly.const(1, names[0])
    for c in p.coeffs:
        den = poly_lcm(den, c.den)
    nums = [(c.num * den.exquo(c.den)) for c in p.coeffs]
    g = None
    for n in nums:
        if n.is_zero():
            continue
        g = n if g is None else poly_gcd(g, n)
    nums = [n.exquo(g) if not n.is_zero() else n for n in nums]
    out = MPoly({}, names)
    for k, n in enumerate(nums):
        for i, c in enumerate(n.coeffs):
            out = out + MPoly({(i, k): c}, names)
    return out


def mpoly_exquo(f: MPoly, g: MPoly) -> MPoly:
    """Exact division of bivariate polynomials (raises if not exact)."""
    names = f.names
    if g.is_const():
        return f.scale(_inverse(g.const_value()))
    # Divide as polynomials in variable 1 over Q(var0), then check.
    from .ratfunc import RatFunc

    fp = Poly([RatFunc.of(c.to_poly(0)) for c in f.coeffs_in(1)], names[1])
    gp = Poly([RatFunc.of(c.to_poly(0)) for c in g.coeffs_in(1)], names[1])
    rem = list(fp.coeffs)
    dg = len(gp) - 1
    quo = [RatFunc.of(0, names[0])] * max(len(rem) - dg, 1)
    inv = gp.lc.inverse()
    while len(rem) - 1 >= dg and rem:
        fac = rem[-1] * inv
        shift = len(rem) - 1 - dg
        quo[shift] = fac
        for j in range(dg + 1):
            rem[shift + j] = rem[shift + j] - fac * gp.coeffs[j]
        rem.pop()
        while rem and rem[-1].is_zero():
            rem.pop()
    if rem:
        raise ArithmeticError("inexact bivariate division")
    out = MPoly({}, names)
    for k, q in enumerate(quo):
        if q.is_zero():
            continue
        if not q.is_poly():
            raise ArithmeticError("inexact bivariate division")
        for i, c in enumerate(q.num.coeffs):
            out = out + MPoly({(i, k): c / q.den.lc}, names)
    if out * g != f:
        raise ArithmeticError("inexact bivariate division")
    return out
