"""Dense univariate polynomials over an exact field.

Coefficients are stored low-to-high.  They are normally Fractions or
:class:`QuadExt` values, but any object with field operations works (the
bivariate gcd uses polynomials whose coefficients are rational functions).
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import reduce
from typing import Iterable, Sequence

from .. import kernels
from .quadext import QuadExt, format_field, quad, radicand_of

NEG_INF = -math.inf


def _coerce(c):
    if isinstance(c, int) and not isinstance(c, bool):
        return Fraction(c)
    if isinstance(c, bool):
        return Fraction(int(c))
    return c


def _is_field_scalar(c) -> bool:
    return isinstance(c, (Fraction, QuadExt))


class Poly:
    """Immutable polynomial; the zero polynomial has no coefficients."""

    __slots__ = ("_c", "_var")

    def __init__(self, coeffs: Iterable = (), var: str = "w"):
        c = [_coerce(v) for v in coeffs]
        while c and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "_c", tuple(c))
        object.__setattr__(self, "_var", var)

    def __setattr__(self, name, value):
        raise AttributeError("Poly is immutable")

    def __reduce__(self):
        return (Poly, (self._c, self._var))

    # -- constructors ------------------------------------------------------
    @classmethod
    def const(cls, c, var: str = "w") -> "Poly":
        return cls((c,), var)

    @classmethod
    def x(cls, var: str = "w") -> "Poly":
        return cls((0, 1), var)

    @classmethod
    def linear(cls, c0, c1, var: str = "w") -> "Poly":
        """The polynomial c1*var + c0."""
        return cls((c0, c1), var)

    @classmethod
    def from_roots(cls, roots: Iterable, var: str = "w") -> "Poly":
        out = cls.const(1, var)
        for r in roots:
            out = out * cls((-r, 1), var)
        return out

    # -- basic accessors ---------------------------------------------------
    @property
    def coeffs(self) -> tuple:
        return self._c

    @property
    def var(self) -> str:
        return self._var

    @property
    def degree(self):
        """Degree, with ``-inf`` for the zero polynomial."""
        return len(self._c) - 1 if self._c else NEG_INF

    def is_zero(self) -> bool:
        return not self._c

    def is_const(self) -> bool:
        return len(self._c) <= 1

    @property
    def lc(self):
        return self._c[-1] if self._c else Fraction(0)

    def coeff(self, i: int):
        return self._c[i] if 0 <= i < len(self._c) else Fraction(0)

    def __len__(self):
        return len(self._c)

    def __iter__(self):
        return iter(self._c)

    def __bool__(self):
        return bool(self._c)

    # -- coercion ----------------------------------------------------------
    def _lift(self, other) -> "Poly | None":
        if isinstance(other, Poly):
            if other._var != self._var and len(other._c) > 1 and len(self._c) > 1:
                raise ValueError(f"variables differ: {self._var} vs {other._var}")
            return other
        if isinstance(other, (int, Fraction, QuadExt)):
            return Poly((other,), self._var)
        if hasattr(other, "__add__") and not isinstance(other, (float, complex)):
            return Poly((other,), self._var)
        return None

    # -- ring operations ---------------------------------------------------
    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        a, b = self._c, o._c
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, v in enumerate(b):
            out[i] = out[i] + v
        return Poly(out, self._var)

    __radd__ = __add__

    def __neg__(self):
        return Poly([-v for v in self._c], self._var)

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
        if not self._c or not o._c:
            return Poly((), self._var)
        if len(o._c) == 1:
            s = o._c[0]
            return Poly([v * s for v in self._c], self._var)
        if len(self._c) == 1:
            s = self._c[0]
            return Poly([s * v for v in o._c], self._var)
        return Poly(_convolve(self._c, o._c), self._var)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            return NotImplemented
        result = Poly.const(1, self._var)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def scale(self, s) -> "Poly":
        return Poly([v * s for v in self._c], self._var)

    def __truediv__(self, other):
        """Division by a scalar (use :meth:`exquo` for exact polynomial division)."""
        if isinstance(other, Poly):
            if other.is_const() and not other.is_zero():
                other = other._c[0]
            else:
                return self.exquo(other)
        return Poly([v / other for v in self._c], self._var)

    def __divmod__(self, other: "Poly"):
        o = self._lift(other)
        if o is None or o.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self._c)
        db = len(o._c) - 1
        if len(rem) - 1 < db:
            return Poly((), self._var), self
        inv = _inverse(o._c[-1])
        quot = [Fraction(0)] * (len(rem) - db)
        for i in range(len(rem) - 1 - db, -1, -1):
            f = rem[i + db] * inv
            quot[i] = f
            if f != 0:
                for j in range(db + 1):
                    rem[i + j] = rem[i + j] - f * o._c[j]
        return Poly(quot, self._var), Poly(rem[:db], self._var)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def exquo(self, other: "Poly") -> "Poly":
        q, r = divmod(self, other)
        if not r.is_zero():
            raise ValueError("polynomial division is not exact")
        return q

    def divides(self, other: "Poly") -> bool:
        return (other % self).is_zero()

    # -- evaluation and transforms ----------------------------------------
    def __call__(self, x):
        acc = None
        for c in reversed(self._c):
            acc = c if acc is None else acc * x + c
        if acc is None:
            return Fraction(0)
        return acc

    def monic(self) -> "Poly":
        if not self._c:
            return self
        lc = self._c[-1]
        if lc == 1:
            return self
        inv = _inverse(lc)
        return Poly([v * inv for v in self._c], self._var)

    def derivative(self) -> "Poly":
        return Poly([i * self._c[i] for i in range(1, len(self._c))], self._var)

    def compose(self, inner: "Poly") -> "Poly":
        """self(inner(var))."""
        acc = Poly((), inner._var)
        for c in reversed(self._c):
            acc = acc * inner + c
        return acc

    def shift(self, h) -> "Poly":
        """The polynomial w -> self(w + h), via Horner on (w + h)."""
        if h == 0 or len(self._c) <= 1:
            return self
        return self.compose(Poly((h, 1), self._var))

    def dilate(self, s) -> "Poly":
        """The polynomial w -> self(s*w)."""
        out = []
        pw = Fraction(1)
        for c in self._c:
            out.append(c * pw)
            pw = pw * s
        return Poly(out, self._var)

    def with_var(self, var: str) -> "Poly":
        return Poly(self._c, var)

    def map_coeffs(self, fn) -> "Poly":
        return Poly([fn(c) for c in self._c], self._var)

    def conj(self) -> "Poly":
        return Poly([c.conj() if isinstance(c, QuadExt) else c for c in self._c], self._var)

    def is_rational(self) -> bool:
        return all(isinstance(c, Fraction) for c in self._c)

    def radicand(self) -> int | None:
        return radicand_of(*self._c)

    # -- comparison / display ---------------------------------------------
    def __eq__(self, other):
        if isinstance(other, Poly):
            return self._c == other._c and (self._var == other._var or len(self._c) <= 1)
        if isinstance(other, (int, Fraction, QuadExt)):
            if other == 0:
                return not self._c
            return len(self._c) == 1 and self._c[0] == other
        return NotImplemented

    def __hash__(self):
        return hash((self._c, self._var if len(self._c) > 1 else None))

    def __repr__(self):
        return f"Poly({[str(c) for c in self._c]}, var={self._var!r})"

    def __str__(self):
        if not self._c:
            return "0"
        terms = []
        for i in range(len(self._c) - 1, -1, -1):
            c = self._c[i]
            if c == 0:
                continue
            cs = format_field(c) if _is_field_scalar(c) else f"({c})"
            if _is_field_scalar(c) and isinstance(c, QuadExt):
                cs = f"({cs})"
            mono = "" if i == 0 else (self._var if i == 1 else f"{self._var}^{i}")
            if not mono:
                terms.append(cs)
            elif c == 1:
                terms.append(mono)
            elif c == -1:
                terms.append("-" + mono)
            else:
                terms.append(f"{cs}*{mono}")
        out = " + ".join(terms)
        return out.replace("+ -", "- ")

    def to_json(self) -> list:
        return [format_field(c) for c in self._c]


# -- helpers ----------------------------------------------------------------

def _inverse(c):
    if isinstance(c, Fraction):
        return 1 / c
    if isinstance(c, QuadExt):
        return c.inverse()
    return 1 / c


def _lcm(a: int, b: int) -> int:
    return a // math.gcd(a, b) * b


def _int_form(coeffs: Sequence[Fraction]) -> tuple[list[int], int]:
    den = reduce(_lcm, (c.denominator for c in coeffs), 1)
    return [c.numerator * (den // c.denominator) for c in coeffs], den


def _split_quad(coeffs, d):
    """Rational and sqrt(d) parts of each coefficient."""
    re, im = [], []
    for c in coeffs:
        if isinstance(c, QuadExt):
            re.append(c.base)
            im.append(c.coeff)
        else:
            re.append(c)
            im.append(Fraction(0))
    return re, im


def _rational_convolve(a, b) -> list[Fraction]:
    ia, da = _int_form(a)
    ib, db = _int_form(b)
    den = da * db
    return [Fraction(v, den) for v in kernels.ipoly_mul(ia, ib)]


def _naive_convolve(a, b) -> list:
    out = [None] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai == 0:
            continue
        for j, bj in enumerate(b):
            t = ai * bj
            out[i + j] = t if out[i + j] is None else out[i + j] + t
    return [Fraction(0) if v is None else v for v in out]


def _convolve(a, b) -> list:
    scalar = all(_is_field_scalar(c) for c in a) and all(_is_field_scalar(c) for c in b)
    if not scalar or len(a) * len(b) < 12:
        return _naive_convolve(a, b)
    d = radicand_of(*a, *b)
    if d is None:
        return _rational_convolve(a, b)
    ar, ai = _split_quad(a, d)
    br, bi = _split_quad(b, d)
    rr = _rational_convolve(ar, br)
    ii = _rational_convolve(ai, bi) if any(ai) and any(bi) else [Fraction(0)] * len(rr)
    ri = _rational_convolve(ar, bi) if any(bi) else [Fraction(0)] * len(rr)
    ir = _rational_convolve(ai, br) if any(ai) else [Fraction(0)] * len(rr)
    return [quad(rr[k] + d * ii[k], ri[k] + ir[k], d) for k in range(len(rr))]


# -- gcd, resultant ----------------------------------------------------------

def poly_gcd(a: Poly, b: Poly) -> Poly:
    """Monic greatest common divisor (zero only when both inputs are zero)."""
    if a.var != b.var and not (a.is_const() or b.is_const()):
        raise ValueError("poly_gcd needs polynomials in the same variable")
    # Surface mixed radicands early rather than deep inside the Euclid loop.
    radicand_of(*a.coeffs, *b.coeffs)
    while not b.is_zero():
        a, b = b, a % b
    return a.monic()


def poly_lcm(a: Poly, b: Poly) -> Poly:
    if a.is_zero() or b.is_zero():
        return Poly((), a.var)
    return (a * b).exquo(poly_gcd(a, b)).monic()


def resultant(f: Poly, g: Poly):
    """Resultant over a field via the Euclidean remainder sequence."""
    if f.is_zero() or g.is_zero():
        return Fraction(0)
    m, n = len(f) - 1, len(g) - 1
    if n == 0:
        return g.lc ** m if m else Fraction(1)
    if m == 0:
        return f.lc ** n if n else Fraction(1)
    res = Fraction(1)
    while True:
        m, n = len(f) - 1, len(g) - 1
        if n == 0:
            return res * g.lc ** m
        r = f % g
        if r.is_zero():
            return Fraction(0)
        k = len(r) - 1
        if (m * n) % 2:
            res = -res
        res = res * g.lc ** (m - k)
        f, g = g, r


def squarefree_decomposition(p: Poly) -> list[tuple[Poly, int]]:
    """Yun's algorithm: ``p = lc * prod f_i**i`` with the f_i square-free, coprime."""
    if p.is_zero() or p.is_const():
        return []
    f = p.monic()
    df = f.derivative()
    g = poly_gcd(f, df)
    b = f.exquo(g)
    c = df.exquo(g)
    d = c - b.derivative()
    out = []
    i = 1
    while not b.is_const():
        a = poly_gcd(b, d)
        if not a.is_const():
            out.append((a, i))
        b = b.exquo(a)
        c = d.exquo(a)
        d = c - b.derivative()
        i += 1
    return out


def squarefree_part(p: Poly) -> Poly:
    if p.is_zero() or p.is_const():
        return p.monic()
    g = poly_gcd(p, p.derivative())
    return p.exquo(g).monic()


def pochhammer(lin: Poly, n: int) -> Poly:
    """(lin)_n = lin (lin+1) ... (lin+n-1) for a polynomial ``lin``."""
    out = Poly.const(1, lin.var)
    for i in range(n):
        out = out * (lin + i)
    return out


def to_integer_primitive(p: Poly) -> list[int]:
    """Primitive integer coefficient list proportional to a rational polynomial."""
    if not p.is_rational():
        raise TypeError("integer form needs rational coefficients")
    ints, _ = _int_form(p.coeffs)
    return kernels.ipoly_primitive(ints)
