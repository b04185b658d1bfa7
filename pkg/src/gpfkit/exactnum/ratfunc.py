"""Reduced rational functions num/den with a monic denominator."""

from __future__ import annotations

from fractions import Fraction

from .poly import Poly, _inverse, poly_gcd
from .quadext import QuadExt


class RatFunc:
    __slots__ = ("_num", "_den")

    def __init__(self, num, den=None, var: str | None = None, _reduced: bool = False):
        if not isinstance(num, Poly):
            num = Poly.const(num, var or (den.var if isinstance(den, Poly) else "w"))
        if den is None:
            den = Poly.const(1, num.var)
        elif not isinstance(den, Poly):
            den = Poly.const(den, num.var)
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        if not _reduced:
            if num.is_zero():
                den = Poly.const(1, den.var if not den.is_const() else num.var)
            else:
                g = poly_gcd(num, den)
                if not g.is_const():
                    num = num.exquo(g)
                    den = den.exquo(g)
                lc = den.lc
                if lc != 1:
                    inv = _inverse(lc)
                    num = num.scale(inv)
                    den = den.scale(inv)
        object.__setattr__(self, "_num", num)
        object.__setattr__(self, "_den", den)

    def __setattr__(self, name, value):
        raise AttributeError("RatFunc is immutable")

    def __reduce__(self):
        return (RatFunc, (self._num, self._den, None, True))

    @property
    def num(self) -> Poly:
        return self._num

    @property
    def den(self) -> Poly:
        return self._den

    @property
    def var(self) -> str:
        if not self._num.is_const():
            return self._num.var
        return self._den.var

    @classmethod
    def of(cls, value, var: str = "w") -> "RatFunc":
        if isinstance(value, RatFunc):
            return value
        if isinstance(value, Poly):
            return cls(value, Poly.const(1, value.var), _reduced=True)
        return cls(Poly.const(value, var), Poly.const(1, var), _reduced=True)

    def _lift(self, other) -> "RatFunc | None":
        if isinstance(other, RatFunc):
            return other
        if isinstance(other, (int, Fraction, QuadExt, Poly)):
            return RatFunc.of(other, self.var)
        return None

    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        if self._den == o._den:
            return RatFunc(self._num + o._num, self._den)
        return RatFunc(self._num * o._den + o._num * self._den, self._den * o._den)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(-self._num, self._den, _reduced=True)

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
        if o._den.is_const() and o._num.is_const():
            if o._num.is_zero():
                return RatFunc.of(0, self.var)
            return RatFunc(self._num.scale(o._num.lc), self._den, _reduced=True)
        # Cross-cancel before multiplying to keep degrees small.
        g1 = poly_gcd(self._num, o._den)
        g2 = poly_gcd(o._num, self._den)
        n1 = self._num.exquo(g1) if not g1.is_const() else self._num
        d2 = o._den.exquo(g1) if not g1.is_const() else o._den
        n2 = o._num.exquo(g2) if not g2.is_const() else o._num
        d1 = self._den.exquo(g2) if not g2.is_const() else self._den
        num = n1 * n2
        den = d1 * d2
        lc = den.lc
        if lc != 1:
            inv = _inverse(lc)
            num, den = num.scale(inv), den.scale(inv)
        return RatFunc(num, den, _reduced=True)

    __rmul__ = __mul__

    def inverse(self) -> "RatFunc":
        if self._num.is_zero():
            raise ZeroDivisionError("inverse of the zero rational function")
        return RatFunc(self._den, self._num)

    def __truediv__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        return RatFunc(self._num ** n, self._den ** n, _reduced=True)

    def __call__(self, x):
        d = self._den(x)
        if d == 0:
            raise ZeroDivisionError("evaluation at a pole")
        return self._num(x) / d

    def shift(self, h) -> "RatFunc":
        return RatFunc(self._num.shift(h), self._den.shift(h), _reduced=True)

    def compose(self, inner: Poly) -> "RatFunc":
        return RatFunc(self._num.compose(inner), self._den.compose(inner))

    def is_zero(self) -> bool:
        return self._num.is_zero()

    def is_poly(self) -> bool:
        return self._den.is_const()

    def leading_ratio(self):
        """Limit at infinity when deg num <= deg den (0 if strictly smaller)."""
        dn, dd = len(self._num) - 1, len(self._den) - 1
        if self._num.is_zero() or dn < dd:
            return Fraction(0)
        if dn > dd:
            raise ValueError("rational function is unbounded at infinity")
        return self._num.lc / self._den.lc

    def __eq__(self, other):
        if isinstance(other, RatFunc):
            return self._num == other._num and self._den == other._den
        if isinstance(other, (int, Fraction, QuadExt)):
            return self._den.is_const() and self._num == other
        if isinstance(other, Poly):
            return self._den.is_const() and self._num == other
        return NotImplemented

    def __hash__(self):
        return hash((self._num, self._den))

    def __repr__(self):
        return f"RatFunc({self._num!r}, {self._den!r})"

    def __str__(self):
        if self._den.is_const():
            return str(self._num)
        return f"({self._num})/({self._den})"
