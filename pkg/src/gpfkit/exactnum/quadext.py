"""Exact scalars: rationals and elements of a real quadratic field Q(sqrt(D)).

Rationals are plain :class:`fractions.Fraction` values.  A :class:`QuadExt`
always carries a nonzero irrational part; arithmetic that cancels it returns
a ``Fraction`` so that equality and hashing agree across the two kinds.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import isqrt
from numbers import Rational
from typing import Union


class FieldMismatchError(ValueError):
    """Raised when two quadratic elements with different radicands meet."""


@lru_cache(maxsize=4096)
def squarefree_split(n: int) -> tuple[int, int]:
    """Return ``(k, m)`` with ``n = k*k*m`` and ``m`` square-free (``n > 0``)."""
    if n <= 0:
        raise ValueError("squarefree_split expects a positive integer")
    k, m = 1, 1
    rest = n
    p = 2
    # Trial division up to the cube root; what survives has at most two
    # prime factors, so it is either a perfect square or square-free.
    while p * p * p <= rest:
        if rest % p == 0:
            e = 0
            while rest % p == 0:
                rest //= p
                e += 1
            k *= p ** (e // 2)
            if e % 2:
                m *= p
        p += 1 if p == 2 else 2
    s = isqrt(rest)
    if s * s == rest:
        k *= s
    else:
        m *= rest
    return k, m


def _frac(v) -> Fraction:
    if isinstance(v, Fraction):
        return v
    if isinstance(v, (int, Rational)):
        return Fraction(v)
    raise TypeError(f"expected a rational, got {type(v).__name__}")


class QuadExt:
    """``base + coeff*sqrt(radicand)`` with rational parts and square-free radicand."""

    __slots__ = ("_base", "_coeff", "_radicand")

    def __init__(self, base, coeff, radicand: int):
        coeff = _frac(coeff)
        if coeff == 0:
            raise ValueError("QuadExt needs a nonzero irrational part; use quad()")
        if radicand <= 1 or squarefree_split(radicand)[0] != 1:
            raise ValueError(f"radicand must be square-free and > 1, got {radicand}")
        self._base = _frac(base)
        self._coeff = coeff
        self._radicand = radicand

    def __reduce__(self):
        return (QuadExt, (self._base, self._coeff, self._radicand))

    base = property(lambda self: self._base)
    coeff = property(lambda self: self._coeff)
    radicand = property(lambda self: self._radicand)

    def __setattr__(self, name, value):
        if name in QuadExt.__slots__ and not hasattr(self, name):
            object.__setattr__(self, name, value)
        else:
            raise AttributeError("QuadExt is immutable")

    # -- helpers -----------------------------------------------------------
    def _parts(self, other):
        """Split ``other`` into (base, coeff) compatible with this radicand."""
        if isinstance(other, QuadExt):
            if other._radicand != self._radicand:
                raise FieldMismatchError(
                    f"sqrt({self._radicand}) and sqrt({other._radicand}) mixed")
            return other._base, other._coeff
        if isinstance(other, (int, Fraction)):
            return Fraction(other), Fraction(0)
        return None

    def conj(self) -> "QuadExt":
        return QuadExt(self._base, -self._coeff, self._radicand)

    def norm(self) -> Fraction:
        return self._base ** 2 - self._coeff ** 2 * self._radicand

    # -- arithmetic --------------------------------------------------------
    def __add__(self, other):
        parts = self._parts(other)
        if parts is None:
            return NotImplemented
        return quad(self._base + parts[0], self._coeff + parts[1], self._radicand)

    __radd__ = __add__

    def __neg__(self):
        return QuadExt(-self._base, -self._coeff, self._radicand)

    def __pos__(self):
        return self

    def __sub__(self, other):
        parts = self._parts(other)
        if parts is None:
            return NotImplemented
        return quad(self._base - parts[0], self._coeff - parts[1], self._radicand)

    def __rsub__(self, other):
        parts = self._parts(other)
        if parts is None:
            return NotImplemented
        return quad(parts[0] - self._base, parts[1] - self._coeff, self._radicand)

    def __mul__(self, other):
        parts = self._parts(other)
        if parts is None:
            return NotImplemented
        a, b = parts
        d = self._radicand
        return quad(self._base * a + self._coeff * b * d,
                    self._base * b + self._coeff * a, d)

    __rmul__ = __mul__

    def inverse(self) -> "QuadExt":
        n = self.norm()
        return QuadExt(self._base / n, -self._coeff / n, self._radicand)

    def __truediv__(self, other):
        if isinstance(other, QuadExt):
            return self * other.inverse()
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("division of QuadExt by zero")
            return QuadExt(self._base / other, self._coeff / other, self._radicand)
        return NotImplemented

    def __rtruediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.inverse() * other
        return NotImplemented

    def __pow__(self, n):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        result: FieldElem = Fraction(1)
        base: FieldElem = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    # -- comparison --------------------------------------------------------
    def sign(self) -> int:
        sa = (self._base > 0) - (self._base < 0)
        sb = (self._coeff > 0) - (self._coeff < 0)
        if sa == sb or sa == 0:
            return sb
        # Opposite signs: compare base^2 with coeff^2 * D.
        return sa if self._base ** 2 > self._coeff ** 2 * self._radicand else sb

    def __eq__(self, other):
        if isinstance(other, QuadExt):
            return (self._radicand == other._radicand and self._base == other._base
                    and self._coeff == other._coeff)
        if isinstance(other, (int, Fraction)):
            return False
        return NotImplemented

    def __hash__(self):
        return hash((self._base, self._coeff, self._radicand))

    def _cmp(self, other) -> int:
        diff = self - other
        return field_sign(diff)

    def __lt__(self, other):
        return self._cmp(other) < 0

    def __le__(self, other):
        return self._cmp(other) <= 0

    def __gt__(self, other):
        return self._cmp(other) > 0

    def __ge__(self, other):
        return self._cmp(other) >= 0

    def __bool__(self):
        return True

    def __float__(self):
        return float(self._base) + float(self._coeff) * self._radicand ** 0.5

    def __repr__(self):
        return f"QuadExt({self._base}, {self._coeff}, {self._radicand})"

    def __str__(self):
        return format_field(self)


FieldElem = Union[Fraction, QuadExt]


def quad(base, coeff, radicand: int) -> FieldElem:
    """Build ``base + coeff*sqrt(radicand)``, collapsing to a Fraction when possible."""
    base, coeff = _frac(base), _frac(coeff)
    if coeff == 0:
        return base
    k, m = squarefree_split(radicand)
    if m == 1:
        return base + coeff * k
    return QuadExt(base, coeff * k, m)


def sqrt_int(n) -> FieldElem:
    """Exact square root of a nonnegative rational as a field element."""
    n = _frac(n)
    if n < 0:
        raise ValueError("square root of a negative rational is not real")
    if n == 0:
        return Fraction(0)
    # sqrt(p/q) = sqrt(p*q)/q
    return quad(0, Fraction(1, n.denominator), n.numerator * n.denominator)


def to_field(v) -> FieldElem:
    """Coerce ints and Fractions to Fraction; pass QuadExt through."""
    if isinstance(v, QuadExt):
        return v
    return _frac(v)


def is_rational(v) -> bool:
    return isinstance(v, (int, Fraction))


def radicand_of(*values) -> int | None:
    """Common radicand of the given field elements (None if all rational)."""
    found = None
    for v in values:
        if isinstance(v, QuadExt):
            if found is None:
                found = v.radicand
            elif found != v.radicand:
                raise FieldMismatchError(f"sqrt({found}) and sqrt({v.radicand}) mixed")
    return found


def field_sign(v) -> int:
    if isinstance(v, QuadExt):
        return v.sign()
    return (v > 0) - (v < 0)


def conj(v) -> FieldElem:
    return v.conj() if isinstance(v, QuadExt) else v


def field_sqrt(v) -> FieldElem | None:
    """Square root inside Q or Q(sqrt(D)); ``None`` when it does not exist there.

    A rational input may have its root in a fresh quadratic field; a quadratic
    input must keep its radicand.  Only nonnegative roots are returned.
    """
    if field_sign(v) < 0:
        return None
    if not isinstance(v, QuadExt):
        return sqrt_int(v)
    u, w, d = v.base, v.coeff, v.radicand
    # (c + e*sqrt(d))^2 = c^2 + d e^2 + 2ce sqrt(d); the norm must be a square.
    n2 = u * u - d * w * w
    if n2 < 0:
        return None
    n = _rational_sqrt(n2)
    if n is None:
        return None
    for c2 in ((u + n) / 2, (u - n) / 2):
        c = _rational_sqrt(c2) if c2 >= 0 else None
        if c is None or c == 0:
            continue
        e = w / (2 * c)
        root = quad(c, e, d)
        if field_sign(root) < 0:
            root = -root
        if root * root == v:
            return root
    return None


def _rational_sqrt(v: Fraction) -> Fraction | None:
    if v < 0:
        return None
    a, b = v.numerator, v.denominator
    ra, rb = isqrt(a), isqrt(b)
    if ra * ra == a and rb * rb == b:
        return Fraction(ra, rb)
    return None


def rational_sqrt(v) -> Fraction | None:
    """Rational square root of a rational, or ``None``."""
    return _rational_sqrt(_frac(v))


def field_pow(v, n: int) -> FieldElem:
    if isinstance(v, QuadExt):
        return v ** n
    return _frac(v) ** n


def format_rational(v: Fraction) -> str:
    v = _frac(v)
    if v.denominator == 1:
        return str(v.numerator)
    return f"{v.numerator}/{v.denominator}"


def format_field(v) -> str:
    """Serialize as ``n/d`` or ``a+b*sqrt(D)``."""
    if isinstance(v, QuadExt):
        b = v.coeff
        sign = "-" if b < 0 else "+"
        mag = format_rational(abs(b))
        term = f"sqrt({v.radicand})" if abs(b) == 1 else f"{mag}*sqrt({v.radicand})"
        if v.base == 0:
            return ("-" if b < 0 else "") + term
        return f"{format_rational(v.base)}{sign}{term}"
    return format_rational(v)


def to_mpf(v, ctx):
    """Numeric value of a field element in an mpmath context."""
    if isinstance(v, QuadExt):
        return (ctx.mpf(v.base.numerator) / v.base.denominator
                + ctx.mpf(v.coeff.numerator) / v.coeff.denominator * ctx.sqrt(v.radicand))
    v = _frac(v)
    return ctx.mpf(v.numerator) / v.denominator
