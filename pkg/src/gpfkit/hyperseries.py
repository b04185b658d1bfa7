"""Arbitrary-precision Gauss 2F1 and gamma, plus exact terminating sums.

Floating values are mpmath ``mpf`` numbers bound to a private context per
precision, so no global precision state is touched.  Precision is always an
explicit argument in bits.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb

import mpmath

from . import kernels
from .errors import DivergenceError, PoleError
from .exactnum import Poly, QuadExt, RatFunc, field_sqrt, to_mpf

DEFAULT_PREC = 256
VERIFY_PREC = 426
MIN_PREC = 64
GAMMA_GUARD_BITS = 24
"""Guard bits for :func:`gamma_fn`; the relative error is below 2**(-prec+4)."""


@lru_cache(maxsize=None)
def mp_context(prec: int) -> mpmath.MPContext:
    """A private mpmath context fixed at ``prec`` bits."""
    ctx = mpmath.MPContext()
    ctx.prec = max(int(prec), MIN_PREC)
    return ctx


def big(value, prec: int):
    """Convert an exact or floating value to a BigFloat at ``prec`` bits."""
    ctx = mp_context(prec)
    if isinstance(value, (Fraction, QuadExt, int)):
        return to_mpf(value, ctx)
    return ctx.mpf(value)


def format_big(value, error=None, digits: int = 40) -> str:
    """Decimal string with an optional ``±2^e`` error annotation."""
    ctx = mp_context(max(MIN_PREC, int(digits * 3.33) + 8))
    text = ctx.nstr(ctx.mpf(value), digits)
    if error is None:
        return text
    if error == 0:
        return f"{text} ±0"
    exp = int(ctx.floor(ctx.log(ctx.mpf(error), 2))) + 1
    return f"{text} ±2^{exp}"


@dataclass(frozen=True)
class SeriesResult:
    value: object
    terms_used: int
    error_bound: object

    def __float__(self):
        return float(self.value)


# -- fixed-point helpers --------------------------------------------------------

def _to_fixed(v, wp: int) -> int:
    if isinstance(v, int):
        return v << wp
    if isinstance(v, Fraction):
        return (v.numerator << wp) // v.denominator
    ctx = mp_context(wp + 64)
    val = to_mpf(v, ctx) if isinstance(v, QuadExt) else ctx.mpf(v)
    return int(ctx.floor(ctx.ldexp(val, wp)))


def _near_nonpositive_integer(v, prec: int) -> bool:
    ctx = mp_context(prec + 16)
    val = to_mpf(v, ctx) if isinstance(v, (Fraction, QuadExt, int)) else ctx.mpf(v)
    if val > ctx.mpf(1) / 2:
        return False
    nearest = ctx.nint(val)
    return abs(val - nearest) <= ctx.ldexp(1, -(prec // 2))


def _exact_nonpositive_integer(v) -> bool:
    return isinstance(v, (int, Fraction)) and Fraction(v).denominator == 1 and v <= 0


def gauss_2f1(alpha, beta, gamma, x, prec: int = DEFAULT_PREC,
              maxterms: int = 10 ** 6) -> SeriesResult:
    """Sum 2F1(alpha, beta; gamma; x) for |x| < 1 to ``prec`` bits.

    The error bound combines the geometric tail bound (valid once the term
    ratio is provably below rho < 1) with the accumulated fixed-point
    rounding.  Guard bits grow when cancellation eats into the result.
    """
    ctx = mp_context(prec)
    xv = to_mpf(x, ctx) if isinstance(x, (Fraction, QuadExt, int)) else ctx.mpf(x)
    if abs(xv) >= 1:
        raise DivergenceError("2F1 series needs |x| < 1")
    if not _exact_nonpositive_integer(alpha) and not _exact_nonpositive_integer(beta):
        if _exact_nonpositive_integer(gamma) or _near_nonpositive_integer(gamma, prec):
            raise PoleError(f"gamma = {gamma} is a non-positive integer")
    elif _exact_nonpositive_integer(gamma):
        # Terminating numerator: only a pole if gamma is hit before the numerator.
        stop = min(-int(v) for v in (alpha, beta) if _exact_nonpositive_integer(v))
        if -int(gamma) < stop:
            raise PoleError(f"gamma = {gamma} is hit before the series terminates")
    if xv == 0:
        return SeriesResult(ctx.mpf(1), 1, ctx.mpf(0))

    guard = 32 + int(prec).bit_length()
    for _ in range(8):
        wp = prec + guard
        s, k, last, err_ulps, status = kernels.hyp2f1_fixed(
            _to_fixed(alpha, wp), _to_fixed(beta, wp), _to_fixed(gamma, wp),
            _to_fixed(x, wp), wp, prec + 4, maxterms,
        )
        if status == 2:
            raise DivergenceError(f"no convergence within {maxterms} terms")
        wctx = mp_context(wp)
        value = wctx.ldexp(wctx.mpf(s), -wp)
        # Parameter rounding perturbs every term by O(k) ulps; count it with the
        # kernel's own rounding bound.
        rounding = wctx.ldexp(wctx.mpf(err_ulps + 2 * (k + 1) ** 2), -wp)
        tail = wctx.mpf(0)
        if status == 0:
            kk = wctx.mpf(k)
            a_v, b_v, c_v = (big(v, wp) for v in (alpha, beta, gamma))
            rho = abs(big(x, wp)) * max((a_v + kk) / (c_v + kk), 1) * max((b_v + kk) / (kk + 1), 1)
            t_last = abs(wctx.ldexp(wctx.mpf(last), -wp))
            tail = t_last * rho / (1 - rho)
        # The final rounding to ``prec`` bits is part of the reported bound.
        bound = rounding + tail + abs(value) * wctx.ldexp(1, -prec)
        if value != 0 and bound <= abs(value) * wctx.ldexp(1, -prec + 2):
            return SeriesResult(ctx.mpf(value), max(k, 1), ctx.mpf(bound))
        # Lost bits to cancellation: widen the guard and retry.
        if value == 0:
            guard *= 2
        else:
            lost = int(wctx.log(bound / abs(value), 2)) + prec + 8
            guard += max(lost, guard // 2)
    return SeriesResult(ctx.mpf(value), max(k, 1), ctx.mpf(bound))


# -- gamma ----------------------------------------------------------------------

@lru_cache(maxsize=None)
def _bernoulli_coeffs(count: int) -> tuple:
    """B_{2k} / (2k (2k-1)) as exact fractions, k = 1..count."""
    out = []
    for k in range(1, count + 1):
        num, den = mpmath.bernfrac(2 * k)
        out.append(Fraction(num, den) / (2 * k * (2 * k - 1)))
    return tuple(out)


def stirling_threshold(prec: int) -> int:
    """Argument beyond which the Stirling series reaches ``prec`` bits.

    The smallest Stirling term is about exp(-2 pi z), so z must exceed
    prec * ln 2 / (2 pi); 32 is kept as a floor.
    """
    return max(32, math.ceil(prec * math.log(2) / (2 * math.pi)) + 8)


def _log_gamma_stirling(z, ctx):
    """ln Gamma(z) for large real z by the Stirling series with remainder check."""
    total = (z - ctx.mpf(1) / 2) * ctx.log(z) - z + ctx.log(2 * ctx.pi) / 2
    zinv2 = 1 / (z * z)
    power = 1 / z
    eps = ctx.ldexp(1, -ctx.prec)
    count = 8
    k = 0
    while True:
        coeffs = _bernoulli_coeffs(count)
        while k < count:
            c = coeffs[k]
            term = ctx.mpf(c.numerator) / c.denominator * power
            total += term
            k += 1
            power *= zinv2
            if abs(term) < eps:
                return total
        count *= 2
        if count > 4096:
            raise ArithmeticError("Stirling series did not reach the working precision")


def gamma_fn(z, prec: int = DEFAULT_PREC):
    """Gamma(z) for real z, relative error below 2**(-prec + 4).

    Arguments below 1/2 use the reflection formula; others are shifted up to
    :func:`stirling_threshold` and evaluated by the Stirling series.
    """
    wp = prec + GAMMA_GUARD_BITS
    ctx = mp_context(wp)
    if isinstance(z, (Fraction, int)):
        if Fraction(z).denominator == 1 and z <= 0:
            raise PoleError(f"Gamma has a pole at {z}")
        zv = to_mpf(Fraction(z), ctx)
    elif isinstance(z, QuadExt):
        zv = to_mpf(z, ctx)
    else:
        zv = ctx.mpf(z)
    if _near_nonpositive_integer(zv, prec):
        raise PoleError(f"Gamma has a pole near {ctx.nstr(zv, 10)}")
    out_ctx = mp_context(prec)
    if zv < ctx.mpf(1) / 2:
        # Gamma(z) Gamma(1 - z) = pi / sin(pi z)
        reflected = gamma_fn(1 - zv, wp)
        return out_ctx.mpf(ctx.pi / (ctx.sinpi(zv) * reflected))
    if zv == ctx.nint(zv) and zv < 64:
        return out_ctx.mpf(math.factorial(int(zv) - 1))
    threshold = stirling_threshold(wp)
    shift = 0 if zv >= threshold else int(ctx.ceil(threshold - zv))
    denom = ctx.mpf(1)
    for i in range(shift):
        denom *= zv + i
    value = ctx.exp(_log_gamma_stirling(zv + shift, ctx)) / denom
    return out_ctx.mpf(value)


# -- exact terminating sums ------------------------------------------------------

def _poch(base, n: int):
    out = 1
    for i in range(n):
        out = out * (base + i)
    return out


def terminating_F(k: int, beta, gamma, x):
    """sum_{j=0}^{k} (-1)^j C(k,j) (beta)_j (gamma+j)_{k-j} x^j, exactly.

    Works over any commutative ring: Fractions, quadratic elements, or
    polynomial types for symbolic arguments.
    """
    if k < 0:
        raise ValueError("k must be non-negative")
    total = 0
    for j in range(k + 1):
        term = _poch(beta, j) * _poch(gamma + j, k - j) * (x ** j if j else 1)
        coeff = comb(k, j) * (-1) ** j
        total = total + term * coeff
    if isinstance(total, int):
        return Fraction(total)
    return total


def _is_symbolic(v) -> bool:
    return isinstance(v, (Poly, RatFunc))


def appell_f3(alpha1: int, alpha2: int, beta1: int, beta2: int, gamma, u, v):
    """Appell F3 with integer numerator parameters forcing termination.

    In each summation index one of the two numerator parameters must be a
    non-positive integer.
    """
    def span(p1, p2):
        stops = [-p for p in (p1, p2) if p <= 0]
        if not stops:
            raise ValueError("F3 series does not terminate")
        return min(stops)

    m_max, n_max = span(alpha1, beta1), span(alpha2, beta2)
    symbolic = _is_symbolic(gamma)
    total = 0
    for m in range(m_max + 1):
        for n in range(n_max + 1):
            num = Fraction(_poch(alpha1, m) * _poch(beta1, m) * _poch(alpha2, n) * _poch(beta2, n),
                           math.factorial(m) * math.factorial(n))
            if num == 0:
                continue
            den = _poch(gamma, m + n)
            if symbolic:
                den = RatFunc.of(den) if not isinstance(den, int) else RatFunc.of(den, "w")
            elif den == 0:
                raise PoleError("(gamma)_{m+n} vanishes at the evaluation point")
            term = (u ** m) * (v ** n) * num
            total = total + term / den
    return total


def appell_f3_terminating(i: int, j: int, w, x):
    """S_ij(w; x) of the dihedral family, exact in Q(sqrt(1 - x)).

    ``w`` may be a scalar or the polynomial variable (giving a RatFunc).
    """
    root = field_sqrt(1 - (x if isinstance(x, QuadExt) else Fraction(x)))
    if root is None or root == 0:
        raise ValueError("sqrt(1 - x) must be a nonzero element of a real quadratic field")
    u = -(1 - root) / (2 * root)
    v = (1 - root) / 2
    f3 = appell_f3(i + j, j - i, 1 - i - j, 1 + i - j, w, u, v)
    return f3 * root ** (-(i + j))


def dihedral_rhs(i: int, j: int, w, x, prec: int = DEFAULT_PREC):
    """Numeric S_ij(w;x) * ((1 + sqrt(1-x))/2)^(1-w) at scalar w."""
    ctx = mp_context(prec)
    s_val = appell_f3_terminating(i, j, w, x)
    root = ctx.sqrt(1 - big(x, prec))
    return to_mpf(s_val, ctx) * ((1 + root) / 2) ** (1 - big(w, prec))
