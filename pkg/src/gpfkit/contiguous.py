"""Gauss contiguous step matrices, their lattice-path products, principal
parts, and the spectral polynomials Delta, X, Y.

With the affine substitution (alpha, beta; gamma) = (p w + a, q w + b; r w)
and z = x, every matrix entry is a reduced rational function of w.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import DegenerateSubstitutionError, HypothesisError, InconsistencyError, RegionError
from .exactnum import Poly, RatFunc, pochhammer


class Mat2:
    """Immutable 2x2 matrix over any commutative ring (entries in row order)."""

    __slots__ = ("rows",)

    def __init__(self, a11, a12, a21, a22):
        object.__setattr__(self, "rows", ((a11, a12), (a21, a22)))

    def __setattr__(self, name, value):
        raise AttributeError("Mat2 is immutable")

    @classmethod
    def identity(cls, one=1):
        return cls(one, one * 0, one * 0, one)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def entries(self):
        return [self.rows[0][0], self.rows[0][1], self.rows[1][0], self.rows[1][1]]

    def __mul__(self, other):
        if isinstance(other, Mat2):
            (a, b), (c, d) = self.rows
            (e, f), (g, h) = other.rows
            return Mat2(a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h)
        return Mat2(*(v * other for v in self.entries()))

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative matrix powers are not supported")
        out = Mat2.identity(self.rows[0][0] ** 0)
        base = self
        while n:
            if n & 1:
                out = out * base
            n >>= 1
            if n:
                base = base * base
        return out

    def det(self):
        (a, b), (c, d) = self.rows
        return a * d - b * c

    def map(self, fn) -> "Mat2":
        return Mat2(*(fn(v) for v in self.entries()))

    def __eq__(self, other):
        if not isinstance(other, Mat2):
            return NotImplemented
        return all(x == y for x, y in zip(self.entries(), other.entries()))

    def __hash__(self):
        return hash(tuple(self.entries()))

    def __repr__(self):
        return f"Mat2({', '.join(str(v) for v in self.entries())})"


def _rf(value, var: str) -> RatFunc:
    return RatFunc.of(value, var)


# -- step matrices ------------------------------------------------------------------

def _check_pair(pqr, ab, x):
    if x == 0 or x == 1:
        raise DegenerateSubstitutionError(f"x = {x} makes the contiguous matrices undefined")


def affine_params(pqr, ab, offset=(0, 0, 0)) -> tuple[Poly, Poly, Poly]:
    """(alpha, beta, gamma) = (p w + a, q w + b, r w) shifted by ``offset``."""
    p, q, r = pqr
    a, b = ab
    return (
        Poly.linear(a + offset[0], p),
        Poly.linear(b + offset[1], q),
        Poly.linear(offset[2], r),
    )


def generic_step(i: int, alpha, beta, gamma, z) -> Mat2:
    """Step matrix A_i for symbolic or numeric (alpha, beta; gamma) and z.

    Arguments must support field arithmetic (RatFunc, Fraction, ...).
    """
    if i == 1:
        den = (alpha + 1) * (z - 1)
        return Mat2(alpha ** 0, beta * z / gamma, -gamma / den, (gamma - alpha - 1 - beta * z) / den)
    if i == 2:
        den = (beta + 1) * (z - 1)
        return Mat2(alpha ** 0, alpha * z / gamma, -gamma / den, (gamma - beta - 1 - alpha * z) / den)
    if i == 3:
        den = (gamma - alpha) * (gamma - beta)
        return Mat2(
            gamma * (gamma - alpha - beta) / den,
            -alpha * beta * (z - 1) / den,
            gamma * (gamma + 1) / (den * z),
            gamma * (gamma + 1) * (z - 1) / (den * z),
        )
    raise ValueError("step index must be 1, 2 or 3")


def step_matrix(i: int, pqr, ab, x, offset=(0, 0, 0)) -> Mat2:
    """Contiguous matrix raising parameter i, with entries in Q(w) (or Q(sqrt D)(w))."""
    _check_pair(pqr, ab, x)
    alpha, beta, gamma = (RatFunc.of(v) for v in affine_params(pqr, ab, offset))
    needed = {1: [alpha + 1, gamma], 2: [beta + 1, gamma], 3: [gamma - alpha, gamma - beta]}[i]
    if any(v.is_zero() for v in needed):
        raise DegenerateSubstitutionError("a step-matrix denominator vanishes identically")
    return generic_step(i, alpha, beta, gamma, RatFunc.of(x))


def step_det(i: int, pqr, ab, x, offset=(0, 0, 0)) -> RatFunc:
    """The determinant of a step matrix, by its closed form."""
    alpha, beta, gamma = (RatFunc.of(v) for v in affine_params(pqr, ab, offset))
    if i == 1:
        return (gamma - alpha - 1) / ((alpha + 1) * (x - 1))
    if i == 2:
        return (gamma - beta - 1) / ((beta + 1) * (x - 1))
    return gamma * (gamma + 1) * (x - 1) / ((gamma - alpha) * (gamma - beta) * x)


# -- lattice-path products -------------------------------------------------------------

@dataclass(frozen=True)
class ContigProduct:
    A: Mat2
    pqr: tuple
    ab: tuple
    x: object


def standard_path(pqr) -> list[int]:
    """All A_3 steps first, then A_2, then A_1 (in order of application)."""
    p, q, r = pqr
    return [3] * r + [2] * q + [1] * p


def path_product(pqr, ab, x, path) -> Mat2:
    """Product A_{i_k}(...) ... A_{i_1}(a) along the given step sequence."""
    offset = [0, 0, 0]
    out = None
    for i in path:
        step = step_matrix(i, pqr, ab, x, tuple(offset))
        out = step if out is None else step * out
        offset[i - 1] += 1
    return out


def contig_product(pqr, ab, x) -> ContigProduct:
    """A(w) with f(w+1) = A(w) f(w), along the standard path."""
    p, q, r = pqr
    if not (1 <= p <= r and 1 <= q <= r):
        raise HypothesisError("contig_product needs 1 <= p <= r and 1 <= q <= r")
    return ContigProduct(path_product(pqr, ab, x, standard_path(pqr)), tuple(pqr), tuple(ab), x)


def _linear(c0, c1) -> Poly:
    return Poly.linear(c0, c1)


def det_formula(pqr, ab, x) -> RatFunc:
    """Closed form of det A(w) as a reduced rational function."""
    p, q, r = pqr
    a, b = ab
    num = pochhammer(_linear(0, r), r) * pochhammer(_linear(1, r), r)
    den = (
        pochhammer(_linear(a + 1, p), p)
        * pochhammer(_linear(b + 1, q), q)
        * pochhammer(_linear(-a, r - p), r - p)
        * pochhammer(_linear(-b, r - q), r - q)
    )
    const = Fraction(1) / x ** r * (x - 1) ** (r - p - q) if r - p - q >= 0 else \
        Fraction(1) / x ** r / (x - 1) ** (p + q - r)
    return RatFunc(num, den) * const


def phi_entries(cp: ContigProduct) -> dict[str, Poly]:
    """The polynomial parts phi_ij(w) of A(w) after removing the known factors."""
    p, q, r = cp.pqr
    a, b = cp.ab
    d_small = pochhammer(_linear(a + 1, p), p - 1) * pochhammer(_linear(b + 1, q), q - 1)
    d_big = pochhammer(_linear(a + 1, p), p) * pochhammer(_linear(b + 1, q), q)
    outer = pochhammer(_linear(-a, r - p), r - p) * pochhammer(_linear(-b, r - q), r - q)
    gw = _linear(0, r)
    layout = {
        "11": (cp.A[0, 0], pochhammer(gw, r), d_small),
        "12": (cp.A[0, 1], pochhammer(gw + 1, r - 1), d_small),
        "21": (cp.A[1, 0], pochhammer(gw, r + 1), d_big),
        "22": (cp.A[1, 1], pochhammer(gw + 1, r), d_big),
    }
    out = {}
    for key, (entry, lead, den) in layout.items():
        value = entry * RatFunc(outer * den, lead)
        if not value.is_poly():
            raise InconsistencyError(f"phi_{key} is not a polynomial")
        out[key] = value.num
    return out


# -- principal parts and spectral polynomials ------------------------------------------

def principal_matrices(pqr, var: str = "z") -> tuple[Mat2, Mat2, Mat2]:
    """B_1, B_2, B_3: w -> infinity limits of the step matrices, over Q(z)."""
    p, q, r = (Fraction(v) for v in pqr)
    z = RatFunc.of(Poly.x(var))
    one = RatFunc.of(1, var)
    b1 = Mat2(one, z * (q / r), -one * r / ((z - 1) * p), (-z * q + (r - p)) / ((z - 1) * p))
    b2 = Mat2(one, z * (p / r), -one * r / ((z - 1) * q), (-z * p + (r - q)) / ((z - 1) * q))
    scale = 1 / ((r - p) * (r - q))
    b3 = Mat2(
        one * (r * (r - p - q) * scale),
        -(z - 1) * (p * q * scale),
        one * (r * r * scale) / z,
        (z - 1) * (r * r * scale) / z,
    )
    return b1, b2, b3


@dataclass(frozen=True)
class SpectralPolys:
    Delta: Poly
    X: Poly
    Y: Poly
    pqr: tuple


def delta_poly(pqr, var: str = "z") -> Poly:
    p, q, r = pqr
    return Poly(((r * r), -2 * ((p + q) * r - 2 * p * q), (p - q) ** 2), var)


def _qr_mul(u, v, delta):
    """Multiply u0 + u1 s by v0 + v1 s modulo s^2 = delta."""
    return (u[0] * v[0] + u[1] * v[1] * delta, u[0] * v[1] + u[1] * v[0])


def _qr_pow(u, n, delta, var):
    out = (Poly.const(1, var), Poly((), var))
    while n:
        if n & 1:
            out = _qr_mul(out, u, delta)
        n >>= 1
        if n:
            u = _qr_mul(u, u, delta)
    return out


def spectral_polys(pqr, var: str = "z") -> SpectralPolys:
    """X and Y with Z_+ = X + Y sqrt(Delta), by exponentiation in Q[z][s]/(s^2 - Delta)."""
    p, q, r = pqr
    if min(p, q, r) <= 0 or p + q > r:
        raise RegionError("spectral_polys needs positive p, q, r with p + q <= r")
    delta = delta_poly(pqr, var)
    one = Poly.const(1, var)
    f1 = (Poly((r, p - q), var), one)
    f2 = (Poly((r, q - p), var), one)
    f3 = (Poly((-r, 2 * r - p - q), var), -one)
    z_plus = _qr_mul(
        _qr_mul(_qr_pow(f1, p, delta, var), _qr_pow(f2, q, delta, var), delta),
        _qr_pow(f3, r - p - q, delta, var),
        delta,
    )
    return SpectralPolys(delta, z_plus[0], z_plus[1], (p, q, r))


def conjugate_norm_product(pqr, var: str = "z") -> Poly:
    """Z_+ Z_- computed factor by factor from the norms of the three bases."""
    p, q, r = pqr
    delta = delta_poly(pqr, var)
    n1 = Poly((r, p - q), var) ** 2 - delta
    n2 = Poly((r, q - p), var) ** 2 - delta
    n3 = Poly((-r, 2 * r - p - q), var) ** 2 - delta
    return n1 ** p * n2 ** q * n3 ** (r - p - q)


def principal_closed_form(pqr, var: str = "z") -> Mat2:
    """c [[X - (r-(p+q)z) Y, 2(pq/r) z(z-1) Y], [-2 r Y, X + (r-(p+q)z) Y]]."""
    p, q, r = pqr
    sp = spectral_polys(pqr, var)
    z = Poly.x(var)
    lin = Poly((r, -(p + q)), var)
    c = RatFunc(
        Poly.const(Fraction(r ** r, 2 ** r * p ** p * q ** q * (r - p) ** (r - p) * (r - q) ** (r - q)), var),
        z ** r,
    )
    return Mat2(
        c * (sp.X - lin * sp.Y),
        c * (sp.Y * z * (z - 1) * Fraction(2 * p * q, r)),
        c * (sp.Y * (-2 * r)),
        c * (sp.X + lin * sp.Y),
    )


def principal_product(pqr, var: str = "z") -> Mat2:
    """B_1^p B_2^q B_3^r, checked against its closed form."""
    p, q, r = pqr
    b1, b2, b3 = principal_matrices(pqr, var)
    prod = (b1 ** p) * (b2 ** q) * (b3 ** r)
    if prod != principal_closed_form(pqr, var):
        raise InconsistencyError("principal product disagrees with its closed form")
    return prod


def leading_limit(m: Mat2) -> Mat2:
    """Entrywise limit w -> infinity of a matrix of rational functions."""
    return m.map(lambda e: e.leading_ratio())
