"""Asymptotics, residues, pole progressions, arithmetic classification,
deficiency and the Bailey family.

Everything here works on a Parameter ``lam = (p, q, r; a, b; x)`` with
f(w) = 2F1(p w + a, q w + b; r w; x).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd

from .canonical import GammaProduct, _all_roots, canonicalize, lambda_value
from .errors import (
    CoprimalityError,
    InconsistencyError,
    RegionError,
    SolutionTypeError,
    UnsupportedIrrationalError,
)
from .exactnum import (
    RatFunc,
    field_sqrt,
    format_field,
    is_rational,
    to_mpf,
)
from .exactnum.quadext import QuadExt
from .gpfsearch import Parameter, apply_symmetry, closed_form_R, undouble
from .hyperseries import DEFAULT_PREC, dihedral_rhs, gauss_2f1, mp_context


def _is_int(v) -> bool:
    return is_rational(v) and Fraction(v).denominator == 1


def _is_half_int(v) -> bool:
    return is_rational(v) and Fraction(v).denominator == 2


def _require_hstrip(lam: Parameter):
    if not lam.in_hstrip:
        raise RegionError(f"{lam} is outside 0 < p < r, q < r, 0 <= x < 1")


# -- asymptotics ------------------------------------------------------------------------

@dataclass(frozen=True)
class AsymptoticProfile:
    t0: object
    t0_exact: object = None
    Phi_t0: object = None
    phi2_t0: object = None
    eta_t0: object = None
    A: object = None
    B: object = None


def _phi1_coefficients(lam: Parameter):
    p, q, r, x = lam.p, lam.q, lam.r, lam.x
    return -(r - q) * x, (p - q) * x + r, -p


def stationary_point(lam: Parameter, prec: int = DEFAULT_PREC) -> AsymptoticProfile:
    """The root t0 in (0, 1) of phi1(t) = -(r-q) x t^2 + ((p-q) x + r) t - p."""
    _require_hstrip(lam)
    c2, c1, c0 = _phi1_coefficients(lam)
    disc = c1 * c1 - 4 * c2 * c0
    root = field_sqrt(disc)
    exact = None
    if root is not None:
        # The smaller root lies left of the axis of the concave parabola.
        exact = (-c1 + root) / (2 * c2)
    ctx = mp_context(prec)
    if exact is not None:
        t0 = to_mpf(exact, ctx)
    else:
        a2, a1, a0 = (to_mpf(c, ctx) for c in (c2, c1, c0))
        t0 = (-a1 + ctx.sqrt(a1 * a1 - 4 * a2 * a0)) / (2 * a2)
    if not 0 < t0 < 1:
        raise InconsistencyError(f"stationary point {t0} outside (0, 1)")
    return AsymptoticProfile(t0=t0, t0_exact=exact)


def asymptotic_constants(lam: Parameter, prec: int = DEFAULT_PREC) -> AsymptoticProfile:
    """A and B with f(w) ~ A * B^w as w -> +infinity."""
    base = stationary_point(lam, prec)
    ctx = mp_context(prec)
    p, q, r, a, b, x = (to_mpf(v, ctx) for v in (lam.p, lam.q, lam.r, lam.a, lam.b, lam.x))
    t = base.t0
    Phi = t ** p * (1 - t) ** (r - p) * (1 - x * t) ** (-q)
    eta = t ** (a - 1) * (1 - t) ** (-a - 1) * (1 - x * t) ** (-b)
    phi2 = (-2 * (r - q) * x * t + (p - q) * x + r) / (t * (1 - t) * (1 - x * t))
    A = (r - p) ** (a + ctx.mpf(1) / 2) / (p ** (a - ctx.mpf(1) / 2) * ctx.sqrt(r)) * eta / ctx.sqrt(phi2)
    B = r ** r / (p ** p * (r - p) ** (r - p)) * Phi
    return AsymptoticProfile(t0=t, t0_exact=base.t0_exact, Phi_t0=Phi, phi2_t0=phi2,
                             eta_t0=eta, A=A, B=B)


def _power_split(base, exponent):
    """(integer part, base for a half exponent or 1) of base^exponent."""
    e = Fraction(exponent)
    if e.denominator not in (1, 2):
        return None
    whole = math.floor(e)
    return base ** whole, (base if e - whole else 1)


def dilation(lam: Parameter):
    """Exact d = r^r / sqrt(p^p |q|^q (r-p)^(r-p) (r-q)^(r-q) x^r (1-x)^(p+q-r)).

    Returns None when the value does not lie in Q or a real quadratic field
    (or the exponents are not half-integers); use :func:`dilation_value` then.
    """
    p, q, r, x = lam.p, lam.q, lam.r, lam.x
    if not all(is_rational(v) for v in (p, q, r)):
        return None
    pieces = [(p, p), (abs(q), q), (r - p, r - p), (r - q, r - q), (x, r), (1 - x, p + q - r)]
    whole, half = Fraction(1), Fraction(1)
    for base, exponent in pieces:
        if base == 0:
            if exponent == 0 or base is abs(q):
                continue
            return None
        split = _power_split(base, exponent)
        if split is None:
            return None
        whole, half = whole * split[0], half * split[1]
    inner = field_sqrt(half)
    if inner is None or (isinstance(inner, QuadExt) and isinstance(whole, QuadExt)
                         and inner.radicand != whole.radicand):
        return None
    try:
        radicand = whole * inner
    except Exception:
        return None
    root = field_sqrt(radicand)
    top = _power_split(r, r)
    if root is None or top is None or top[1] != 1:
        return None
    return top[0] / root


def dilation_value(lam: Parameter, prec: int = DEFAULT_PREC):
    """Numeric dilation constant."""
    ctx = mp_context(prec)
    p, q, r, x = (to_mpf(v, ctx) for v in (lam.p, lam.q, lam.r, lam.x))
    absq = abs(q) ** q if q != 0 else ctx.mpf(1)
    inner = p ** p * absq * (r - p) ** (r - p) * (r - q) ** (r - q) * x ** r * (1 - x) ** (p + q - r)
    return r ** r / ctx.sqrt(inner)


# -- residues and pole progressions -----------------------------------------------------

def _pochhammer_value(base, n: int):
    out = 1
    for i in range(n):
        out = out * (base + i)
    return out


@dataclass(frozen=True)
class ResidueRecord:
    j: int
    w_j: Fraction
    C_j: object
    a_j: object
    b_j: object
    value: object
    error_bound: object
    j0: int

    @property
    def holomorphic(self) -> bool:
        """Exact C_j == 0 from j0 on, a numeric decision below it."""
        if self.j >= self.j0:
            return self.C_j == 0
        return self.C_j == 0 or abs(self.value) <= self.error_bound


def residue_j0(lam: Parameter) -> int:
    """Smallest j0 with a_j, b_j > 0 for every j >= j0."""
    p, q, r, a, b = lam.p, lam.q, lam.r, lam.a, lam.b
    ctx = mp_context(64)
    bound = max(to_mpf(-r * (a + 1) / (r - p), ctx), to_mpf(-r * (b + 1) / (r - q), ctx), 0)
    return int(ctx.floor(bound)) + 1


def residue_coefficient(lam: Parameter, j: int):
    """C_j = (-1)^j / r * (p w_j + a)_{j+1} (q w_j + b)_{j+1} / (j! (j+1)!) * x^(j+1)."""
    p, q, r, a, b, x = lam.p, lam.q, lam.r, lam.a, lam.b, lam.x
    w_j = Fraction(-j) / r
    num = _pochhammer_value(p * w_j + a, j + 1) * _pochhammer_value(q * w_j + b, j + 1)
    sign = -1 if j % 2 else 1
    return sign * num * x ** (j + 1) / (r * math.factorial(j) * math.factorial(j + 1))


def residue_at(lam: Parameter, j: int, prec: int = DEFAULT_PREC) -> ResidueRecord:
    """Residue of f at w_j = -j/r as C_j * 2F1(a_j, b_j; j+2; x)."""
    if j < 0:
        raise ValueError("j must be nonnegative")
    p, q, r, a, b = lam.p, lam.q, lam.r, lam.a, lam.b
    w_j = Fraction(-j) / r
    a_j = p * w_j + j + a + 1
    b_j = q * w_j + j + b + 1
    C = residue_coefficient(lam, j)
    ctx = mp_context(prec)
    if C == 0:
        value, bound = ctx.mpf(0), ctx.mpf(0)
    else:
        series = gauss_2f1(a_j, b_j, Fraction(j + 2), lam.x, prec)
        Cv = to_mpf(C, ctx)
        value = Cv * series.value
        bound = abs(Cv) * series.error_bound
    return ResidueRecord(j, w_j, C, a_j, b_j, value, bound, residue_j0(lam))


def residue_limit(lam: Parameter, j: int, eps=Fraction(1, 10 ** 20), prec: int = DEFAULT_PREC):
    """Numeric oracle: (w - w_j) f(w) at w = w_j + eps."""
    w = Fraction(-j) / lam.r + eps
    series = lambda_value(lam, w, prec)
    ctx = mp_context(prec)
    return to_mpf(eps, ctx) * series.value


@dataclass(frozen=True)
class Progression:
    start: int
    step: int

    def members(self, limit: int) -> list[int]:
        return list(range(self.start, limit + 1, self.step)) if self.start <= limit else []

    def __contains__(self, j: int) -> bool:
        return j >= self.start and (j - self.start) % self.step == 0


def solve_progression(lambda_: int, mu: int, nu) -> Progression | None:
    """Nonnegative j with nu + lambda*i = mu*j for some 0 <= i <= j."""
    if not 1 <= mu < lambda_:
        raise ValueError("need 1 <= mu < lambda")
    if gcd(lambda_, mu) != 1:
        raise CoprimalityError(f"gcd({lambda_}, {mu}) != 1")
    if not _is_int(nu):
        return None
    nu = int(nu)
    # Members satisfy mu*j >= nu and (lambda - mu) j >= -nu.
    lower = max(0, -(-nu // mu), -(nu // (lambda_ - mu)) if nu < 0 else 0)
    for j in range(lower, lower + lambda_ + 1):
        i, rem = divmod(mu * j - nu, lambda_)
        if rem == 0 and 0 <= i <= j:
            return Progression(j, lambda_)
    raise InconsistencyError("no member found within one period")


def _first_common(J1: Progression, J2: Progression) -> Progression | None:
    g = gcd(J1.step, J2.step)
    if (J1.start - J2.start) % g:
        return None
    step = J1.step * J2.step // g
    j = max(J1.start, J2.start)
    while not (j in J1 and j in J2):
        j += 1
    return Progression(j, step)


@dataclass(frozen=True)
class PoleStructure:
    rp: int | None
    p1: int | None
    a1: object
    p2: int | None
    jp: Progression | None
    rq: int | None
    q1: int | None
    b1: object
    q2: int | None
    jq: Progression | None
    rpq: int | None
    jpq: Progression | None
    case: str
    density: Fraction
    r: object = 1

    @property
    def hol_density(self):
        """Density of the holomorphy points W_hol = r * delta(J)."""
        return self.r * self.density

    def J_contains(self, j: int) -> bool:
        return any(P is not None and j in P for P in (self.jp, self.jq))


def _ratio_data(num, r, shift):
    """(r_num, n1, n2, shift1) for num/r = n1/r_num, or Nones when not applicable."""
    if not (is_rational(num) and is_rational(r)) or num <= 0:
        return None, None, None, None
    ratio = Fraction(num) / Fraction(r)
    n1, rn = ratio.numerator, ratio.denominator
    if not 1 <= n1 < rn:
        return None, None, None, None
    n2 = pow(n1, -1, rn)
    return rn, n1, n2, rn * shift


def pole_structure(lam: Parameter) -> PoleStructure:
    """Arithmetic-progression description of the holomorphy points of f."""
    _require_hstrip(lam)
    r = lam.r
    if lam.q == 0 and _is_int(lam.b) and lam.b <= 0:
        jq = Progression(int(-lam.b), 1)
        return PoleStructure(None, None, None, None, None, None, None, None, None, jq,
                             None, None, "elementary1", Fraction(1), r)
    rp, p1, p2, a1 = _ratio_data(lam.p, r, lam.a)
    rq, q1, q2, b1 = _ratio_data(lam.q, r, lam.b)
    c1 = rp is not None and _is_int(a1)
    c2 = rq is not None and _is_int(b1)
    jp = solve_progression(rp, p1, a1) if c1 else None
    jq = solve_progression(rq, q1, b1) if c2 else None
    rpq = gcd(rp, rq) if (rp and rq) else None
    jpq = None
    if c1 and c2:
        a2, b2 = (int(a1) * p2) % rp, (int(b1) * q2) % rq
        meet = (a2 - b2) % rpq == 0
        if meet:
            jpq = _first_common(jp, jq)
            case = "V"
            density = Fraction(1, rp) + Fraction(1, rq) - Fraction(rpq, rp * rq)
        else:
            case = "IV"
            density = Fraction(1, rp) + Fraction(1, rq)
    elif c1:
        case, density = "III", Fraction(1, rp)
    elif c2:
        case, density = "II", Fraction(1, rq)
    else:
        case, density = "I", Fraction(0)
    return PoleStructure(rp, p1, a1 if c1 else None, p2, jp, rq, q1, b1 if c2 else None, q2, jq,
                         rpq, jpq, case, density, r)


# -- elementary solutions -----------------------------------------------------------------

SYMMETRIES = ("sym0", "sym1", "sym2", "sym3")


def symmetry_orbit(lam: Parameter) -> list[Parameter]:
    """All parameters reachable from lam by the four symmetries."""
    seen = {lam: None}
    frontier = [lam]
    while frontier:
        nxt = []
        for cur in frontier:
            for name in SYMMETRIES:
                try:
                    img = apply_symmetry(name, cur)
                except (RegionError, ZeroDivisionError):
                    continue
                if img not in seen:
                    seen[img] = None
                    nxt.append(img)
        frontier = nxt
    return list(seen)


@dataclass(frozen=True)
class TypeClassification:
    kind: str
    alphas: tuple = ()
    betas: tuple = ()
    details: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "alphas": [format_field(a) for a in self.alphas],
            "betas": [format_field(b) for b in self.betas],
            "details": self.details,
        }


def _elementary_pattern(lam: Parameter) -> str | None:
    if lam.q == 0 and _is_int(lam.b) and lam.b <= 0:
        return "elementary1"
    if (lam.p == lam.q and lam.p > 0 and lam.r == 2 * lam.p
            and ((_is_int(lam.a) and _is_half_int(lam.b)) or (_is_half_int(lam.a) and _is_int(lam.b)))):
        return "elementary2"
    return None


def elementary_check(lam: Parameter) -> TypeClassification:
    """elementary1 / elementary2 when some symmetry image matches, else 'non-elementary'."""
    for image in symmetry_orbit(lam):
        kind = _elementary_pattern(image)
        if kind is not None:
            return TypeClassification(kind, details={"witness": str(image)})
    return TypeClassification("non-elementary")


def dihedral_error(i: int, j: int, w, x, prec: int = DEFAULT_PREC):
    """Relative gap between 2F1(w/2+i, (w-1)/2+j; w; x) and its dihedral closed form."""
    ctx = mp_context(prec)
    wv = to_mpf(Fraction(w), ctx) if is_rational(w) else ctx.mpf(w)
    lhs = gauss_2f1(wv / 2 + i, (wv - 1) / 2 + j, wv, x, prec).value
    rhs = dihedral_rhs(i, j, Fraction(w) if is_rational(w) else w, x, prec)
    rhs = ctx.mpf(rhs) if not isinstance(rhs, (Fraction, QuadExt)) else to_mpf(rhs, ctx)
    return abs(lhs - rhs) / abs(lhs)


# -- sine-sine classifier ---------------------------------------------------------------------

@dataclass(frozen=True)
class KappaAffine:
    """c0 + c1 * kappa with kappa = arctan(sqrt(3/5)) / pi (irrational)."""

    c0: Fraction
    c1: Fraction = Fraction(0)

    @staticmethod
    def of(v) -> "KappaAffine":
        if isinstance(v, KappaAffine):
            return v
        if is_rational(v):
            return KappaAffine(Fraction(v))
        raise UnsupportedIrrationalError(f"{v!r} is not in Q + Q*kappa")

    def __add__(self, other):
        o = KappaAffine.of(other)
        return KappaAffine(self.c0 + o.c0, self.c1 + o.c1)

    __radd__ = __add__

    def __neg__(self):
        return KappaAffine(-self.c0, -self.c1)

    def __sub__(self, other):
        return self + (-KappaAffine.of(other))

    def __rsub__(self, other):
        return KappaAffine.of(other) - self

    def __mul__(self, k):
        k = Fraction(k)
        return KappaAffine(self.c0 * k, self.c1 * k)

    __rmul__ = __mul__

    def is_integer(self) -> bool:
        return self.c1 == 0 and self.c0.denominator == 1

    def mod1_equals(self, other) -> bool:
        return (self - other).is_integer()

    def value(self, ctx):
        kappa = ctx.atan(ctx.sqrt(ctx.mpf(3) / 5)) / ctx.pi
        return ctx.mpf(self.c0.numerator) / self.c0.denominator + ctx.mpf(self.c1.numerator) / self.c1.denominator * kappa

    def floor(self) -> int:
        if self.c1 == 0:
            return math.floor(self.c0)
        ctx = mp_context(256)
        return int(ctx.floor(self.value(ctx)))

    def __str__(self):
        if self.c1 == 0:
            return format_field(self.c0)
        return f"{format_field(self.c0)}+{format_field(self.c1)}*kappa"


KAPPA = KappaAffine(Fraction(0), Fraction(1))


def _in_half_plus_z(v: Fraction) -> bool:
    return (Fraction(v) - Fraction(1, 2)).denominator == 1


def _sine_cases(p: Fraction, q: Fraction, al: KappaAffine, be: KappaAffine) -> list[int]:
    """Cases (1)-(7) of the sine-sine constancy classification that apply."""
    out = []
    pint, qint = p.denominator == 1, q.denominator == 1
    quarter = (Fraction(1, 4), Fraction(-1, 4))
    if (pint and al.is_integer()) or (qint and be.is_integer()):
        out.append(1)
    if pint and qint and not al.is_integer() and not be.is_integer():
        out.append(2)
    if pint and _in_half_plus_z(q) and not al.is_integer() and any(be.mod1_equals(t) for t in quarter):
        out.append(3)
    if _in_half_plus_z(p) and qint and any(al.mod1_equals(t) for t in quarter) and not be.is_integer():
        out.append(4)
    if _in_half_plus_z(p) and _in_half_plus_z(q) and (
            (al + be - Fraction(1, 2)).is_integer() or (al - be - Fraction(1, 2)).is_integer()):
        out.append(5)
    signs = (1, -1)
    for ep in signs:
        for eq in signs:
            if (p - Fraction(ep, 3)).denominator != 1 or (q - Fraction(eq, 3)).denominator != 1:
                continue
            for eps in signs:
                for delta in (0, 1, -1):
                    if al.mod1_equals(ep * (Fraction(delta, 3) + eps * KAPPA)) and \
                            be.mod1_equals(eq * (Fraction(delta, 3) - eps * KAPPA)):
                        out.append(6)
    for ep in signs:
        for eq in signs:
            if (p - Fraction(ep, 4)).denominator != 1 or (q - Fraction(eq, 4)).denominator != 1:
                continue
            for eps in signs:
                for delta in (1, -1, 3, -3):
                    if al.mod1_equals(ep * (Fraction(delta, 8) + Fraction(eps, 4))) and \
                            be.mod1_equals(eq * (Fraction(delta, 8) - Fraction(eps, 4))):
                        out.append(7)
    return sorted(set(out))


@dataclass(frozen=True)
class SineSineReport:
    constant: bool
    cases: tuple
    nonzero: bool
    parity_constant: bool
    verdict: str

    def to_json(self) -> dict:
        return {"constant": self.constant, "cases": list(self.cases), "nonzero": self.nonzero,
                "parity_constant": self.parity_constant, "verdict": self.verdict}


def parity_constant(p, q, r, alpha, beta) -> bool:
    """[p j + alpha] + [q j + beta] + r j has one parity for all integers j."""
    al, be = KappaAffine.of(alpha), KappaAffine.of(beta)
    p, q = Fraction(p), Fraction(q)
    period = 2 * (p.denominator * q.denominator // gcd(p.denominator, q.denominator))
    parities = {((al + p * j).floor() + (be + q * j).floor() + int(r) * j) % 2 for j in range(period)}
    return len(parities) == 1


def sine_sine_classify(p, q, r, alpha, beta) -> SineSineReport:
    """Decide constancy of sin(pi{pj+alpha}) sin(pi{qj+beta}) and the parity condition."""
    p, q = Fraction(p), Fraction(q)
    if p == 0 or q == 0:
        raise ValueError("p and q must be nonzero")
    if not _is_int(r) or r <= 0:
        raise ValueError("r must be a positive integer")
    al, be = KappaAffine.of(alpha), KappaAffine.of(beta)
    cases = _sine_cases(p, q, al, be)
    constant = bool(cases)
    nonzero = not al.is_integer() and not be.is_integer()
    parity = parity_constant(p, q, r, al, be)
    verdict = "ruled-out"
    if constant and nonzero and parity:
        if p.denominator == 1 and q.denominator == 1:
            verdict = "typeA"
        elif _in_half_plus_z(p) and _in_half_plus_z(q):
            sign = 1 if (p + q + int(r)) % 2 == 0 else -1
            if not (al - sign * be - Fraction(1, 2)).is_integer():
                raise InconsistencyError("parity holds but the type B relation fails")
            verdict = "typeB"
        else:
            raise InconsistencyError(f"constant nonzero sequence with parity in case {cases}")
    return SineSineReport(constant, tuple(cases), nonzero, parity, verdict)


def sine_sine_sequence(p, q, alpha, beta, count: int = 200) -> list[float]:
    """The first ``count`` terms in double precision (an independent check)."""
    ctx = mp_context(64)
    al, be = KappaAffine.of(alpha).value(ctx), KappaAffine.of(beta).value(ctx)
    out = []
    for j in range(count):
        s = ctx.sinpi(ctx.frac(float(p) * j + al)) * ctx.sinpi(ctx.frac(float(q) * j + be))
        out.append(float(s))
    return out


# -- deficiency ---------------------------------------------------------------------------------

@dataclass(frozen=True)
class DeficiencyReport:
    N: int
    case: str
    rp: int
    rq: int
    a_prime: object
    b_prime: object
    rho: int | None = None
    condition_i: bool | None = None
    condition_ii: bool | None = None

    def to_json(self) -> dict:
        out = {"N": self.N, "case": self.case, "r_p": self.rp, "r_q": self.rq,
               "a_prime": format_field(self.a_prime), "b_prime": format_field(self.b_prime)}
        if self.rho is not None:
            out.update(rho=self.rho, condition_i=self.condition_i, condition_ii=self.condition_ii)
        return out


def deficiency_case(lam: Parameter):
    """Case I-V from (C1) r_p a in Z, (C2) r_q b in Z, (C3) a' == b' mod gcd(r_p, r_q)."""
    pr = Fraction(lam.p) / Fraction(lam.r)
    qr = Fraction(lam.q) / Fraction(lam.r)
    p1, rp = pr.numerator, pr.denominator
    q1, rq = qr.numerator, qr.denominator
    a_prime = pow(p1, -1, rp) * rp * lam.a if rp > 1 else rp * lam.a
    b_prime = pow(q1, -1, rq) * rq * lam.b if rq > 1 else rq * lam.b
    c1 = _is_int(rp * lam.a)
    c2 = _is_int(rq * lam.b)
    if c1 and c2:
        case = "V" if (int(a_prime) - int(b_prime)) % gcd(rp, rq) == 0 else "IV"
    elif c1:
        case = "III"
    elif c2:
        case = "II"
    else:
        case = "I"
    return case, rp, rq, a_prime, b_prime


def deficiency(lam: Parameter, kind: str) -> DeficiencyReport:
    """N = r - m from the type A / type B tables."""
    if not lam.in_square:
        raise RegionError(f"{lam} is outside the square region")
    case, rp, rq, a_prime, b_prime = deficiency_case(lam)
    r = int(lam.r)
    if kind == "typeA":
        p, q = int(lam.p), int(lam.q)
        table = {
            "I": 0,
            "II": gcd(q, r),
            "III": gcd(p, r),
            "IV": gcd(p, r) + gcd(q, r),
            "V": gcd(p, r) + gcd(q, r) - gcd(gcd(p, q), r),
        }
        return DeficiencyReport(table[case], case, rp, rq, a_prime, b_prime)
    if kind == "typeB":
        if case in ("II", "III", "V"):
            raise InconsistencyError(f"type B solution in case {case}, which cannot occur")
        if case == "I":
            return DeficiencyReport(0, case, rp, rq, a_prime, b_prime)
        two_p, two_q = int(2 * lam.p), int(2 * lam.q)
        N = gcd(two_p, r)
        if gcd(two_q, r) != N:
            raise InconsistencyError("type B case IV needs gcd(2p, r) = gcd(2q, r)")
        rho = r // N
        diff = int(a_prime) - int(b_prime)
        return DeficiencyReport(N, case, rp, rq, a_prime, b_prime, rho,
                                diff % (2 * rho) != 0, diff % rho == 0)
    raise SolutionTypeError(f"deficiency needs kind typeA or typeB, got {kind!r}")


# -- Bailey family --------------------------------------------------------------------------------

def bailey_parameter(j: int, k: int, c) -> Parameter:
    if not (isinstance(j, int) and isinstance(k, int) and j > k >= 1):
        raise ValueError("need integers j > k >= 1")
    return Parameter(j - k, -(j - k), j + k, c, 1 - c, Fraction(1, 2))


def bailey_chi(j: int, k: int) -> Fraction:
    return Fraction(2 * gcd(j, k), j + k)


def bailey_null_deficiency(j: int, k: int, c) -> bool:
    """True iff c lies outside Z*chi and 1 + Z*chi."""
    chi = bailey_chi(j, k)
    if not is_rational(c):
        return True
    return not (_is_int(Fraction(c) / chi) or _is_int((Fraction(c) - 1) / chi))


def bailey_gpf(j: int, k: int, c) -> GammaProduct:
    """The explicit gamma product for 2F1((j-k)w+c, -(j-k)w+1-c; (j+k)w; 1/2)."""
    bailey_parameter(j, k, c)
    if is_rational(c):
        c = Fraction(c)
    n = j + k
    u = tuple(Fraction(nu, n) for nu in range(n))
    v = tuple(c / (2 * j) + Fraction(nu, j) for nu in range(j)) + \
        tuple((1 - c) / (2 * k) + Fraction(nu, k) for nu in range(k))
    d = Fraction(n ** n, 2 ** n * j ** j * k ** k)
    cs = format_field(c)
    const = f"sqrt(2)*{k}^(({cs})/2)/({j}^((({cs})-1)/2)*{n}^(1/2))"
    null = bailey_null_deficiency(j, k, c)
    note = "null-deficiency" if null else "cancellation"
    return GammaProduct(RatFunc.of(1), d, u, v, tuple(range(n)), n, const_expr=const, notes=(note,))


def integer_coincidences(gp: GammaProduct) -> list[tuple]:
    """Pairs (u_i, v_j) with u_i - v_j an integer."""
    return [(u, v) for u in gp.u for v in gp.v if _is_int(u - v)]


# -- classification -------------------------------------------------------------------------------

def _certify_ratio(lam: Parameter, R: RatFunc, prec: int = 192) -> bool:
    ctx = mp_context(prec)
    w = Fraction(7, 3)
    f0 = lambda_value(lam, w, prec).value
    f1 = lambda_value(lam, w + 1, prec).value
    Rv = to_mpf(R.num(w), ctx) / to_mpf(R.den(w), ctx)
    return abs(f1 / f0 - Rv) <= ctx.ldexp(abs(Rv), -prec // 2)


def solution_ratio(lam: Parameter) -> RatFunc:
    """R(w) = f(w+1)/f(w) for a solution coming from contiguous relations.

    Integral triples use the truncated-product certificate directly; a
    half-integer triple goes through its duplication (2p, 2q, 2r).
    """
    if lam.is_integral():
        for cand in (lam, lam.swapped()):
            try:
                return closed_form_R(cand)
            except (InconsistencyError, RegionError, ValueError):
                continue
        raise SolutionTypeError(f"{lam} has no closed form from contiguous relations")
    if all(_is_half_int(v) or _is_int(v) for v in lam.pqr) and _is_int(lam.r):
        hat = Parameter(2 * lam.p, 2 * lam.q, 2 * lam.r, lam.a, lam.b, lam.x)
        R_hat = solution_ratio(hat)
        found = undouble(hat, R_hat)
        if found is not None and _certify_ratio(lam, found[1]):
            return found[1]
    raise SolutionTypeError(f"{lam} is neither integral nor a certified duplication")


def gamma_shifts(R: RatFunc) -> tuple[tuple, tuple]:
    cf = canonicalize(R)
    u = tuple(sorted((-t for t in _all_roots(cf.P, "P")), key=lambda t: to_mpf(t, mp_context(64))))
    v = tuple(sorted((-t for t in _all_roots(cf.Q, "Q")), key=lambda t: to_mpf(t, mp_context(64))))
    return u, v


def classify(lam: Parameter) -> TypeClassification:
    """Elementary kind, or type A / type B / violation for a non-elementary solution."""
    elem = elementary_check(lam)
    if elem.kind != "non-elementary":
        return elem
    R = solution_ratio(lam)
    u, v = gamma_shifts(R)
    alphas = tuple(lam.p * t - lam.a for t in u)
    betas = tuple(lam.q * t - lam.b for t in u)
    details = {"m": len(u), "u": [format_field(t) for t in u], "v": [format_field(t) for t in v]}
    noninteger = all(not _is_int(t) for t in alphas + betas)
    kind = "violation"
    if _is_int(lam.p) and _is_int(lam.q) and (lam.p + lam.q + lam.r) % 2 == 0 and noninteger:
        kind = "typeA"
    elif _is_half_int(lam.p) and _is_half_int(lam.q) and noninteger:
        sign = 1 if _is_int(lam.p + lam.q + lam.r) and (lam.p + lam.q + lam.r) % 2 == 0 else -1
        if all(_in_half_plus_z(al - sign * be) for al, be in zip(alphas, betas)):
            kind = "typeB"
    if all(is_rational(t) for t in alphas + betas) and _is_int(lam.r):
        reports = [sine_sine_classify(lam.p, lam.q, lam.r, al, be).verdict
                   for al, be in zip(alphas, betas)]
        details["sine_sine"] = reports
        if kind in ("typeA", "typeB") and any(rep != kind for rep in reports):
            raise InconsistencyError(f"sine-sine verdicts {reports} disagree with {kind}")
    if kind in ("typeA", "typeB") and lam.in_square:
        report = deficiency(lam, kind)
        details["deficiency"] = report.to_json()
        details["m_plus_N"] = len(u) + report.N
    return TypeClassification(kind, alphas, betas, details)
