"""Reference solutions used as fixtures and by ``gpfkit verify --builtin``.

Each entry records lambda = (p, q, r; a, b; x) and its closed form
R(w) = d * prod(w + u) / prod(w + v).  Gamma-product entries additionally
carry the constant in front of d^w as a numeric-constant expression.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction as F

from .exactnum import Poly, RatFunc, quad

SQRT2 = quad(0, 1, 2)
SQRT3 = quad(0, 1, 3)
SQRT5 = quad(0, 1, 5)


@dataclass(frozen=True)
class RatioEntry:
    """A solution with R(w) = d * prod(w + u_i) / prod(w + v_i)."""

    p: object
    q: object
    r: object
    a: object
    b: object
    x: object
    d: object
    u: tuple
    v: tuple
    label: str = ""

    @property
    def lam(self):
        from .gpfsearch import Parameter

        return Parameter(self.p, self.q, self.r, self.a, self.b, self.x)

    def R(self, var: str = "w") -> RatFunc:
        w = Poly.x(var)
        num = Poly.const(1, var)
        for c in self.u:
            num = num * (w + c)
        den = Poly.const(1, var)
        for c in self.v:
            den = den * (w + c)
        return RatFunc(num, den) * self.d


@dataclass(frozen=True)
class GpfEntry:
    """f(w) = C * d^w * prod Gamma(w + u) / prod Gamma(w + v); C as an expression."""

    p: object
    q: object
    r: object
    a: object
    b: object
    x: object
    d: object
    u: tuple
    v: tuple
    const: str
    label: str = ""

    @property
    def lam(self):
        from .gpfsearch import Parameter

        return Parameter(self.p, self.q, self.r, self.a, self.b, self.x)

    def gamma_product(self):
        from .canonical import GammaProduct

        return GammaProduct(
            S=RatFunc.of(1), d=self.d, u=tuple(self.u), v=tuple(self.v),
            s=(), r=self.r, const_expr=self.const,
        )


TABLE2 = (
    RatioEntry(1, 1, 4, 0, F(1, 4), F(8, 9), F(4, 3), (F(2, 4), F(3, 4)), (F(2, 3), F(7, 12)), "T2.1"),
    RatioEntry(1, 1, 4, F(1, 2), F(1, 4), F(8, 9), F(4, 3), (0, F(3, 4)), (F(7, 12), F(1, 6)), "T2.2"),
    RatioEntry(1, 1, 4, 0, F(1, 2), F(8, 9), F(4, 3), (F(1, 4), F(3, 4)), (F(1, 3), F(2, 3)), "T2.3"),
    RatioEntry(1, 1, 6, 0, F(1, 2), F(4, 5), F(3 ** 6, 5 ** 4),
               (F(1, 6), F(2, 6), F(4, 6), F(5, 6)), (F(1, 5), F(4, 5), F(3, 10), F(7, 10)), "T2.4"),
    RatioEntry(1, 1, 6, F(2, 3), F(1, 6), F(4, 5), F(3 ** 6, 5 ** 4),
               (0, F(2, 6), F(3, 6), F(5, 6)), (F(17, 30), F(23, 30), F(1, 15), F(4, 15)), "T2.5"),
    RatioEntry(2, 2, 6, 0, F(1, 3), F(3, 4) * (3 - SQRT3), 3 * SQRT3 / 2,
               (F(2, 6), F(5, 6)), (F(3, 4), F(5, 12)), "T2.6"),
    RatioEntry(3, 1, 6, 0, F(1, 6), 4 * (SQRT5 - 2), F(27, 125) * (5 + 2 * SQRT5),
               (F(3, 6), F(5, 6)), (F(17, 30), F(23, 30)), "T2.7"),
    RatioEntry(3, 1, 6, 0, F(1, 2), 4 * (SQRT5 - 2), F(27, 125) * (5 + 2 * SQRT5),
               (F(1, 6), F(5, 6)), (F(3, 10), F(7, 10)), "T2.8"),
    RatioEntry(4, 2, 8, 0, F(1, 4), 4 * (3 * SQRT2 - 4), F(4, 27) * (17 + 12 * SQRT2),
               (F(3, 8), F(7, 8)), (F(11, 24), F(19, 24)), "T2.9"),
)

TABLE3 = (
    RatioEntry(F(1, 2), F(1, 2), 3, 0, F(1, 2), F(4, 5), F(3 ** 3, 5 ** 2),
               (F(1, 3), F(2, 3)), (F(2, 5), F(3, 5)), "T3.1"),
    RatioEntry(F(1, 2), F(1, 2), 3, F(2, 3), F(1, 6), F(4, 5), F(3 ** 3, 5 ** 2),
               (0, F(2, 3)), (F(2, 15), F(8, 15)), "T3.2"),
)

# Table 3 row -> the (1,1,6) row of TABLE2 obtained by duplication.
DUPLICATION_PAIRS = ((TABLE3[0], TABLE2[3]), (TABLE3[1], TABLE2[4]))

TABLE1 = (
    GpfEntry(F(-1, 2), F(-1, 2), 1, F(3, 4), F(5, 4), F(-1, 3), F(8, 9), (0,), (F(-1, 6),),
             "(8/9)^(-3/2)*gamma(4/3)/gamma(3/2)", "T1.1"),
    GpfEntry(3, 3, 3, F(-5, 6), F(-1, 3), F(1, 9), F(27, 16), (F(5, 36), F(23, 36)), (F(2, 9), F(5, 9)),
             "2^(17/18)/3^(5/6)", "T1.2"),
)
# The second row above does not hold as printed: f(w+1)/f(w) is not even
# rational in w.  The identity that does hold has third parameter 2w + 5/18;
# after w -> w - 5/36 it lies in the (p, q, r; a, b; x) family.
TABLE1_CORRECTED = (
    GpfEntry(3, 3, 2, F(-5, 4), F(-3, 4), F(1, 9), F(27, 16), (0, F(1, 2)), (F(1, 12), F(5, 12)),
             "2^(3/2)/3^(5/4)", "T1.2-corrected"),
)
TABLE1_SKIPPED = ("T1.3: x = exp(+-pi i/3) lies on the unit circle; complex x is out of scope",)

E1_FIXTURES = (
    GpfEntry(1, -1, 3, 0, F(1, 2), F(1, 2), F(27, 32), (F(1, 3), F(2, 3)), (F(3, 8), F(5, 8)),
             "csc(pi/8)/sqrt(6)", "E1.1"),
    GpfEntry(1, -1, 3, F(1, 3), F(7, 6), F(1, 2), F(27, 32), (0, F(2, 3)), (F(5, 24), F(11, 24)),
             "2^(5/6)*csc(3*pi/8)/sqrt(3)", "E1.2"),
)

BAILEY_CASES = ((2, 1, F(1, 3)), (3, 1, F(1, 5)), (3, 2, F(1, 7)))

# Every Table 2 and Table 3 solution falls in case IV of the deficiency tables.
DEFICIENCY_CASE = "IV"
