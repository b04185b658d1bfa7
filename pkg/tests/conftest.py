"""Shared fixtures and independent numeric oracles.

The oracles use mpmath's own hyp2f1 and gamma, never the package's series or
Stirling code, so a check that compares the two exercises two routes.
"""

import sys
from fractions import Fraction

import mpmath
import pytest
from hypothesis import HealthCheck, settings

from gpfkit.exactnum import to_mpf

settings.register_profile(
    "gpfkit", deadline=None, suppress_health_check=[HealthCheck.too_slow], derandomize=True
)
settings.load_profile("gpfkit")

ORACLE_DPS = 140


def _mp(v):
    with mpmath.workdps(ORACLE_DPS):
        return to_mpf(v, mpmath.mp) if not isinstance(v, (int, float)) else mpmath.mpf(v)


def oracle_f(lam, w):
    """2F1(p w + a, q w + b; r w; x) through mpmath."""
    with mpmath.workdps(ORACLE_DPS):
        wv = _mp(Fraction(w))
        p, q, r, a, b, x = (_mp(t) for t in (lam.p, lam.q, lam.r, lam.a, lam.b, lam.x))
        return mpmath.hyp2f1(p * wv + a, q * wv + b, r * wv, x)


def oracle_gamma_ratio(u, v, d, w):
    """d^w prod Gamma(w + u) / prod Gamma(w + v) through mpmath (no constant)."""
    with mpmath.workdps(ORACLE_DPS):
        wv = _mp(Fraction(w))
        out = mpmath.power(_mp(d), wv)
        for t in u:
            out *= mpmath.gamma(wv + _mp(t))
        for t in v:
            out /= mpmath.gamma(wv + _mp(t))
        return out


@pytest.fixture(scope="session")
def table2():
    from gpfkit.corpus import TABLE2

    return TABLE2


@pytest.fixture(scope="session")
def table3():
    from gpfkit.corpus import TABLE3

    return TABLE3


def pytest_terminal_summary(terminalreporter):
    module = sys.modules.get("test_acceptance")
    if module is None or not module.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(module.RESULTS):
        terminalreporter.write_line(module.RESULTS[number])
