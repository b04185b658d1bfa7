"""Exception hierarchy shared by all modules."""

from .exactnum.quadext import FieldMismatchError
from .exactnum.roots import DegreeOverflowError


class GpfError(Exception):
    """Base class for library errors."""


class PoleError(GpfError, ZeroDivisionError):
    """A gamma or hypergeometric parameter sits on a pole."""


class DivergenceError(GpfError, ValueError):
    """The hypergeometric series does not converge at the requested point."""


class PrecisionError(GpfError, ArithmeticError):
    """The working precision cannot certify the requested accuracy."""


class RegionError(GpfError, ValueError):
    """A parameter lies outside the region an operation requires."""


class DegenerateSubstitutionError(GpfError, ValueError):
    """A substitution makes a matrix entry undefined (e.g. x = 1)."""


class HypothesisError(GpfError, ValueError):
    """Inputs violate the shift hypothesis 1 <= p, q <= r."""


class InconsistencyError(GpfError, ArithmeticError):
    """Two computations that must agree do not (signals an upstream bug)."""


class SolutionTypeError(GpfError, TypeError):
    """A parameter is not of the solution type an operation needs."""


class CommensurabilityError(GpfError, ValueError):
    """A gamma shift u_i is not of the form s_i / r."""


class UnsupportedIrrationalError(GpfError, ValueError):
    """An argument lies outside the supported exact families."""


class CoprimalityError(GpfError, ValueError):
    """Arguments that must be coprime are not."""


class ParseError(GpfError, ValueError):
    """Malformed exact-value or formula text."""


__all__ = [
    "GpfError", "PoleError", "DivergenceError", "PrecisionError", "RegionError",
    "DegenerateSubstitutionError", "HypothesisError", "InconsistencyError",
    "SolutionTypeError", "CommensurabilityError", "UnsupportedIrrationalError",
    "CoprimalityError", "ParseError", "FieldMismatchError", "DegreeOverflowError",
]
