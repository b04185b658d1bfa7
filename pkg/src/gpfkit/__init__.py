"""Discovery and certification of gamma product formulas for the Gauss
hypergeometric function f(w) = 2F1(p w + a, q w + b; r w; x)."""

__version__ = "0.1.0"
