"""Text grammar for exact values, parameters, rational functions and
numeric constants.

Exact values: integers, ``n/d``, ``a+b*sqrt(D)`` and arithmetic on them
(``4*(sqrt(5)-2)``, ``(3/4)*(3-sqrt(3))``).  ``^`` is accepted for powers.
Parameters use ``(p,q,r;a,b;x)``.
"""

from __future__ import annotations

import ast
import operator
from fractions import Fraction

from .errors import ParseError
from .exactnum import FieldMismatchError, Poly, RatFunc, field_sqrt, to_field

_BINOPS = {
    ast.Add: operator.add,
    ast.Sub: operator.sub,
    ast.Mult: operator.mul,
    ast.Div: operator.truediv,
}


def _tree(text: str, what: str) -> ast.AST:
    try:
        return ast.parse(text.strip().replace("^", "**"), mode="eval").body
    except SyntaxError as exc:
        raise ParseError(f"cannot parse {what} {text!r}: {exc.msg}") from None


def _integer_power(node, evaluate):
    exponent = evaluate(node.right)
    if isinstance(exponent, Fraction) and exponent.denominator == 1:
        return evaluate(node.left) ** int(exponent)
    raise ParseError("exact expressions only allow integer exponents")


def _exact_eval(node, variables=None):
    def ev(n):
        return _exact_eval(n, variables)

    if isinstance(node, ast.Constant) and isinstance(node.value, int) and not isinstance(node.value, bool):
        return Fraction(node.value)
    if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
        v = ev(node.operand)
        return -v if isinstance(node.op, ast.USub) else v
    if isinstance(node, ast.BinOp):
        if isinstance(node.op, ast.Pow):
            return _integer_power(node, ev)
        op = _BINOPS.get(type(node.op))
        if op is None:
            raise ParseError(f"operator {type(node.op).__name__} not allowed")
        try:
            return op(ev(node.left), ev(node.right))
        except ZeroDivisionError:
            raise ParseError("division by zero") from None
        except FieldMismatchError as exc:
            raise ParseError(str(exc)) from None
    if isinstance(node, ast.Call) and isinstance(node.func, ast.Name) and node.func.id == "sqrt":
        if len(node.args) != 1:
            raise ParseError("sqrt takes one argument")
        arg = ev(node.args[0])
        if not isinstance(arg, Fraction) or arg < 0:
            raise ParseError("sqrt needs a nonnegative rational argument")
        root = field_sqrt(arg)
        if root is None:
            raise ParseError(f"sqrt({arg}) is not in a quadratic field")
        return root
    if isinstance(node, ast.Name) and variables and node.id in variables:
        return variables[node.id]
    raise ParseError(f"unsupported syntax: {ast.dump(node)[:60]}")


def parse_exact(text: str):
    """An element of Q or Q(sqrt D)."""
    return to_field(_exact_eval(_tree(text, "value")))


def parse_lambda(text: str):
    """``(p,q,r;a,b;x)`` to a Parameter."""
    from .gpfsearch import Parameter

    body = text.strip()
    if not (body.startswith("(") and body.endswith(")")):
        raise ParseError(f"parameter must look like (p,q,r;a,b;x), got {text!r}")
    groups = body[1:-1].split(";")
    if len(groups) != 3:
        raise ParseError("parameter needs three ';'-separated groups")
    pqr = [g for g in groups[0].split(",")]
    ab = [g for g in groups[1].split(",")]
    if len(pqr) != 3 or len(ab) != 2:
        raise ParseError("expected p,q,r then a,b")
    values = [parse_exact(v) for v in (*pqr, *ab, groups[2])]
    try:
        return Parameter(*values)
    except Exception as exc:  # region errors become parse errors at this boundary
        raise ParseError(str(exc)) from None


def parse_ratfunc(text: str, var: str = "w") -> RatFunc:
    """A rational function in ``var`` with exact coefficients."""
    w = RatFunc.of(Poly.x(var))

    def ev(node):
        if isinstance(node, ast.Name) and node.id == var:
            return w
        if isinstance(node, ast.BinOp) and isinstance(node.op, ast.Pow):
            return _integer_power(node, ev)
        if isinstance(node, ast.BinOp):
            op = _BINOPS.get(type(node.op))
            if op is None:
                raise ParseError(f"operator {type(node.op).__name__} not allowed")
            left, right = ev(node.left), ev(node.right)
            if not isinstance(left, RatFunc) and not isinstance(right, RatFunc):
                return op(left, right)
            try:
                return op(RatFunc.of(left, var), RatFunc.of(right, var))
            except ZeroDivisionError:
                raise ParseError("division by zero") from None
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
            v = ev(node.operand)
            return -v if isinstance(node.op, ast.USub) else v
        return _exact_eval(node)

    return RatFunc.of(ev(_tree(text, "rational function")), var)


_NUMERIC_FUNCS = ("gamma", "sqrt", "sin", "cos", "csc", "sec", "exp", "log")


def evaluate_constant(text: str, ctx):
    """Numeric value of a closed-form constant in an mpmath context.

    Accepts rationals, ``pi``, ``^``/``**`` with any exponent, and the
    functions gamma, sqrt, sin, cos, csc, sec, exp, log.
    """

    def num(v):
        return ctx.mpf(v.numerator) / v.denominator if isinstance(v, Fraction) else v

    def ev(node):
        if isinstance(node, ast.Constant) and isinstance(node.value, (int, float)):
            return Fraction(node.value) if isinstance(node.value, int) else ctx.mpf(repr(node.value))
        if isinstance(node, ast.Name) and node.id == "pi":
            return ctx.pi
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
            v = ev(node.operand)
            return -v if isinstance(node.op, ast.USub) else v
        if isinstance(node, ast.BinOp):
            left, right = ev(node.left), ev(node.right)
            if isinstance(node.op, ast.Pow):
                if isinstance(left, Fraction) and isinstance(right, Fraction) and right.denominator == 1:
                    return left ** int(right)
                return ctx.power(num(left), num(right))
            op = _BINOPS.get(type(node.op))
            if op is None:
                raise ParseError(f"operator {type(node.op).__name__} not allowed")
            if isinstance(left, Fraction) and isinstance(right, Fraction):
                return op(left, right)
            return op(num(left), num(right))
        if isinstance(node, ast.Call) and isinstance(node.func, ast.Name) and node.func.id in _NUMERIC_FUNCS:
            if len(node.args) != 1:
                raise ParseError(f"{node.func.id} takes one argument")
            arg = num(ev(node.args[0]))
            fn = node.func.id
            if fn == "gamma":
                from .hyperseries import gamma_fn

                return gamma_fn(arg, ctx.prec)
            return getattr(ctx, fn)(arg)
        raise ParseError(f"unsupported syntax in constant {text!r}")

    return num(ev(_tree(text, "constant")))
