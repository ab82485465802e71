"""Restricted arithmetic-expression evaluator for spec literals.

Accepts Python-style arithmetic (``^`` is read as ``**``) over integers and
names bound in an environment; nothing else is evaluated.  Integer literals
stay exact (``int``/``Fraction``) until they meet an environment value.
"""

import ast
import operator
from fractions import Fraction

from .errors import SpecError

_BINOPS = {
    ast.Add: operator.add,
    ast.Sub: operator.sub,
    ast.Mult: operator.mul,
    ast.Div: operator.truediv,
    ast.Pow: operator.pow,
}


def _parse(text):
    if not isinstance(text, str):
        raise SpecError(f"expected an expression string, got {type(text).__name__}")
    try:
        return ast.parse(text.replace("^", "**"), mode="eval").body
    except SyntaxError as exc:
        raise SpecError(f"cannot parse expression {text!r}: {exc.msg}") from None


def free_names(text):
    return {n.id for n in ast.walk(_parse(text)) if isinstance(n, ast.Name)}


def evaluate(text, env, const=None):
    """Evaluate ``text`` with names from ``env``.

    ``const`` (optional) converts a bare rational result into the caller's
    domain, so that "3/4" yields a field element rather than a Fraction.
    """
    node = _parse(text)
    val = _eval(node, env, text)
    if const is not None and isinstance(val, (int, Fraction)):
        val = const(val)
    return val


def _eval(node, env, text):
    if isinstance(node, ast.Constant):
        if isinstance(node.value, bool) or not isinstance(node.value, int):
            raise SpecError(f"only integer literals are allowed in {text!r}")
        return node.value
    if isinstance(node, ast.Name):
        try:
            return env[node.id]
        except KeyError:
            raise SpecError(f"unknown name {node.id!r} in {text!r}") from None
    if isinstance(node, ast.UnaryOp):
        v = _eval(node.operand, env, text)
        if isinstance(node.op, ast.USub):
            return -v
        if isinstance(node.op, ast.UAdd):
            return v
    if isinstance(node, ast.BinOp) and type(node.op) in _BINOPS:
        left = _eval(node.left, env, text)
        right = _eval(node.right, env, text)
        if isinstance(node.op, ast.Pow):
            if not isinstance(right, int):
                raise SpecError(f"exponents must be integer literals in {text!r}")
        if isinstance(node.op, ast.Div) and isinstance(left, int) and isinstance(right, (int, Fraction)):
            if right == 0:
                raise SpecError(f"division by zero in {text!r}")
            return Fraction(left) / right
        return _BINOPS[type(node.op)](left, right)
    raise SpecError(f"unsupported syntax in {text!r}: {ast.dump(node)[:40]}")
