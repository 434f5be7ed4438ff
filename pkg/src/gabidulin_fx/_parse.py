"""Tiny arithmetic-expression evaluator shared by the element parsers.

Expressions use ``+ - * / ^``, integer literals, parentheses and a fixed set
of symbols (the field generator, ``x``, ``y``).  The text is parsed with
:mod:`ast` after rewriting ``^`` to ``**`` and inserting the implicit
multiplications that appear in hand-written formulas (``4x``, ``(x+1)y``).
"""

from __future__ import annotations

import ast
import re

from .errors import ParseError

_IMPLICIT = [
    # digit followed by a symbol: 4x -> 4*x
    (re.compile(r"(\d)\s*([^\W\d])"), r"\1*\2"),
    # closing paren followed by symbol, digit or opening paren
    (re.compile(r"\)\s*([\w(])"), r")*\1"),
]


def _normalize(text):
    s = text.replace("^", "**").replace("−", "-").replace("·", "*")
    for pat, rep in _IMPLICIT:
        prev = None
        while prev != s:
            prev = s
            s = pat.sub(rep, s)
    return s


def evaluate(text, names, from_int, max_power=None):
    """Evaluate ``text`` using ``names`` for symbols and ``from_int`` for literals.

    ``max_power`` maps a symbol name to the largest exponent it may carry
    literally (used to reject ``y^j`` with ``j >= n``).
    """
    if not isinstance(text, str) or not text.strip():
        raise ParseError(f"empty expression: {text!r}")
    try:
        tree = ast.parse(_normalize(text.strip()), mode="eval")
    except SyntaxError as exc:
        raise ParseError(f"syntax error in {text!r}: {exc.msg}") from None
    max_power = max_power or {}

    def ev(node):
        if isinstance(node, ast.Expression):
            return ev(node.body)
        if isinstance(node, ast.Constant) and type(node.value) is int:
            return from_int(node.value)
        if isinstance(node, ast.Name):
            if node.id not in names:
                raise ParseError(f"unknown symbol {node.id!r} in {text!r}")
            return names[node.id]
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
            val = ev(node.operand)
            return -val if isinstance(node.op, ast.USub) else val
        if isinstance(node, ast.BinOp):
            if isinstance(node.op, ast.Pow):
                e = _int_exponent(node.right)
                if isinstance(node.left, ast.Name) and node.left.id in max_power:
                    if e > max_power[node.left.id]:
                        raise ParseError(
                            f"power {node.left.id}^{e} exceeds {max_power[node.left.id]}"
                        )
                return ev(node.left) ** e
            left, right = ev(node.left), ev(node.right)
            if isinstance(node.op, ast.Add):
                return left + right
            if isinstance(node.op, ast.Sub):
                return left - right
            if isinstance(node.op, ast.Mult):
                return left * right
            if isinstance(node.op, ast.Div):
                try:
                    return left / right
                except ZeroDivisionError:
                    raise ParseError(f"division by zero in {text!r}") from None
        raise ParseError(f"unsupported syntax in {text!r}")

    def _int_exponent(node):
        sign = 1
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, ast.USub):
            sign, node = -1, node.operand
        if isinstance(node, ast.Constant) and type(node.value) is int:
            return sign * node.value
        raise ParseError(f"exponent must be an integer literal in {text!r}")

    return ev(tree)
