"""Exact evaluation of small arithmetic expressions over named parameters.

Matrix entries of parametrised systems may be written as ``"alpha"``,
``"-0.5*alpha"`` or ``"1 - c"``.  Expressions are parsed with :mod:`ast`
and evaluated over exact rationals; numeric literals are read from their
source text so ``0.1`` means exactly one tenth.
"""

from __future__ import annotations

import ast
from functools import lru_cache

from .errors import ConfigError
from .polycore import Rat, rat

_BINOPS = {
    ast.Add: lambda a, b: a + b,
    ast.Sub: lambda a, b: a - b,
    ast.Mult: lambda a, b: a * b,
    ast.Div: lambda a, b: a / b,
}


@lru_cache(maxsize=1024)
def parse(text: str) -> ast.Expression:
    try:
        tree = ast.parse(text.strip(), mode="eval")
    except SyntaxError as exc:
        raise ConfigError(f"cannot parse expression {text!r}: {exc.msg}") from None
    for node in ast.walk(tree):
        if not isinstance(
            node,
            (ast.Expression, ast.BinOp, ast.UnaryOp, ast.Constant, ast.Name, ast.Load,
             ast.Add, ast.Sub, ast.Mult, ast.Div, ast.Pow, ast.USub, ast.UAdd),
        ):
            raise ConfigError(f"unsupported syntax {type(node).__name__} in {text!r}")
    return tree


def names(text: str) -> set[str]:
    """Parameter names referenced by an expression."""
    return {n.id for n in ast.walk(parse(text)) if isinstance(n, ast.Name)}


def evaluate(text: str, env: dict[str, Rat]) -> Rat:
    tree = parse(text)
    source = text.strip()

    def ev(node):
        if isinstance(node, ast.Expression):
            return ev(node.body)
        if isinstance(node, ast.Constant):
            if isinstance(node.value, bool) or not isinstance(node.value, (int, float)):
                raise ConfigError(f"unsupported literal {node.value!r} in {text!r}")
            return rat(ast.get_source_segment(source, node))
        if isinstance(node, ast.Name):
            if node.id not in env:
                raise ConfigError(f"unknown parameter {node.id!r} in {text!r}")
            return env[node.id]
        if isinstance(node, ast.UnaryOp):
            v = ev(node.operand)
            return -v if isinstance(node.op, ast.USub) else v
        if isinstance(node.op, ast.Pow):
            base, exp = ev(node.left), ev(node.right)
            if exp.denominator != 1 or abs(exp) > 64:
                raise ConfigError(f"exponent must be a small integer in {text!r}")
            e = int(exp)
            if e < 0 and not base:
                raise ConfigError(f"division by zero in {text!r}")
            return base**e if e >= 0 else 1 / base ** (-e)
        a, b = ev(node.left), ev(node.right)
        if isinstance(node.op, ast.Div) and not b:
            raise ConfigError(f"division by zero in {text!r}")
        return _BINOPS[type(node.op)](a, b)

    return rat(ev(tree))
