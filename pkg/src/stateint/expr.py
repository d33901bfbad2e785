"""Parse small complex expressions such as ``1.1*exp(i*pi/5)`` at a given precision.

Grammar: decimal literals, ``i``, ``pi``, named variables supplied by the
caller, ``exp``/``sqrt``/``log``, ``+ - * / **`` and parentheses.  Decimal
literals are read from their source text so no binary rounding happens
before the working precision is set.
"""
from __future__ import annotations

import ast
from collections.abc import Mapping

import mpmath as mp


class ExpressionError(ValueError):
    pass


_FUNCS = {"exp": mp.exp, "sqrt": mp.sqrt, "log": mp.log}
_BINOPS = {
    ast.Add: lambda a, b: a + b,
    ast.Sub: lambda a, b: a - b,
    ast.Mult: lambda a, b: a * b,
    ast.Div: lambda a, b: a / b,
    ast.Pow: lambda a, b: a**b,
}


def parse_complex(text: str, precision: int, variables: Mapping[str, object] | None = None) -> mp.mpc:
    env = {"i": mp.mpc(0, 1), "I": mp.mpc(0, 1), "j": mp.mpc(0, 1)}
    try:
        tree = ast.parse(text.strip(), mode="eval")
    except SyntaxError as exc:
        raise ExpressionError(f"cannot parse {text!r}: {exc.msg}") from None

    def ev(node):
        if isinstance(node, ast.Expression):
            return ev(node.body)
        if isinstance(node, ast.Constant) and isinstance(node.value, (int, float)):
            seg = ast.get_source_segment(text.strip(), node)
            return mp.mpf(seg) if seg is not None else mp.mpf(node.value)
        if isinstance(node, ast.Name):
            if node.id == "pi":
                return +mp.pi
            if node.id in env:
                return env[node.id]
            if variables and node.id in variables:
                return variables[node.id]
            raise ExpressionError(f"unknown name {node.id!r}")
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
            v = ev(node.operand)
            return -v if isinstance(node.op, ast.USub) else v
        if isinstance(node, ast.BinOp) and type(node.op) in _BINOPS:
            return _BINOPS[type(node.op)](ev(node.left), ev(node.right))
        if isinstance(node, ast.Call) and isinstance(node.func, ast.Name) and node.func.id in _FUNCS:
            if len(node.args) != 1 or node.keywords:
                raise ExpressionError(f"{node.func.id} takes one argument")
            return _FUNCS[node.func.id](ev(node.args[0]))
        raise ExpressionError(f"unsupported syntax in {text!r}")

    with mp.workdps(precision):
        return mp.mpc(ev(tree))
