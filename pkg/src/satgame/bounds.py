"""Tiny arithmetic language for score bounds such as ``binom(n-4,2)`` or ``floor(n*n/4)``.

Only ``binom``, ``floor``, ``ceil``, the four operations, ``**``, integer
literals and the variables ``n`` and ``k`` are accepted.  Arithmetic is
exact (fractions), and implicit products like ``2k`` are allowed.
"""
from __future__ import annotations

import ast
import math
import re
from fractions import Fraction


class BoundError(ValueError):
    pass


_IMPLICIT = re.compile(r"(\d)\s*(?=[nk(])|(\))\s*(?=[\dnk(])")


def _binom(a, b):
    if a.denominator != 1 or b.denominator != 1:
        raise BoundError("binom needs integer arguments")
    a, b = int(a), int(b)
    return Fraction(math.comb(a, b) if 0 <= b <= a else 0)


_FUNCS = {
    "binom": (2, _binom),
    "floor": (1, lambda x: Fraction(math.floor(x))),
    "ceil": (1, lambda x: Fraction(math.ceil(x))),
}
_BINOPS = {
    ast.Add: lambda a, b: a + b,
    ast.Sub: lambda a, b: a - b,
    ast.Mult: lambda a, b: a * b,
    ast.Div: lambda a, b: a / b,
}


def parse_bound(text: str) -> ast.Expression:
    src = _IMPLICIT.sub(lambda m: (m.group(1) or m.group(2)) + "*", text.replace("^", "**").replace("·", "*"))
    try:
        tree = ast.parse(src, mode="eval")
    except SyntaxError as exc:
        raise BoundError(f"cannot parse bound {text!r}: {exc.msg}") from None
    _check(tree.body, text)
    return tree


def _check(node, text):
    if isinstance(node, ast.Constant) and isinstance(node.value, int) and not isinstance(node.value, bool):
        return
    if isinstance(node, ast.Name) and node.id in ("n", "k"):
        return
    if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
        return _check(node.operand, text)
    if isinstance(node, ast.BinOp) and (type(node.op) in _BINOPS or isinstance(node.op, ast.Pow)):
        _check(node.left, text)
        return _check(node.right, text)
    if isinstance(node, ast.Call) and isinstance(node.func, ast.Name) and node.func.id in _FUNCS:
        if node.keywords or len(node.args) != _FUNCS[node.func.id][0]:
            raise BoundError(f"{node.func.id} takes {_FUNCS[node.func.id][0]} argument(s)")
        for a in node.args:
            _check(a, text)
        return
    raise BoundError(f"unsupported element in bound {text!r}: {ast.dump(node)[:40]}")


def _eval(node, env):
    if isinstance(node, ast.Constant):
        return Fraction(node.value)
    if isinstance(node, ast.Name):
        if env.get(node.id) is None:
            raise BoundError(f"variable {node.id} has no value here")
        return Fraction(env[node.id])
    if isinstance(node, ast.UnaryOp):
        v = _eval(node.operand, env)
        return -v if isinstance(node.op, ast.USub) else v
    if isinstance(node, ast.BinOp):
        a, b = _eval(node.left, env), _eval(node.right, env)
        if isinstance(node.op, ast.Pow):
            if b.denominator != 1:
                raise BoundError("only integer powers are supported")
            return a ** int(b)
        if isinstance(node.op, ast.Div) and b == 0:
            raise BoundError("division by zero")
        return _BINOPS[type(node.op)](a, b)
    arity, fn = _FUNCS[node.func.id]
    return fn(*(_eval(a, env) for a in node.args))


def evaluate_bound(text: str, n: int, k: int | None = None) -> Fraction:
    return _eval(parse_bound(text).body, {"n": n, "k": k})
