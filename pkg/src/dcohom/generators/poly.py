"""Univariate polynomials in ``t`` with Gaussian-rational coefficients."""

from __future__ import annotations

import ast

from ..linalg import ZERO, GaussianRational, format_scalar, scalar


class Poly:
    __slots__ = ("coeffs",)

    def __init__(self, coeffs=None):
        if coeffs is None:
            coeffs = {}
        elif not isinstance(coeffs, dict):
            coeffs = {0: coeffs}
        self.coeffs = {int(e): scalar(c) for e, c in coeffs.items() if c}

    @classmethod
    def t(cls) -> Poly:
        return cls({1: 1})

    @property
    def degree(self) -> int:
        return max(self.coeffs, default=-1)

    def is_constant(self) -> bool:
        return self.degree <= 0

    def __call__(self, t):
        t = scalar(t)
        out = ZERO
        for e, c in self.coeffs.items():
            term = c
            for _ in range(e):
                term = term * t
            out = out + term
        return out

    def __add__(self, other):
        other = _lift(other)
        out = dict(self.coeffs)
        for e, c in other.coeffs.items():
            out[e] = out.get(e, ZERO) + c
        return Poly(out)

    __radd__ = __add__

    def __neg__(self):
        return Poly({e: -c for e, c in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-_lift(other))

    def __rsub__(self, other):
        return _lift(other) - self

    def __mul__(self, other):
        other = _lift(other)
        out: dict = {}
        for e1, c1 in self.coeffs.items():
            for e2, c2 in other.coeffs.items():
                out[e1 + e2] = out.get(e1 + e2, ZERO) + c1 * c2
        return Poly(out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _lift(other)
        if not other.is_constant() or not other.coeffs:
            raise ValueError("can only divide a polynomial by a nonzero constant")
        c = other.coeffs[0]
        return Poly({e: v / c for e, v in self.coeffs.items()})

    def __pow__(self, k):
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a nonnegative integer")
        out = Poly(1)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        try:
            other = _lift(other)
        except TypeError:
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(tuple(sorted(self.coeffs.items())))

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for e in sorted(self.coeffs, reverse=True):
            c = self.coeffs[e]
            cs = format_scalar(c)
            if isinstance(c, GaussianRational):
                cs = f"({cs})"
            if e == 0:
                parts.append(cs)
                continue
            mono = "t" if e == 1 else f"t^{e}"
            if cs == "1":
                parts.append(mono)
            elif cs == "-1":
                parts.append("-" + mono)
            else:
                parts.append(f"{cs}*{mono}")
        text = parts[0]
        for p in parts[1:]:
            text += p if p.startswith("-") else "+" + p
        return text

    def __repr__(self):
        return f"Poly({str(self)!r})"


def _lift(x) -> Poly:
    if isinstance(x, Poly):
        return x
    if isinstance(x, (int, str)) or hasattr(x, "numerator") or isinstance(x, GaussianRational):
        return Poly(scalar(x))
    raise TypeError(f"cannot interpret {x!r} as a polynomial")


def parse_poly(text: str) -> Poly:
    """Parse strings such as ``"-1"``, ``"t"``, ``"1/2*t^2-3"``, ``"(1+2*i)*t"``."""
    try:
        tree = ast.parse(str(text).replace("^", "**"), mode="eval")
        return _eval(tree.body)
    except (SyntaxError, ValueError, TypeError, ZeroDivisionError) as exc:
        raise ValueError(f"malformed polynomial {text!r}: {exc}") from None


def _eval(node) -> Poly:
    if isinstance(node, ast.Constant) and isinstance(node.value, int):
        return Poly(node.value)
    if isinstance(node, ast.Name):
        if node.id == "t":
            return Poly.t()
        if node.id == "i":
            return Poly(scalar(0, 1))
        raise ValueError(f"unknown symbol {node.id!r}")
    if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
        v = _eval(node.operand)
        return -v if isinstance(node.op, ast.USub) else v
    if isinstance(node, ast.BinOp):
        left = _eval(node.left)
        if isinstance(node.op, ast.Pow):
            exp = _eval(node.right)
            if not exp.is_constant() or exp.coeffs.get(0, 0) != int(exp.coeffs.get(0, 0)):
                raise ValueError("exponent must be an integer constant")
            return left ** int(exp.coeffs.get(0, 0))
        right = _eval(node.right)
        if isinstance(node.op, ast.Add):
            return left + right
        if isinstance(node.op, ast.Sub):
            return left - right
        if isinstance(node.op, ast.Mult):
            return left * right
        if isinstance(node.op, ast.Div):
            return left / right
    raise ValueError(f"unsupported syntax {ast.dump(node)}")
