"""Tangle expressions: parsing and canonical printing.

    top  := ("N(" | "D(") expr ")" | expr
    expr := term { "+" term }
    term := "m(" expr ")" | "r(" expr ")" | frac | cf | "(" expr ")"
    frac := INT "/" INT | INT | "inf"
    cf   := "[" [ INT { "," INT } ] "]"

Parsing goes through the smart constructors of ``tangles``, so the result is
already in canonical form and printing it back gives canonical text.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .tangles import (
    INF,
    Closure,
    Fraction,
    Leaf,
    Mirror,
    Rotate,
    Sum,
    as_tangle,
    cf_eval,
    mirror,
    rotate,
    tangle_sum,
)


class ExprError(ValueError):
    """Syntax error with a 1-based position and the tokens that would have been accepted."""

    def __init__(self, message: str, line: int, column: int, expected: tuple[str, ...]):
        self.line = line
        self.column = column
        self.expected = expected
        exp = ", ".join(expected)
        super().__init__(f"{message} at line {line}, column {column}; expected {exp}")


@dataclass(frozen=True)
class ClosureExpr:
    kind: Closure
    child: object


_TOKEN = re.compile(r"\s*(?:(?P<int>-?\d+)|(?P<word>inf|m\(|r\(|N\(|D\()|(?P<sym>[+/\[\],()]))")


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def _where(self, pos: int) -> tuple[int, int]:
        before = self.text[:pos]
        line = before.count("\n") + 1
        col = pos - (before.rfind("\n") + 1) + 1
        return line, col

    def error(self, message: str, expected, pos: int | None = None):
        pos = self._skip() if pos is None else pos
        line, col = self._where(pos)
        return ExprError(message, line, col, tuple(expected))

    def _skip(self) -> int:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1
        return self.pos

    def peek(self):
        m = _TOKEN.match(self.text, self.pos)
        if not m:
            return None, None
        for kind in ("int", "word", "sym"):
            if m.group(kind) is not None:
                return kind, m.group(kind)
        return None, None

    def take(self):
        m = _TOKEN.match(self.text, self.pos)
        self.pos = m.end()
        kind, val = next((k, m.group(k)) for k in ("int", "word", "sym") if m.group(k) is not None)
        return kind, val

    def expect(self, sym: str, expected=None):
        kind, val = self.peek()
        if val != sym:
            raise self.error(self._found(), expected or (repr(sym),))
        self.take()

    def _found(self) -> str:
        self._skip()
        if self.pos >= len(self.text):
            return "unexpected end of input"
        return f"unexpected {self.text[self.pos]!r}"

    # ------------------------------------------------------------ grammar
    def top(self):
        kind, val = self.peek()
        if val in ("N(", "D("):
            self.take()
            inner = self.expr()
            self.expect(")", ("'+'", "')'"))
            node = ClosureExpr(Closure(val[0]), inner)
        else:
            node = self.expr()
        self._skip()
        if self.pos != len(self.text):
            raise self.error(self._found(), ("'+'", "end of input"))
        return node

    def expr(self):
        node = self.term()
        while self.peek()[1] == "+":
            self.take()
            node = tangle_sum(node, self.term())
        return node

    def term(self):
        kind, val = self.peek()
        if kind is None:
            raise self.error(self._found(), ("expr",))
        if val in ("m(", "r("):
            self.take()
            inner = self.expr()
            self.expect(")", ("'+'", "')'"))
            return mirror(inner) if val == "m(" else rotate(inner)
        if val in ("N(", "D("):
            raise self.error("closures may only wrap a whole expression", ("expr",))
        if val == "(":
            self.take()
            inner = self.expr()
            self.expect(")", ("'+'", "')'"))
            return inner
        if val == "inf":
            self.take()
            return Leaf(INF)
        if val == "[":
            return self.cf()
        if kind == "int":
            start = self._skip()
            self.take()
            p = int(val)
            if self.peek()[1] == "/":
                self.take()
                k2, v2 = self.peek()
                if k2 != "int":
                    raise self.error(self._found(), ("integer",))
                self.take()
                q = int(v2)
                if q == 0 and p == 0:
                    raise self.error("0/0 is not a Conway number", ("expr",), start)
                return Leaf(Fraction(p, q))
            return Leaf(Fraction(p, 1))
        raise self.error(self._found(), ("expr",))

    def cf(self):
        self.take()
        coeffs = []
        if self.peek()[1] == "]":
            self.take()
            return Leaf(cf_eval(coeffs))
        while True:
            kind, val = self.peek()
            if kind != "int":
                raise self.error(self._found(), ("integer",))
            self.take()
            coeffs.append(int(val))
            kind, val = self.peek()
            if val == ",":
                self.take()
                continue
            if val == "]":
                self.take()
                return Leaf(cf_eval(coeffs))
            raise self.error(self._found(), ("','", "']'"))


def parse_expr(text: str):
    """Parse to a canonical algebraic tangle, or a ClosureExpr wrapping one."""
    return _Parser(text).top()


def format_expr(node) -> str:
    if isinstance(node, ClosureExpr):
        return f"{node.kind.value}({format_expr(node.child)})"
    node = as_tangle(node)
    if isinstance(node, Leaf):
        return str(node.value)
    if isinstance(node, Sum):
        return f"{format_expr(node.left)} + {format_expr(node.right)}"
    if isinstance(node, Mirror):
        return f"m({format_expr(node.child)})"
    if isinstance(node, Rotate):
        return f"r({format_expr(node.child)})"
    raise TypeError(f"not an expression: {node!r}")
