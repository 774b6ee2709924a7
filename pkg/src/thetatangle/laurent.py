"""Exact one-variable Laurent polynomials with integer coefficients."""

from __future__ import annotations

from typing import Iterable, Mapping


class LaurentPoly:
    """Sparse Laurent polynomial ``sum c_k x**k``; zero coefficients are never stored.

    Instances are immutable and hashable, so they can key caches.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[int, int] | Iterable[tuple[int, int]] = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[int, int] = {}
        for e, c in items:
            acc[int(e)] = acc.get(int(e), 0) + int(c)
        self._terms = tuple(sorted((e, c) for e, c in acc.items() if c))
        self._hash = hash(self._terms)

    # constructors
    @classmethod
    def const(cls, c: int) -> "LaurentPoly":
        return cls({0: c})

    @classmethod
    def monomial(cls, exp: int, coeff: int = 1) -> "LaurentPoly":
        return cls({exp: coeff})

    # accessors
    @property
    def terms(self) -> tuple[tuple[int, int], ...]:
        return self._terms

    def as_dict(self) -> dict[int, int]:
        return dict(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def min_exp(self) -> int:
        return self._terms[0][0]

    def max_exp(self) -> int:
        return self._terms[-1][0]

    def span(self) -> int:
        return self.max_exp() - self.min_exp() if self._terms else 0

    def coeff(self, e: int) -> int:
        return dict(self._terms).get(e, 0)

    # arithmetic
    def __add__(self, other):
        other = _coerce(other)
        d = dict(self._terms)
        for e, c in other._terms:
            d[e] = d.get(e, 0) + c
        return LaurentPoly(d)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly((e, -c) for e, c in self._terms)

    def __sub__(self, other):
        return self + (-_coerce(other))

    def __rsub__(self, other):
        return _coerce(other) - self

    def __mul__(self, other):
        other = _coerce(other)
        d: dict[int, int] = {}
        for e1, c1 in self._terms:
            for e2, c2 in other._terms:
                d[e1 + e2] = d.get(e1 + e2, 0) + c1 * c2
        return LaurentPoly(d)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            if len(self._terms) != 1 or abs(self._terms[0][1]) != 1:
                raise ValueError("only units can be inverted")
            e, c = self._terms[0]
            return LaurentPoly({-e * (-n): c ** (-n)})
        out = LaurentPoly.const(1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def shift(self, k: int) -> "LaurentPoly":
        """Multiply by ``x**k``."""
        return LaurentPoly((e + k, c) for e, c in self._terms)

    def substitute_power(self, k: int) -> "LaurentPoly":
        """Return ``p(x**k)``; ``k`` may be negative."""
        return LaurentPoly((e * k, c) for e, c in self._terms)

    def divide_exponents(self, k: int) -> "LaurentPoly":
        """Return ``p(x**(1/k))``; every exponent must be divisible by ``k``."""
        if any(e % k for e, _ in self._terms):
            raise ValueError(f"exponents not divisible by {k}")
        return LaurentPoly((e // k, c) for e, c in self._terms)

    def exact_div(self, other: "LaurentPoly") -> "LaurentPoly":
        """Exact polynomial division; raises ValueError when there is a remainder."""
        other = _coerce(other)
        if other.is_zero():
            raise ZeroDivisionError("division by zero polynomial")
        rem = dict(self._terms)
        quot: dict[int, int] = {}
        top_e, top_c = other._terms[-1]
        floor = (self._terms[0][0] - other._terms[0][0]) if self._terms else 0
        while rem:
            e = max(rem)
            qe = e - top_e
            if qe < floor or rem[e] % top_c:
                raise ValueError("inexact division")
            qc = rem[e] // top_c
            quot[qe] = qc
            for oe, oc in other._terms:
                k = oe + qe
                rem[k] = rem.get(k, 0) - qc * oc
                if rem[k] == 0:
                    del rem[k]
        return LaurentPoly(quot)

    def evaluate(self, x):
        return sum(c * x**e for e, c in self._terms)

    def normalized(self) -> "LaurentPoly":
        """Representative of the class ``{±x**k * self}``: lowest exponent 0, positive leading coeff."""
        if not self._terms:
            return self
        p = self.shift(-self.min_exp())
        return -p if p._terms[-1][1] < 0 else p

    def mirror(self) -> "LaurentPoly":
        """``p(1/x)``."""
        return self.substitute_power(-1)

    # comparison / display
    def __eq__(self, other):
        if isinstance(other, int):
            other = LaurentPoly.const(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"LaurentPoly({dict(self._terms)!r})"

    def format(self, var: str = "A") -> str:
        if not self._terms:
            return "0"
        parts = []
        for e, c in reversed(self._terms):
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            if e == 0:
                body = str(mag)
            else:
                mon = var if e == 1 else f"{var}^{e}"
                body = mon if mag == 1 else f"{mag}*{mon}"
            parts.append((sign, body))
        head_sign, head = parts[0]
        out = ("-" if head_sign == "-" else "") + head
        for s, b in parts[1:]:
            out += f" {s} {b}"
        return out

    __str__ = format


def _coerce(x) -> LaurentPoly:
    if isinstance(x, LaurentPoly):
        return x
    if isinstance(x, int):
        return LaurentPoly.const(x)
    raise TypeError(f"cannot coerce {type(x).__name__} to LaurentPoly")


def poly_equal_up_to_unit(p1: LaurentPoly, p2: LaurentPoly) -> bool:
    """True iff ``p1 == ±x**k * p2`` for some integer ``k``."""
    return p1.normalized() == p2.normalized()


A = LaurentPoly.monomial(1)
ONE = LaurentPoly.const(1)
ZERO = LaurentPoly()
