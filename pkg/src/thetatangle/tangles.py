"""Rational and algebraic marked two-string tangles.

Conway numbers live in Q ∪ {∞} and are stored as normalized integer pairs.
Continued fractions use the subtractive form

    [a0, a1, ..., an] = a0 - 1/(a1 - 1/(... - 1/an))

so that building a rational tangle is "start with an twists, then repeatedly
rotate and add a_i twists", with rotation acting as x -> -1/x and mirroring
as x -> -x.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Sequence, Union


class ParameterError(ValueError):
    """Raised when a construction's parameter constraints are violated."""


@dataclass(frozen=True, order=True)
class Fraction:
    """Element of Q ∪ {∞} in normal form: gcd(|p|, q) = 1, q >= 0, ∞ = 1/0."""

    p: int
    q: int

    def __post_init__(self):
        p, q = self.p, self.q
        if p == 0 and q == 0:
            raise ValueError("0/0 is not a Conway number")
        g = math.gcd(p, q)
        if q < 0 or (q == 0 and p < 0):
            p, q = -p, -q
        p, q = p // g, q // g
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "q", q)

    @property
    def is_infinite(self) -> bool:
        return self.q == 0

    @property
    def is_integral(self) -> bool:
        return self.q == 1

    def __neg__(self) -> "Fraction":
        return Fraction(-self.p, self.q)

    def rotate(self) -> "Fraction":
        """Conway number of the tangle turned a quarter: x -> -1/x."""
        return Fraction(-self.q, self.p)

    def add_integer(self, n: int) -> "Fraction":
        return Fraction(self.p + n * self.q, self.q)

    def __str__(self):
        if self.q == 0:
            return "inf"
        if self.q == 1:
            return str(self.p)
        return f"{self.p}/{self.q}"


INF = Fraction(1, 0)
ZERO = Fraction(0, 1)


def frac(p: int, q: int = 1) -> Fraction:
    return Fraction(p, q)


def parse_fraction(text: str) -> Fraction:
    text = text.strip()
    if text in ("inf", "∞", "1/0"):
        return INF
    if "/" in text:
        a, b = text.split("/")
        return Fraction(int(a), int(b))
    return Fraction(int(text), 1)


# ---------------------------------------------------------------- continued fractions

def cf_eval(cf: Sequence[int]) -> Fraction:
    """Evaluate ``[a0, ..., an]`` under the subtractive convention; ``[]`` is 0."""
    if not cf:
        return ZERO
    num, den = cf[-1], 1
    for a in reversed(cf[:-1]):
        # a - 1/(num/den) = (a*num - den)/num
        num, den = a * num - den, num
    return Fraction(num, den)


INF_CF = (0, 0)


def cf_encode(f: Fraction) -> tuple[int, ...]:
    """Canonical continued fraction of ``f``.

    Uses ceiling steps, so every coefficient after the first has absolute
    value at least 2 and no convergent is ∞. Zero encodes as ``()``, and ∞,
    which no sequence with nonzero tail can reach, as ``(0, 0)``.
    """
    if f.is_infinite:
        return INF_CF
    if f.p == 0:
        return ()
    out = []
    p, q = f.p, f.q
    while True:
        a = -((-p) // q)  # ceil(p/q)
        out.append(a)
        r = a * q - p  # a - p/q = r/q, 0 <= r < q
        if r == 0:
            return tuple(out)
        p, q = q, r


# ---------------------------------------------------------------- connectivity

class ConnectivityClass(enum.Enum):
    """Which boundary points the two strands join."""

    HORIZONTAL = "Horizontal"  # NW-NE, SW-SE
    VERTICAL = "Vertical"  # NW-SW, NE-SE
    DIAGONAL = "Diagonal"  # NW-SE, NE-SW

    def rotated(self) -> "ConnectivityClass":
        return {
            ConnectivityClass.HORIZONTAL: ConnectivityClass.VERTICAL,
            ConnectivityClass.VERTICAL: ConnectivityClass.HORIZONTAL,
        }.get(self, self)


def connectivity_class(f: Fraction) -> ConnectivityClass:
    if f.p % 2 == 0:
        return ConnectivityClass.HORIZONTAL
    if f.q % 2 == 0:
        return ConnectivityClass.VERTICAL
    return ConnectivityClass.DIAGONAL


def sum_connectivity(c1: ConnectivityClass, c2: ConnectivityClass) -> tuple[ConnectivityClass, int]:
    """Class of a tangle sum plus the number of closed loops the gluing creates."""
    H, V, D = ConnectivityClass.HORIZONTAL, ConnectivityClass.VERTICAL, ConnectivityClass.DIAGONAL
    if c1 is H:
        return c2, 0
    if c2 is H:
        return c1, 0
    if c1 is V and c2 is V:
        return V, 1
    if c1 is D and c2 is D:
        return H, 0
    return V, 0


def rtr_distance(f1: Fraction, f2: Fraction) -> int:
    return abs(f1.p * f2.q - f2.p * f1.q)


def is_proper_rtr(f1: Fraction, f2: Fraction) -> bool:
    return connectivity_class(f1) is connectivity_class(f2)


def em_a2_result(l: int, m: int) -> Fraction:
    """Rational tangle left by the standard unknotting crossing change of the tangle A2(l, m)."""
    if abs(l) <= 1 or m in (0, 1):
        raise ParameterError(f"A2({l}, {m}) requires |l| > 1 and m not in {{0, 1}}")
    return Fraction(2 * m - 1, l * (2 * m - 1) - 2)


def em_a1_valid(l: int, m: int) -> bool:
    return abs(l) > 1 and m != 0 and (l, m) not in ((2, 1), (-2, -1))


# ---------------------------------------------------------------- algebraic tangles

@dataclass(frozen=True)
class Leaf:
    value: Fraction


@dataclass(frozen=True)
class Sum:
    left: "AlgebraicTangle"
    right: "AlgebraicTangle"


@dataclass(frozen=True)
class Mirror:
    child: "AlgebraicTangle"


@dataclass(frozen=True)
class Rotate:
    child: "AlgebraicTangle"


AlgebraicTangle = Union[Leaf, Sum, Mirror, Rotate]


def as_tangle(x) -> AlgebraicTangle:
    if isinstance(x, (Leaf, Sum, Mirror, Rotate)):
        return x
    if isinstance(x, Fraction):
        return Leaf(x)
    if isinstance(x, int):
        return Leaf(Fraction(x, 1))
    raise TypeError(f"not a tangle: {x!r}")


def mirror(t) -> AlgebraicTangle:
    t = as_tangle(t)
    if isinstance(t, Leaf):
        return Leaf(-t.value)
    if isinstance(t, Sum):
        return Sum(mirror(t.left), mirror(t.right))
    if isinstance(t, Mirror):
        return t.child
    return rotate(mirror(t.child))


def rotate(t) -> AlgebraicTangle:
    t = as_tangle(t)
    if isinstance(t, Leaf):
        return Leaf(t.value.rotate())
    return Rotate(t)


def _integral_value(t: AlgebraicTangle):
    if isinstance(t, Leaf) and t.value.is_integral:
        return t.value.p
    return None


def tangle_sum(t1, t2) -> AlgebraicTangle:
    """Sum node, folding in integral summands; non-integral sums stay symbolic."""
    t1, t2 = as_tangle(t1), as_tangle(t2)
    n2 = _integral_value(t2)
    if isinstance(t1, Leaf) and n2 is not None:
        return Leaf(t1.value.add_integer(n2))
    n1 = _integral_value(t1)
    if isinstance(t2, Leaf) and n1 is not None:
        return Leaf(t2.value.add_integer(n1))
    if isinstance(t1, Sum):
        # right-leaning normal form
        return tangle_sum(t1.left, tangle_sum(t1.right, t2))
    if isinstance(t2, Sum) and n1 is not None and isinstance(t2.left, Leaf):
        return Sum(Leaf(t2.left.value.add_integer(n1)), t2.right)
    if isinstance(t2, Sum) and isinstance(t1, Leaf):
        inner = tangle_sum(t1, t2.left)
        if isinstance(inner, Leaf):
            return tangle_sum(inner, t2.right)
    return Sum(t1, t2)


def evaluate(t) -> Fraction | None:
    """Conway number when ``t`` is rational, else None."""
    t = as_tangle(t)
    if isinstance(t, Leaf):
        return t.value
    if isinstance(t, Mirror):
        v = evaluate(t.child)
        return None if v is None else -v
    if isinstance(t, Rotate):
        v = evaluate(t.child)
        return None if v is None else v.rotate()
    left, right = evaluate(t.left), evaluate(t.right)
    if left is None or right is None:
        return None
    if right.is_integral:
        return left.add_integer(right.p)
    if left.is_integral:
        return right.add_integer(left.p)
    return None


def is_integral(t) -> bool:
    t = as_tangle(t)
    if isinstance(t, Sum):
        return is_integral(t.left) and is_integral(t.right)
    v = evaluate(t)
    return v is not None and v.is_integral


def tangle_connectivity(t) -> tuple[ConnectivityClass, int]:
    """Connectivity class of an algebraic tangle and its count of closed loops."""
    t = as_tangle(t)
    if isinstance(t, Leaf):
        return connectivity_class(t.value), 0
    if isinstance(t, Mirror):
        return tangle_connectivity(t.child)
    if isinstance(t, Rotate):
        c, k = tangle_connectivity(t.child)
        return c.rotated(), k
    c1, k1 = tangle_connectivity(t.left)
    c2, k2 = tangle_connectivity(t.right)
    c, k = sum_connectivity(c1, c2)
    return c, k + k1 + k2


# ---------------------------------------------------------------- two-bridge closures

@dataclass(frozen=True)
class TwoBridge:
    """Schubert normal form b(p, q), 0 <= q < p.

    ``b(1, 0)`` is the unknot. ``b(0, 1)`` marks the two-component unlink,
    the closure of a tangle with even numerator 0.
    """

    p: int
    q: int

    def __post_init__(self):
        if self.p < 0:
            raise ValueError("p must be nonnegative")
        if self.p > 1 and math.gcd(self.p, self.q) != 1:
            raise ValueError(f"b({self.p}, {self.q}) has gcd != 1")

    @property
    def is_unknot(self) -> bool:
        return self.p == 1

    @property
    def components(self) -> int:
        return 1 if self.p % 2 else 2

    def __str__(self):
        if self.p == 1:
            return "unknot"
        if self.p == 0:
            return "unlink2"
        return f"b({self.p},{self.q})"


UNKNOT = TwoBridge(1, 0)
UNLINK2 = TwoBridge(0, 1)


class Closure(enum.Enum):
    NUMERATOR = "N"
    DENOMINATOR = "D"


def _schubert(p: int, q: int) -> TwoBridge:
    if p == 0:
        return UNLINK2
    sign = 1 if p > 0 else -1
    p = abs(p)
    if p == 1:
        return UNKNOT
    return TwoBridge(p, (sign * q) % p)


def closure(kind: Closure, f: Fraction) -> TwoBridge:
    if kind is Closure.NUMERATOR:
        return _schubert(f.p, f.q)
    r = f.rotate()
    return _schubert(r.p, r.q)


def schubert_equivalent(k1: TwoBridge, k2: TwoBridge, chiral: bool = False) -> bool:
    """Schubert's classification: p equal and q1 ≡ q2^(±1) (mod p); up to sign unless ``chiral``."""
    if k1.p != k2.p:
        return False
    p = k1.p
    if p <= 2:
        return True
    q1, q2 = k1.q % p, k2.q % p
    inv2 = pow(q2, -1, p)
    targets = {q2, inv2}
    if not chiral:
        targets |= {(-q2) % p, (-inv2) % p}
    return q1 in targets
