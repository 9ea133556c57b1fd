"""Exact real quadratic numbers (a + b*sqrt(d)) / c and rays built from them."""
from __future__ import annotations

from dataclasses import dataclass
from math import gcd, isqrt


def squarefree_split(n: int) -> tuple[int, int]:
    """Write n >= 0 as s^2 * d with d square-free; returns (s, d)."""
    if n == 0:
        return 0, 0
    s, d = 1, n
    p = 2
    while p * p <= d:
        while d % (p * p) == 0:
            d //= p * p
            s *= p
        p += 1
    return s, d


def sign_of(a: int, b: int, d: int) -> int:
    """Sign of a + b*sqrt(d) for square-free d >= 0, without floats."""
    if d == 0 or b == 0:
        return (a > 0) - (a < 0)
    sa = (a > 0) - (a < 0)
    sb = (b > 0) - (b < 0)
    if sa == 0 or sa == sb:
        return sb if sa == 0 else sa
    # opposite signs: compare a^2 with b^2 d
    lhs, rhs = a * a, b * b * d
    if lhs == rhs:
        return 0
    return sa if lhs > rhs else sb


@dataclass(frozen=True)
class QuadSurd:
    """(a + b*sqrt(d)) / c with c > 0 and d square-free."""

    a: int
    b: int
    d: int
    c: int = 1

    def __post_init__(self):
        if self.c == 0:
            raise ZeroDivisionError("QuadSurd denominator is zero")
        a, b, d, c = self.a, self.b, self.d, self.c
        if d in (0, 1):
            a, b, d = (a + b if d == 1 else a), 0, 0
        if b == 0:
            d = 0
        if c < 0:
            a, b, c = -a, -b, -c
        g = gcd(gcd(a, b), c)
        object.__setattr__(self, "a", a // g)
        object.__setattr__(self, "b", b // g)
        object.__setattr__(self, "d", d)
        object.__setattr__(self, "c", c // g)

    @classmethod
    def rational(cls, num: int, den: int = 1) -> "QuadSurd":
        return cls(num, 0, 0, den)

    def _common(self, other: "QuadSurd") -> int:
        if self.d and other.d and self.d != other.d:
            raise ValueError(f"cannot combine sqrt({self.d}) with sqrt({other.d})")
        return self.d or other.d

    def __add__(self, other):
        if isinstance(other, int):
            other = QuadSurd.rational(other)
        d = self._common(other)
        return QuadSurd(self.a * other.c + other.a * self.c, self.b * other.c + other.b * self.c, d,
                        self.c * other.c)

    __radd__ = __add__

    def __neg__(self):
        return QuadSurd(-self.a, -self.b, self.d, self.c)

    def __sub__(self, other):
        if isinstance(other, int):
            other = QuadSurd.rational(other)
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return QuadSurd(self.a * other, self.b * other, self.d, self.c)
        d = self._common(other)
        return QuadSurd(self.a * other.a + self.b * other.b * d, self.a * other.b + self.b * other.a, d,
                        self.c * other.c)

    __rmul__ = __mul__

    def sign(self) -> int:
        return sign_of(self.a, self.b, self.d)

    @property
    def is_rational(self) -> bool:
        return self.b == 0

    def __float__(self):
        return (self.a + self.b * self.d ** 0.5) / self.c

    def __str__(self):
        if self.b == 0:
            return str(self.a) if self.c == 1 else f"{self.a}/{self.c}"
        num = f"{self.a}{'+' if self.b > 0 else '-'}{abs(self.b)}*sqrt({self.d})"
        return num if self.c == 1 else f"({num})/{self.c}"


@dataclass(frozen=True)
class SurdRay:
    """Direction (den, p + q*sqrt(d)) in a fixed basis of a rank-2 lattice,
    i.e. slope (p + q*sqrt(d)) / den; ``at_infinity`` is the direction (0, 1)."""

    p: int
    q: int
    d: int
    den: int = 1
    at_infinity: bool = False

    @classmethod
    def infinite(cls) -> "SurdRay":
        return cls(0, 0, 0, 1, True)

    @classmethod
    def from_vector(cls, v) -> "SurdRay":
        x, y = v
        if x == 0:
            return cls.infinite()
        s = QuadSurd.rational(y, x)
        return cls(s.a, 0, 0, s.c)

    @classmethod
    def from_slope(cls, s: QuadSurd) -> "SurdRay":
        return cls(s.a, s.b, s.d, s.c)

    @property
    def slope(self) -> QuadSurd | None:
        return None if self.at_infinity else QuadSurd(self.p, self.q, self.d, self.den)

    @property
    def is_rational(self) -> bool:
        return self.at_infinity or self.q == 0

    def vector(self) -> tuple[QuadSurd, QuadSurd]:
        if self.at_infinity:
            return QuadSurd.rational(0), QuadSurd.rational(1)
        return QuadSurd.rational(self.den), QuadSurd(self.p, self.q, self.d)

    def integer_vector(self) -> tuple[int, int]:
        if not self.is_rational:
            raise ValueError("irrational ray has no integer direction")
        if self.at_infinity:
            return (0, 1)
        return (self.den, self.p)

    def to_json(self) -> dict:
        return {"p": self.p, "q": self.q, "d": self.d, "den": self.den, "at_infinity": self.at_infinity}

    def __str__(self):
        return "slope=inf" if self.at_infinity else f"slope={self.slope}"


def is_perfect_square(n: int) -> bool:
    return n >= 0 and isqrt(n) ** 2 == n
