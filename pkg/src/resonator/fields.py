"""Coefficient fields: the rationals and prime fields F_p.

Rational scalars are ``fractions.Fraction`` (ints are accepted wherever a
Fraction is); prime-field scalars are plain ints in ``[0, p)``.
"""

from __future__ import annotations

import numbers
import re
from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .errors import FieldMismatch

MAX_PRIME = 1 << 62


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    small = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
    for q in small:
        if p % q == 0:
            return p == q
    # deterministic Miller-Rabin for p < 3.3e24
    d, s = p - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in small:
        x = pow(a, d, p)
        if x in (1, p - 1):
            continue
        for _ in range(s - 1):
            x = x * x % p
            if x == p - 1:
                break
        else:
            return False
    return True


@dataclass(frozen=True)
class FieldSpec:
    """Either the rationals (``kind='Q'``) or F_p (``kind='F'``, ``p`` prime)."""

    kind: str = "Q"
    p: int | None = None

    def __post_init__(self):
        if self.kind == "Q":
            if self.p is not None:
                raise ValueError("the rational field takes no modulus")
        elif self.kind == "F":
            if self.p is None or not is_prime(self.p):
                raise ValueError(f"F_p needs a prime modulus, got {self.p}")
            if self.p >= MAX_PRIME:
                raise ValueError("prime fields are limited to p < 2**62")
        else:
            raise ValueError(f"unknown field kind {self.kind!r}")

    @classmethod
    def rationals(cls) -> FieldSpec:
        return cls("Q")

    @classmethod
    def prime(cls, p: int) -> FieldSpec:
        return cls("F", p)

    @classmethod
    def parse(cls, text: str) -> FieldSpec:
        t = text.strip().upper()
        if t in ("Q", "QQ", "RATIONALS"):
            return cls.rationals()
        m = re.fullmatch(r"(?:F|GF|F_)\(?(\d+)\)?", t)
        if m:
            return cls.prime(int(m.group(1)))
        raise ValueError(f"cannot parse field {text!r}")

    @property
    def char(self) -> int:
        return 0 if self.kind == "Q" else self.p

    @property
    def is_rational(self) -> bool:
        return self.kind == "Q"

    def __str__(self) -> str:
        return "Q" if self.kind == "Q" else f"F{self.p}"

    # scalar arithmetic

    def coerce(self, x):
        """Map an int, Fraction or numeric string into this field."""
        if isinstance(x, str):
            x = Fraction(x)
        elif isinstance(x, numbers.Integral) and not isinstance(x, int):
            x = int(x)
        elif isinstance(x, numbers.Rational) and not isinstance(x, (int, Fraction)):
            x = Fraction(int(x.numerator), int(x.denominator))
        if self.kind == "Q":
            if isinstance(x, (int, Fraction)):
                return Fraction(x)
            raise TypeError(f"cannot coerce {x!r} to Q")
        if isinstance(x, Fraction):
            if x.denominator % self.p == 0:
                raise ZeroDivisionError(f"{x} has no image in F{self.p}")
            return x.numerator * pow(x.denominator, -1, self.p) % self.p
        if isinstance(x, int):
            return x % self.p
        raise TypeError(f"cannot coerce {x!r} to F{self.p}")

    def vector(self, xs) -> list:
        return [self.coerce(x) for x in xs]

    def zero(self):
        return Fraction(0) if self.kind == "Q" else 0

    def one(self):
        return Fraction(1) if self.kind == "Q" else 1

    def add(self, a, b):
        return a + b if self.kind == "Q" else (a + b) % self.p

    def sub(self, a, b):
        return a - b if self.kind == "Q" else (a - b) % self.p

    def mul(self, a, b):
        return a * b if self.kind == "Q" else a * b % self.p

    def neg(self, a):
        return -a if self.kind == "Q" else -a % self.p

    def inv(self, a):
        if self.kind == "Q":
            return 1 / Fraction(a)
        if a % self.p == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(a, -1, self.p)

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def divides_characteristic(self, m: int) -> bool:
        """True when ``m`` is zero in this field."""
        return self.kind == "F" and m % self.p == 0

    def to_json(self, a):
        """Canonical serialisation: "a/b" strings over Q, ints in [0, p)."""
        if self.kind == "Q":
            a = Fraction(a)
            return str(a.numerator) if a.denominator == 1 else f"{a.numerator}/{a.denominator}"
        return int(a) % self.p

    def check_same(self, other: FieldSpec):
        if self != other:
            raise FieldMismatch(f"field mismatch: {self} vs {other}")


Q = FieldSpec.rationals()


def integer_row(row) -> list[int]:
    """Scale a rational vector by the lcm of its denominators."""
    den = 1
    for x in row:
        if isinstance(x, Fraction):
            d = x.denominator
            den = den * d // gcd(den, d)
    return [int(x * den) for x in row]


def primitive_row(row) -> list[int]:
    """Integer multiple of ``row`` with content 1 (zero row stays zero)."""
    r = integer_row(row)
    g = 0
    for x in r:
        g = gcd(g, x)
    return [x // g for x in r] if g > 1 else r


def first_prime_above(m: int) -> int:
    m = max(m, 2)
    while not is_prime(m):
        m += 1
    return m
