"""Exact coefficient rings: Z, Q, Z/m and localizations Z[1/p, ...].

Scalars are plain Python numbers.  Integers and residues are ``int``;
rational and localized scalars are ``int`` or ``fractions.Fraction``.
Residues are always kept as canonical representatives in ``range(m)``.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce

from .errors import NoCanonicalMap, NotDivisible, NotInRing, UnsupportedRing

INTEGERS = "Z"
RATIONALS = "Q"
MOD = "Zmod"
LOCALIZED = "Zloc"


def prime_factors(n: int) -> frozenset[int]:
    n = abs(n)
    out = set()
    p = 2
    while p * p <= n:
        while n % p == 0:
            out.add(p)
            n //= p
        p += 1
    if n > 1:
        out.add(n)
    return frozenset(out)


def is_prime(n: int) -> bool:
    return n >= 2 and prime_factors(n) == {n}


@dataclass(frozen=True)
class Ring:
    kind: str
    modulus: int = 0
    primes: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        if self.kind == MOD and self.modulus < 2:
            raise ValueError(f"modulus must be >= 2, got {self.modulus}")
        if self.kind == LOCALIZED:
            if not self.primes:
                raise ValueError("use Ring.localized() so that Z[1/{}] collapses to Z")
            bad = [p for p in self.primes if not is_prime(p)]
            if bad:
                raise ValueError(f"not prime: {bad}")

    # constructors ---------------------------------------------------------

    @staticmethod
    def integers() -> "Ring":
        return ZZ

    @staticmethod
    def rationals() -> "Ring":
        return QQ

    @staticmethod
    def mod(m: int) -> "Ring":
        return Ring(MOD, modulus=int(m))

    @staticmethod
    def localized(primes) -> "Ring":
        primes = frozenset(int(p) for p in primes)
        if not primes:
            return ZZ
        return Ring(LOCALIZED, primes=primes)

    @staticmethod
    def parse(text: str) -> "Ring":
        """Parse ``Z``, ``Q``, ``Z/m``, ``F5`` or ``Z[1/n1,1/n2,...]``."""
        s = text.replace(" ", "")
        if s in ("Z", "ZZ"):
            return ZZ
        if s in ("Q", "QQ"):
            return QQ
        m = re.fullmatch(r"(?:Z/|F|GF)(\d+)", s)
        if m:
            return Ring.mod(int(m.group(1)))
        m = re.fullmatch(r"Z\[(1/\d+(?:,1/\d+)*)\]", s)
        if m:
            primes = set()
            for part in m.group(1).split(","):
                n = int(part[2:])
                if n < 1:
                    raise ValueError(f"bad localization {part!r}")
                primes |= prime_factors(n)
            return Ring.localized(primes)
        raise ValueError(f"cannot parse ring {text!r}")

    def __str__(self):
        if self.kind == MOD:
            return f"Z/{self.modulus}"
        if self.kind == LOCALIZED:
            return "Z[" + ",".join(f"1/{p}" for p in sorted(self.primes)) + "]"
        return self.kind

    def __repr__(self):
        return f"Ring({self})"

    # predicates -----------------------------------------------------------

    @property
    def is_field(self) -> bool:
        return self.kind == RATIONALS or (self.kind == MOD and is_prime(self.modulus))

    @property
    def characteristic(self) -> int:
        return self.modulus if self.kind == MOD else 0

    def is_unit_integer(self, n: int) -> bool:
        """Whether the image of the integer n is invertible in this ring."""
        if n == 0:
            return False
        if self.kind == INTEGERS:
            return abs(n) == 1
        if self.kind == RATIONALS:
            return True
        if self.kind == MOD:
            return math.gcd(n, self.modulus) == 1
        return prime_factors(n) <= self.primes

    # scalars --------------------------------------------------------------

    def coerce(self, x) -> int | Fraction:
        """Map an int, Fraction or decimal string into canonical form."""
        if isinstance(x, str):
            x = Fraction(x)
        if isinstance(x, Fraction) and x.denominator == 1:
            x = x.numerator
        if self.kind == INTEGERS:
            if isinstance(x, Fraction):
                raise NotInRing(f"{x} is not an integer")
            return int(x)
        if self.kind == MOD:
            if isinstance(x, Fraction):
                den = x.denominator
                if math.gcd(den, self.modulus) != 1:
                    raise NotInRing(f"{x} has denominator not invertible mod {self.modulus}")
                return x.numerator * pow(den, -1, self.modulus) % self.modulus
            return int(x) % self.modulus
        if self.kind == LOCALIZED and isinstance(x, Fraction):
            if not prime_factors(x.denominator) <= self.primes:
                raise NotInRing(f"{x} is not in {self}")
        return x

    def reduce(self, x):
        """Cheap normalization after +, -, * of scalars already in the ring."""
        if self.kind == MOD:
            return x % self.modulus
        return x

    def lift(self, x) -> int:
        """Canonical integer representative (residues only)."""
        if self.kind != MOD:
            raise UnsupportedRing("lift is only defined for Z/m")
        return int(x)

    def inverse(self, x):
        if self.kind == MOD:
            try:
                return pow(int(x), -1, self.modulus)
            except ValueError:
                raise NotDivisible(f"{x} is not invertible mod {self.modulus}") from None
        if x == 0:
            raise ZeroDivisionError("inverse of zero")
        if self.kind == INTEGERS:
            if abs(x) != 1:
                raise NotDivisible(f"{x} is not a unit in Z")
            return x
        inv = 1 / Fraction(x)
        return self.coerce(inv)

    def div(self, a, b):
        """Exact quotient a/b in the ring; NotDivisible if it does not exist."""
        if self.kind == INTEGERS:
            if b == 0 or a % b:
                raise NotDivisible(f"{a} is not divisible by {b} in Z")
            return a // b
        if self.kind == MOD:
            # quotients by zero divisors are not unique, so refuse them
            return a * self.inverse(b) % self.modulus
        if b == 0:
            raise ZeroDivisionError("division by zero")
        q = Fraction(a) / Fraction(b)
        if q.denominator == 1:
            return q.numerator
        if self.kind == LOCALIZED and not prime_factors(q.denominator) <= self.primes:
            raise NotDivisible(f"{a}/{b} is not in {self}")
        return q

    def format(self, x) -> str:
        if isinstance(x, Fraction):
            if x.denominator == 1:
                return str(x.numerator)
            return f"{x.numerator}/{x.denominator}"
        return str(x)

    # ring maps ------------------------------------------------------------

    def has_map_to(self, target: "Ring") -> bool:
        if self == target or self.kind == INTEGERS:
            return True
        if self.kind == LOCALIZED:
            if target.kind == RATIONALS:
                return True
            if target.kind == LOCALIZED:
                return self.primes <= target.primes
            if target.kind == MOD:
                return math.gcd(target.modulus, reduce(lambda a, b: a * b, self.primes)) == 1
            return False
        if self.kind == MOD and target.kind == MOD:
            return self.modulus % target.modulus == 0
        return False

    def map_to(self, x, target: "Ring"):
        if not self.has_map_to(target):
            raise NoCanonicalMap(f"no canonical ring map {self} -> {target}")
        return target.coerce(x)


ZZ = Ring(INTEGERS)
QQ = Ring(RATIONALS)
