"""Exact coefficient rings: Z, Q and Z/m."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import InvalidValue


def _is_prime(m: int) -> bool:
    if m < 2:
        return False
    p = 2
    while p * p <= m:
        if m % p == 0:
            return False
        p += 1
    return True


class CoefficientRing:
    """Base class. Calling the ring on a number returns its canonical form."""

    name = "?"
    is_field = False
    characteristic = 0

    def __call__(self, x):
        raise NotImplementedError

    def inv(self, x):
        raise NotImplementedError

    def has_half(self) -> bool:
        return self.is_field and self.characteristic != 2

    @property
    def zero(self):
        return self(0)

    @property
    def one(self):
        return self(1)

    def __repr__(self):
        return self.name


@dataclass(frozen=True, repr=False)
class Integers(CoefficientRing):
    name = "Z"

    def __call__(self, x):
        if isinstance(x, Fraction):
            if x.denominator != 1:
                raise InvalidValue(f"{x} is not an integer")
            return x.numerator
        return int(x)

    def inv(self, x):
        if x in (1, -1):
            return x
        raise ZeroDivisionError(f"{x} is not a unit in Z")


@dataclass(frozen=True, repr=False)
class Rationals(CoefficientRing):
    name = "Q"
    is_field = True

    def __call__(self, x):
        x = Fraction(x)
        return x.numerator if x.denominator == 1 else x

    def inv(self, x):
        if x == 0:
            raise ZeroDivisionError("division by zero in Q")
        return self(Fraction(1) / Fraction(x))


@dataclass(frozen=True, repr=False)
class IntegersMod(CoefficientRing):
    m: int = 2

    def __post_init__(self):
        if self.m < 2:
            raise InvalidValue("IntegersMod needs m >= 2")

    @property
    def name(self):
        return f"Z/{self.m}"

    @property
    def is_field(self):
        return _is_prime(self.m)

    @property
    def characteristic(self):
        return self.m

    def __call__(self, x):
        if isinstance(x, Fraction):
            return (x.numerator * pow(x.denominator, -1, self.m)) % self.m
        return int(x) % self.m

    def inv(self, x):
        return pow(int(x), -1, self.m)


ZZ = Integers()
QQ = Rationals()


def parse_ring(text: str) -> CoefficientRing:
    """Parse the CLI/file ring selector: ``z``, ``q``, ``z2``, ``zmod:m``."""
    t = text.strip().lower()
    if t in ("z", "zz", "int", "integers"):
        return ZZ
    if t in ("q", "qq", "rationals"):
        return QQ
    if t.startswith("zmod:"):
        return IntegersMod(int(t[5:]))
    if t.startswith("z/"):
        return IntegersMod(int(t[2:]))
    if t.startswith("z") and t[1:].isdigit():
        return IntegersMod(int(t[1:]))
    raise InvalidValue(f"unknown ring {text!r}")
