"""Exact coefficient fields: the rationals and prime fields F_p.

Rational elements are :class:`fractions.Fraction`; F_p elements are Python
ints kept in ``range(p)``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from ..errors import InvalidInputError


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    i = 2
    while i * i <= p:
        if p % i == 0:
            return False
        i += 1
    return True


@dataclass(frozen=True)
class Rationals:
    name = "Q"
    characteristic = 0

    def __call__(self, x) -> Fraction:
        if isinstance(x, str):
            return Fraction(x.strip())
        return Fraction(x)

    def zero(self):
        return Fraction(0)

    def one(self):
        return Fraction(1)

    def inv(self, x):
        if x == 0:
            raise ZeroDivisionError("inverse of zero")
        return 1 / Fraction(x)

    def __str__(self) -> str:
        return "Q"


@dataclass(frozen=True)
class PrimeField:
    p: int

    def __post_init__(self):
        if not is_prime(self.p):
            raise InvalidInputError(f"{self.p} is not prime")

    @property
    def name(self) -> str:
        return f"F{self.p}"

    @property
    def characteristic(self) -> int:
        return self.p

    def __call__(self, x) -> int:
        if isinstance(x, str):
            x = Fraction(x.strip())
        if isinstance(x, Fraction):
            if x.denominator % self.p == 0:
                raise InvalidInputError(f"{x} has no image in F{self.p}")
            return x.numerator * pow(x.denominator, -1, self.p) % self.p
        return int(x) % self.p

    def zero(self):
        return 0

    def one(self):
        return 1

    def inv(self, x):
        x %= self.p
        if x == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(x, -1, self.p)

    def __str__(self) -> str:
        return self.name


QQ = Rationals()

Field = Rationals | PrimeField


def parse_field(spec) -> Field:
    """Accept ``"Q"``, ``"F5"``, ``"5"`` or an int prime."""
    if isinstance(spec, (Rationals, PrimeField)):
        return spec
    if isinstance(spec, int):
        return PrimeField(spec)
    text = str(spec).strip()
    if text.upper() in ("Q", "QQ"):
        return QQ
    m = re.fullmatch(r"[Ff]?(\d+)", text)
    if not m:
        raise InvalidInputError(f"bad field {spec!r}; use Q, F5 or 5")
    return PrimeField(int(m.group(1)))
