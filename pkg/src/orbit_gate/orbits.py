"""Nilpotent orbits of classical groups, labelled by partitions.

Only the combinatorics is modelled: an orbit is a group family plus a
partition satisfying the family's multiplicity rule.  For ``U(m, n)`` the
rule implemented is ``odd parts = |m - n| + 2l`` for some ``l >= 0``.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Optional

from .errors import InvalidInputError
from .partitions import Partition, as_partition, dominance_leq, is_very_even, odd_part_count

FAMILIES = ("GL", "Sp", "Orth", "U")


@dataclass(frozen=True)
class GroupFamily:
    """A classical family with its rank data.

    ``size`` is the matrix size for GL/Sp/Orth (even for Sp); for U the
    signature ``(m, n)`` is used instead.
    """

    kind: str
    size: int = 0
    signature: Optional[tuple[int, int]] = None

    def __post_init__(self):
        if self.kind not in FAMILIES:
            raise InvalidInputError(f"unknown family {self.kind!r}; expected one of {FAMILIES}")
        if self.kind == "U":
            if self.signature is None or min(self.signature) < 0:
                raise InvalidInputError("U(m,n) needs a signature with m, n >= 0")
        elif self.size < 0:
            raise InvalidInputError("family size must be non-negative")
        if self.kind == "Sp" and self.size % 2:
            raise InvalidInputError("Sp(2n) needs an even matrix size")

    @classmethod
    def GL(cls, n: int) -> GroupFamily:
        return cls("GL", n)

    @classmethod
    def Sp(cls, two_n: int) -> GroupFamily:
        return cls("Sp", two_n)

    @classmethod
    def Orth(cls, n: int) -> GroupFamily:
        return cls("Orth", n)

    @classmethod
    def U(cls, m: int, n: int) -> GroupFamily:
        return cls("U", 0, (m, n))

    @property
    def matrix_size(self) -> int:
        if self.kind == "U":
            return sum(self.signature)
        return self.size

    def to_json(self) -> dict:
        if self.kind == "U":
            return {"family": "U", "signature": list(self.signature)}
        return {"family": self.kind, "size": self.size}

    @classmethod
    def from_json(cls, data: dict) -> GroupFamily:
        if data.get("family") == "U":
            m, n = data["signature"]
            return cls.U(int(m), int(n))
        return cls(data.get("family"), int(data.get("size", 0)))

    def __str__(self) -> str:
        if self.kind == "U":
            return "U(%d,%d)" % self.signature
        return f"{self.kind}({self.size})"


def validate_partition(family: GroupFamily, lam) -> bool:
    lam = as_partition(lam)
    if lam.size != family.matrix_size:
        raise InvalidInputError(
            f"partition {lam} has size {lam.size}, family {family} needs {family.matrix_size}")
    mult = Counter(lam.parts)
    if family.kind == "GL":
        return True
    if family.kind == "Orth":
        return all(c % 2 == 0 for v, c in mult.items() if v % 2 == 0)
    if family.kind == "Sp":
        return all(c % 2 == 0 for v, c in mult.items() if v % 2 == 1)
    m, n = family.signature
    odd = odd_part_count(lam)
    return odd >= abs(m - n) and (odd - abs(m - n)) % 2 == 0


@dataclass(frozen=True)
class NilpotentOrbit:
    family: GroupFamily
    lam: Partition
    # very even orthogonal partitions split into two SO-orbits; no criterion reads this
    tag: Optional[str] = None

    def __post_init__(self):
        object.__setattr__(self, "lam", as_partition(self.lam))
        if not validate_partition(self.family, self.lam):
            raise InvalidInputError(f"{self.lam} is not a valid partition for {self.family}")
        if self.tag is not None:
            if self.tag not in ("I", "II"):
                raise InvalidInputError("orbit tag must be 'I' or 'II'")
            if not (self.family.kind == "Orth" and is_very_even(self.lam)):
                raise InvalidInputError("tags apply only to very even orthogonal partitions")

    def to_json(self) -> dict:
        out = self.family.to_json()
        out["lambda"] = self.lam.to_json()
        if self.tag:
            out["tag"] = self.tag
        return out

    @classmethod
    def from_json(cls, data: dict) -> NilpotentOrbit:
        return cls(GroupFamily.from_json(data), Partition(data["lambda"]), data.get("tag"))


def orbit_dim_gl(lam) -> int:
    """Dimension of the GL_n nilpotent orbit: n^2 - sum of squared transposed parts."""
    lam = as_partition(lam)
    n = lam.size
    return n * n - sum(c * c for c in lam.transpose())


def theta_min_orbit_dim(dim_v: int, dim_w: int) -> int:
    """Dimension of the minimal orbit of the symplectic group on Hom(V,W) + Hom(W,V)."""
    if dim_v < 0 or dim_w < 0:
        raise InvalidInputError("dimensions must be non-negative")
    return 2 * dim_v * dim_w


def closure_leq(o1: NilpotentOrbit, o2: NilpotentOrbit) -> bool:
    if o1.family != o2.family:
        raise InvalidInputError(f"cannot compare orbits of {o1.family} and {o2.family}")
    return dominance_leq(o1.lam, o2.lam)
