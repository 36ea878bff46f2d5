"""Dense exact matrices over Q or F_p, with rank, row reduction and nullspaces."""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Iterable, Sequence

from ..errors import InvalidInputError
from .fields import QQ, Field, PrimeField, Rationals, parse_field


@dataclass(frozen=True)
class ExactMatrix:
    field: Field
    nrows: int
    ncols: int
    entries: tuple[tuple, ...]

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], field: Field = QQ, ncols: int | None = None) -> ExactMatrix:
        field = parse_field(field)
        data = tuple(tuple(field(x) for x in row) for row in rows)
        if ncols is None:
            ncols = len(data[0]) if data else 0
        if any(len(r) != ncols for r in data):
            raise InvalidInputError("ragged matrix rows")
        return cls(field, len(data), ncols, data)

    @classmethod
    def zeros(cls, nrows: int, ncols: int, field: Field = QQ) -> ExactMatrix:
        z = field.zero()
        return cls(field, nrows, ncols, tuple((z,) * ncols for _ in range(nrows)))

    @classmethod
    def identity(cls, n: int, field: Field = QQ) -> ExactMatrix:
        return cls.from_rows([[int(i == j) for j in range(n)] for i in range(n)], field, n)

    @classmethod
    def unit(cls, n: int, i: int, j: int, field: Field = QQ) -> ExactMatrix:
        """Elementary matrix E_ij (0-based) of size n x n."""
        return cls.from_rows([[int((a, b) == (i, j)) for b in range(n)] for a in range(n)], field, n)

    @classmethod
    def block(cls, blocks: Sequence[Sequence[ExactMatrix]]) -> ExactMatrix:
        """Assemble a block matrix; every block row must have equal heights."""
        field = blocks[0][0].field
        rows = []
        for brow in blocks:
            h = brow[0].nrows
            for i in range(h):
                row = []
                for b in brow:
                    if b.nrows != h:
                        raise InvalidInputError("block heights differ within a block row")
                    row.extend(b.entries[i])
                rows.append(row)
        ncols = sum(b.ncols for b in blocks[0])
        return cls(field, len(rows), ncols, tuple(tuple(r) for r in rows))

    @classmethod
    def direct_sum(cls, *mats: ExactMatrix) -> ExactMatrix:
        field = mats[0].field
        n = sum(m.nrows for m in mats)
        c = sum(m.ncols for m in mats)
        rows = [[field.zero()] * c for _ in range(n)]
        r0 = c0 = 0
        for m in mats:
            for i in range(m.nrows):
                for j in range(m.ncols):
                    rows[r0 + i][c0 + j] = m.entries[i][j]
            r0 += m.nrows
            c0 += m.ncols
        return cls(field, n, c, tuple(tuple(r) for r in rows))

    @property
    def shape(self) -> tuple[int, int]:
        return self.nrows, self.ncols

    @property
    def is_square(self) -> bool:
        return self.nrows == self.ncols

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def _wrap(self, rows) -> ExactMatrix:
        if isinstance(self.field, PrimeField):
            p = self.field.p
            rows = [[x % p for x in r] for r in rows]
        nrows = len(rows)
        ncols = len(rows[0]) if rows else self.ncols
        return ExactMatrix(self.field, nrows, ncols, tuple(tuple(r) for r in rows))

    def _check_same(self, other: ExactMatrix) -> None:
        if self.field != other.field:
            raise InvalidInputError(f"field mismatch: {self.field} vs {other.field}")

    def __add__(self, other: ExactMatrix) -> ExactMatrix:
        self._check_same(other)
        if self.shape != other.shape:
            raise InvalidInputError("shape mismatch in addition")
        return self._wrap([[a + b for a, b in zip(r, s)] for r, s in zip(self.entries, other.entries)])

    def __sub__(self, other: ExactMatrix) -> ExactMatrix:
        return self + (-other)

    def __neg__(self) -> ExactMatrix:
        return self._wrap([[-a for a in r] for r in self.entries])

    def scale(self, c) -> ExactMatrix:
        c = self.field(c)
        return self._wrap([[c * a for a in r] for r in self.entries])

    def __matmul__(self, other: ExactMatrix) -> ExactMatrix:
        self._check_same(other)
        if self.ncols != other.nrows:
            raise InvalidInputError(f"cannot multiply {self.shape} by {other.shape}")
        cols = list(zip(*other.entries)) if other.nrows else [()] * other.ncols
        zero = self.field.zero()
        out = [[sum((a * b for a, b in zip(r, c)), zero) for c in cols] for r in self.entries]
        if not out:
            return ExactMatrix(self.field, 0, other.ncols, ())
        if other.ncols == 0:
            return ExactMatrix(self.field, self.nrows, 0, tuple(() for _ in range(self.nrows)))
        return self._wrap(out)

    def __pow__(self, k: int) -> ExactMatrix:
        if not self.is_square or k < 0:
            raise InvalidInputError("powers need a square matrix and k >= 0")
        result = ExactMatrix.identity(self.nrows, self.field)
        base = self
        while k:
            if k & 1:
                result = result @ base
            base = base @ base
            k >>= 1
        return result

    def transpose(self) -> ExactMatrix:
        if self.nrows == 0:
            return ExactMatrix(self.field, self.ncols, 0, tuple(() for _ in range(self.ncols)))
        return ExactMatrix(self.field, self.ncols, self.nrows, tuple(zip(*self.entries)))

    @property
    def T(self) -> ExactMatrix:
        return self.transpose()

    def trace(self):
        return self._reduce(sum((self.entries[i][i] for i in range(min(self.shape))), self.field.zero()))

    def _reduce(self, x):
        return x % self.field.p if isinstance(self.field, PrimeField) else x

    def is_zero(self) -> bool:
        return all(x == 0 for r in self.entries for x in r)

    def rank(self) -> int:
        return rank(self.entries, self.field)

    def columns(self) -> list[tuple]:
        return list(zip(*self.entries)) if self.nrows else [()] * self.ncols

    def apply(self, vec: Sequence) -> tuple:
        zero = self.field.zero()
        return tuple(self._reduce(sum((a * b for a, b in zip(r, vec)), zero)) for r in self.entries)

    def flatten(self) -> tuple:
        return tuple(x for r in self.entries for x in r)

    def to_field(self, field: Field) -> ExactMatrix:
        return ExactMatrix.from_rows(self.entries, field, self.ncols)

    def to_json(self) -> dict:
        def enc(x):
            if isinstance(x, Fraction):
                return x.numerator if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
            return int(x)
        return {"rows": [[enc(x) for x in r] for r in self.entries], "field": str(self.field)}

    @classmethod
    def from_json(cls, data) -> ExactMatrix:
        if isinstance(data, str):
            data = json.loads(data)
        if isinstance(data, list):
            data = {"rows": data}
        if "rows" not in data:
            raise InvalidInputError("matrix JSON needs a 'rows' key")
        return cls.from_rows(data["rows"], parse_field(data.get("field", "Q")))

    def __str__(self) -> str:
        return "\n".join(" ".join(str(x) for x in r) for r in self.entries)


def jordan_matrix(lam, field: Field = QQ) -> ExactMatrix:
    """Block-diagonal nilpotent matrix J(lam) with ones on the superdiagonal.

    In each block the last basis vector generates the chain and the first
    is killed.
    """
    from ..partitions import as_partition

    lam = as_partition(lam)
    n = lam.size
    rows = [[0] * n for _ in range(n)]
    start = 0
    for b in lam:
        for i in range(b - 1):
            rows[start + i][start + i + 1] = 1
        start += b
    return ExactMatrix.from_rows(rows, field, n)


def _rank_mod_p(rows: Sequence[Sequence[int]], p: int) -> int:
    m = [[x % p for x in r] for r in rows]
    nrows = len(m)
    ncols = len(m[0]) if m else 0
    rank = 0
    for c in range(ncols):
        piv = next((r for r in range(rank, nrows) if m[r][c]), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        inv = pow(m[rank][c], -1, p)
        prow = [x * inv % p for x in m[rank]]
        m[rank] = prow
        for r in range(rank + 1, nrows):
            f = m[r][c]
            if f:
                row = m[r]
                m[r] = [(a - f * b) % p for a, b in zip(row, prow)]
        rank += 1
        if rank == nrows:
            break
    return rank


def _rank_integer(rows: list[list[int]]) -> int:
    # fraction-free (Bareiss) elimination; every division is exact
    m = [list(r) for r in rows]
    nrows = len(m)
    ncols = len(m[0]) if m else 0
    rank, prev = 0, 1
    for c in range(ncols):
        piv = next((r for r in range(rank, nrows) if m[r][c]), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        pv = m[rank][c]
        prow = m[rank]
        for r in range(rank + 1, nrows):
            row = m[r]
            f = row[c]
            m[r] = [(pv * row[j] - f * prow[j]) // prev if j > c else 0 for j in range(ncols)]
        prev = pv
        rank += 1
        if rank == nrows:
            break
    return rank


def rank(rows: Sequence[Sequence], field: Field) -> int:
    rows = [list(r) for r in rows]
    if not rows or not rows[0]:
        return 0
    if isinstance(field, PrimeField):
        return _rank_mod_p(rows, field.p)
    ints = []
    for r in rows:
        den = lcm(*(Fraction(x).denominator for x in r))
        ints.append([int(Fraction(x) * den) for x in r])
    return _rank_integer(ints)


def rref(rows: Sequence[Sequence], field: Field) -> tuple[list[list], list[int]]:
    """Reduced row echelon form and pivot columns, over ``field``."""
    m = [[field(x) for x in r] for r in rows]
    nrows = len(m)
    ncols = len(m[0]) if m else 0
    p = field.p if isinstance(field, PrimeField) else None
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, nrows) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = field.inv(m[r][c])
        m[r] = [x * inv % p for x in m[r]] if p else [x * inv for x in m[r]]
        for i in range(nrows):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                if p:
                    m[i] = [(a - f * b) % p for a, b in zip(m[i], m[r])]
                else:
                    m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return m[:r], pivots


def nullspace(rows: Sequence[Sequence], ncols: int, field: Field) -> list[list]:
    """Basis of {x : rows @ x = 0}, one vector per free column, in column order."""
    reduced, pivots = rref(rows, field) if rows else ([], [])
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fcol in free:
        vec = [field.zero()] * ncols
        vec[fcol] = field.one()
        for row, pc in zip(reduced, pivots):
            vec[pc] = field(-row[fcol])
        basis.append(vec)
    return basis


def solve(rows: Sequence[Sequence], rhs: Sequence, ncols: int, field: Field) -> list | None:
    """One solution of rows @ x = rhs (free variables zero), or None."""
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    if not aug:
        return [field.zero()] * ncols
    reduced, pivots = rref(aug, field)
    if ncols in pivots:
        return None
    x = [field.zero()] * ncols
    for row, pc in zip(reduced, pivots):
        x[pc] = row[ncols]
    return x


def combine(coeffs: Iterable, mats: Sequence[ExactMatrix], base: ExactMatrix) -> ExactMatrix:
    """base + sum_i coeffs[i] * mats[i]."""
    field = base.field
    acc = [list(r) for r in base.entries]
    for c, m in zip(coeffs, mats):
        c = field(c)
        if c == 0:
            continue
        for i, row in enumerate(m.entries):
            arow = acc[i]
            for j, x in enumerate(row):
                if x:
                    arow[j] += c * x
    return base._wrap(acc)


def is_rationals(field: Field) -> bool:
    return isinstance(field, Rationals)
