"""Jordan types of nilpotent matrices and constructive witnesses.

The Jordan type is read off ranks of powers: the i-th column length of the
Young diagram is rank(X^{i-1}) - rank(X^i).  Over Q every computation runs
on an integer multiple of the matrix, which has the same type and the same
invariant subspaces, so no fractions appear in the hot loops.
"""

from __future__ import annotations

import random
from fractions import Fraction
from math import lcm
from typing import Sequence

from ..criteria import theta_match
from ..errors import InvalidInputError
from ..partitions import Partition, as_partition, interlace_leq_plus_one, pointwise_min, transpose
from .fields import QQ, Field, PrimeField
from .matrix import ExactMatrix, _rank_integer, _rank_mod_p, jordan_matrix


def _int_rows(x: ExactMatrix) -> tuple[list[list[int]], int | None]:
    if isinstance(x.field, PrimeField):
        return [list(r) for r in x.entries], x.field.p
    den = lcm(1, *(Fraction(v).denominator for r in x.entries for v in r))
    return [[int(Fraction(v) * den) for v in r] for r in x.entries], None


def _mul(a: list[list[int]], b: list[list[int]], p: int | None) -> list[list[int]]:
    cols = list(zip(*b))
    if p is None:
        return [[sum(x * y for x, y in zip(r, c)) for c in cols] for r in a]
    return [[sum(x * y for x, y in zip(r, c)) % p for c in cols] for r in a]


def _rank(rows: list[list[int]], p: int | None) -> int:
    if not rows or not rows[0]:
        return 0
    return _rank_mod_p(rows, p) if p else _rank_integer(rows)


def _is_zero(rows) -> bool:
    return all(v == 0 for r in rows for v in r)


def _power_ranks(a: list[list[int]], p: int | None) -> list[int]:
    """[rank X^0, rank X^1, ..., 0]; raises if X is not nilpotent."""
    n = len(a)
    ranks = [n]
    power = a
    for _ in range(n):
        if _is_zero(power):
            ranks.append(0)
            return ranks
        ranks.append(_rank(power, p))
        power = _mul(power, a, p)
    if _is_zero(power):
        ranks.append(0)
        return ranks
    raise InvalidInputError("matrix is not nilpotent (X^N != 0)")


def _type_from_ranks(ranks: Sequence[int]) -> Partition:
    cols = [ranks[i - 1] - ranks[i] for i in range(1, len(ranks)) if ranks[i - 1] > ranks[i]]
    return transpose(Partition(cols))


def is_nilpotent(x: ExactMatrix) -> bool:
    if not x.is_square:
        return False
    a, p = _int_rows(x)
    n = len(a)
    power = a
    # X^N = 0 via repeated squaring, never eigenvalues
    k = 1
    while k < n:
        power = _mul(power, power, p)
        k *= 2
    return n == 0 or _is_zero(power)


def jordan_type(x: ExactMatrix) -> Partition:
    """Partition of Jordan block sizes of a nilpotent square matrix."""
    if not x.is_square:
        raise InvalidInputError(f"Jordan type needs a square matrix, got {x.shape}")
    if x.nrows == 0:
        return Partition()
    a, p = _int_rows(x)
    return _type_from_ranks(_power_ranks(a, p))


def _random_invertible(n: int, field: Field, rng: random.Random) -> list[list[int]]:
    while True:
        if isinstance(field, PrimeField):
            g = [[rng.randrange(field.p) for _ in range(n)] for _ in range(n)]
            if _rank_mod_p(g, field.p) == n:
                return g
        else:
            g = [[rng.randint(-3, 3) for _ in range(n)] for _ in range(n)]
            if _rank_integer(g) == n:
                return g


def _scaled_inverse(g: list[list[int]], p: int | None) -> tuple[list[list[int]], int]:
    """(d * g^-1, d) with integer entries, by fraction-free Gauss-Jordan.

    Over F_p the scale is 1 and entries are reduced mod p.  Over Q every
    Bareiss division by the previous pivot is exact.
    """
    n = len(g)
    m = [list(r) + [int(i == j) for j in range(n)] for i, r in enumerate(g)]
    prev = 1
    for k in range(n):
        piv = next(i for i in range(k, n) if m[i][k] != 0)
        m[k], m[piv] = m[piv], m[k]
        pk = m[k]
        if p:
            inv = pow(pk[k], p - 2, p)
            m[k] = pk = [x * inv % p for x in pk]
            for i in range(n):
                if i != k and m[i][k]:
                    f = m[i][k]
                    m[i] = [(a - f * b) % p for a, b in zip(m[i], pk)]
        else:
            d = pk[k]
            for i in range(n):
                if i != k:
                    f = m[i][k]
                    m[i] = [(d * a - f * b) // prev for a, b in zip(m[i], pk)]
            prev = d
    if p:
        return [r[n:] for r in m], 1
    # the left block is now prev * I
    return [r[n:] for r in m], prev


def random_nilpotent(lam, field: Field = QQ, seed: int = 0) -> ExactMatrix:
    """g J(lam) g^-1 for a seeded random invertible g.

    Entries of g lie in [-3, 3] over Q and are uniform over F_p; singular
    draws are rejected.
    """
    lam = as_partition(lam)
    n = lam.size
    rng = random.Random(f"{lam}|{field}|{seed}")
    g = _random_invertible(n, field, rng)
    p = field.p if isinstance(field, PrimeField) else None
    ginv, d = _scaled_inverse(g, p)
    # g J: column j of g J is column j-1 of g when J has a 1 at (j-1, j)
    j = jordan_matrix(lam, field)
    links = [(a, b) for a in range(n) for b in range(n) if j.entries[a][b]]
    gj = [[0] * n for _ in range(n)]
    for a, b in links:
        for i in range(n):
            gj[i][b] = g[i][a]
    prod = [[sum(x * y for x, y in zip(row, col)) for col in zip(*ginv)] for row in gj]
    if p:
        return ExactMatrix.from_rows(prod, field, n)
    return ExactMatrix.from_rows([[Fraction(x, d) for x in row] for row in prod], field, n)


def krylov_basis_rank(y: ExactMatrix, v: Sequence) -> int:
    a, p = _int_rows(y)
    vec = _vec_ints(v, y.field)
    cols = _krylov(a, vec, p)
    return _rank([list(r) for r in zip(*cols)], p) if cols else 0


def _vec_ints(v: Sequence, field: Field) -> list[int]:
    if isinstance(field, PrimeField):
        return [field(x) for x in v]
    vals = [Fraction(x) for x in v]
    den = lcm(1, *(x.denominator for x in vals))
    return [int(x * den) for x in vals]


def _krylov(a: list[list[int]], v: list[int], p: int | None) -> list[list[int]]:
    cols = []
    cur = v
    for _ in range(len(a)):
        if all(x == 0 for x in cur):
            break
        cols.append(cur)
        cur = [sum(x * y for x, y in zip(r, cur)) for r in a]
        if p:
            cur = [x % p for x in cur]
    return cols


def cyclic_quotient_type(y: ExactMatrix, v: Sequence) -> tuple[Partition, Partition]:
    """Types of Y and of the map Y induces on V / span{Y^i v}.

    The quotient ranks come from rank(Y'^j) = rank([Y^j | K]) - dim span K,
    where K holds the Krylov vectors; this never uses a quotient basis.
    """
    if not y.is_square or len(v) != y.nrows:
        raise InvalidInputError("need a square matrix and a vector of matching length")
    a, p = _int_rows(y)
    n = len(a)
    nu_ranks = _power_ranks(a, p)
    nu = _type_from_ranks(nu_ranks)
    kcols = _krylov(a, _vec_ints(v, y.field), p)
    krows = [list(r) for r in zip(*kcols)] if kcols else [[] for _ in range(n)]
    dim_v1 = _rank(krows, p) if kcols else 0
    quotient_ranks = []
    power = [[int(i == j) for j in range(n)] for i in range(n)]
    for _ in range(n + 1):
        stacked = [pr + kr for pr, kr in zip(power, krows)]
        quotient_ranks.append(_rank(stacked, p) - dim_v1 if stacked else 0)
        if quotient_ranks[-1] == 0:
            break
        power = _mul(power, a, p)
    nu_prime = _type_from_ranks(quotient_ranks)
    nt, npt = transpose(nu), transpose(nu_prime)
    for i in range(1, max(len(nt), len(npt)) + 1):
        if nt.part(i) - npt.part(i) not in (0, 1):
            raise RuntimeError(f"quotient bound violated at i={i}: nu={nu} nu'={nu_prime}")
    return nu, nu_prime


def _chain_heads(lam: Partition) -> list[int]:
    """0-based index of the generating vector of each Jordan chain of J(lam)."""
    heads, start = [], 0
    for b in lam:
        heads.append(start + b - 1)
        start += b
    return heads


def interlace_witness(lam, lam_prime, field: Field = QQ) -> ExactMatrix:
    """A (size(lam) x n) matrix A with (J(lam) A; 0 0) of type lam_prime.

    Each new basis vector is sent to the generator of the chain whose length
    grows by one, or to 0 when that chain is new.
    """
    lam, lam_prime = as_partition(lam), as_partition(lam_prime)
    if not interlace_leq_plus_one(lam, lam_prime):
        raise InvalidInputError(f"{lam_prime} does not interlace {lam} (lam_i <= lam'_i <= lam_i+1)")
    k, n = lam.size, lam_prime.size - lam.size
    grown = [i for i in range(1, len(lam_prime) + 1) if lam_prime.part(i) == lam.part(i) + 1]
    assert len(grown) == n
    heads = _chain_heads(lam)
    rows = [[0] * n for _ in range(k)]
    for j, i in enumerate(grown):
        if lam.part(i) > 0:
            rows[heads[i - 1]][j] = 1
    return ExactMatrix.from_rows(rows, field, n)


def extended_matrix(k_mat: ExactMatrix, a: ExactMatrix) -> ExactMatrix:
    """(K A; 0 0) as a square matrix of size rows(K) + cols(A)."""
    n = a.ncols
    return ExactMatrix.block([
        [k_mat, a],
        [ExactMatrix.zeros(n, k_mat.ncols, k_mat.field), ExactMatrix.zeros(n, n, k_mat.field)],
    ])


def _chain_reversal(lam: Partition, field: Field) -> ExactMatrix:
    n = lam.size
    rows = [[0] * n for _ in range(n)]
    start = 0
    for b in lam:
        for i in range(b):
            rows[start + i][start + b - 1 - i] = 1
        start += b
    return ExactMatrix.from_rows(rows, field, n)


def theta_witness(lam1, lam2, field: Field = QQ) -> tuple[ExactMatrix, ExactMatrix]:
    """(X, Y) with X: V -> W, Y: W -> V, YX of type lam1 and XY of type lam2."""
    lam1, lam2 = as_partition(lam1), as_partition(lam2)
    if not theta_match(lam1, lam2).passed:
        raise InvalidInputError(f"{lam1} and {lam2} do not match (need |diff| <= 1)")
    m, n = lam1.size, lam2.size
    kappa = pointwise_min(lam1, lam2)
    k = kappa.size
    x_rows = [[int(i == j and i < k) for j in range(m)] for i in range(n)]
    x = ExactMatrix.from_rows(x_rows, field, m)
    kmat = jordan_matrix(kappa, field)
    a = interlace_witness(kappa, lam2, field)
    a1 = interlace_witness(kappa, lam1, field)
    b = a1.transpose() @ _chain_reversal(kappa, field)
    y = ExactMatrix.block([
        [kmat, a],
        [b, ExactMatrix.zeros(m - k, n - k, field)],
    ]) if m and n else ExactMatrix.zeros(m, n, field)
    if jordan_type(y @ x) != lam1 or jordan_type(x @ y) != lam2:
        raise RuntimeError(f"theta witness failed for {lam1}, {lam2}")
    return x, y
