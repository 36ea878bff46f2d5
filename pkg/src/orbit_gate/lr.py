"""Littlewood-Richardson coefficients by LR-tableau enumeration.

``c^lam_{mu,nu}`` counts semistandard fillings of the skew shape lam/mu
with content nu whose reverse reading word (rows top to bottom, each row
right to left) is a lattice word.  Cells are filled in reading order with
backtracking; the row and column constraints prune early.
"""

from __future__ import annotations

from functools import lru_cache

from .errors import InvalidInputError
from .partitions import Partition, as_partition, partitions_of

MAX_SIZE = 24


def _contains(lam: Partition, mu: Partition) -> bool:
    return len(mu) <= len(lam) and all(lam.part(i + 1) >= m for i, m in enumerate(mu))


@lru_cache(maxsize=65536)
def _lr(lam: tuple[int, ...], mu: tuple[int, ...], nu: tuple[int, ...]) -> int:
    # cells in reading order: row r, columns right to left, excluding mu
    cells = []
    for r, row_len in enumerate(lam):
        start = mu[r] if r < len(mu) else 0
        for c in range(row_len - 1, start - 1, -1):
            cells.append((r, c))
    if not cells:
        return 1
    filling: dict[tuple[int, int], int] = {}
    counts = [0] * (len(nu) + 1)
    total = 0

    def rec(pos: int) -> None:
        nonlocal total
        if pos == len(cells):
            total += 1
            return
        r, c = cells[pos]
        hi = len(nu)
        right = filling.get((r, c + 1))
        if right is not None:
            hi = min(hi, right)
        above = filling.get((r - 1, c))
        lo = above + 1 if above is not None else 1
        # a cell in row r can hold at most r+1 (column strictness + lattice)
        hi = min(hi, r + 1)
        for v in range(lo, hi + 1):
            if counts[v] >= nu[v - 1]:
                continue
            if v > 1 and counts[v] + 1 > counts[v - 1]:
                continue
            counts[v] += 1
            filling[(r, c)] = v
            rec(pos + 1)
            del filling[(r, c)]
            counts[v] -= 1

    rec(0)
    return total


def lr_coefficient(lam, mu, nu) -> int:
    """The LR coefficient; 0 for size mismatch or when mu is not inside lam."""
    lam, mu, nu = as_partition(lam), as_partition(mu), as_partition(nu)
    if lam.size != mu.size + nu.size or not _contains(lam, mu) or not _contains(lam, nu):
        return 0
    if lam.size > MAX_SIZE:
        raise InvalidInputError(f"LR enumeration is capped at size {MAX_SIZE}")
    return _lr(lam.parts, mu.parts, nu.parts)


def lr_support(mu, nu) -> list[Partition]:
    """Partitions lam with c^lam_{mu,nu} > 0, sorted descending."""
    mu, nu = as_partition(mu), as_partition(nu)
    n = mu.size + nu.size
    out = [lam for lam in partitions_of(n) if lr_coefficient(lam, mu, nu) > 0]
    return sorted(out, reverse=True)
