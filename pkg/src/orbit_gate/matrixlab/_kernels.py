"""Compiled inner loops for F_p slice scans.

A nilpotent N x N matrix is summarised by the set of ranks of its nonzero
powers.  Ranks strictly decrease from N to 0, so that set is a subset of
{1, ..., N-1} and is encoded as the bitmask sum 2^(r-1).  Histograms are
dense arrays of length 2^(N-1) indexed by that key.

Nilpotency is decided by X^N = 0.  Points are screened first by tr(X) and
tr(X^2), which vanish on nilpotents in every characteristic, then by two
Krylov sequences X^k v.  Integer division is the dominant cost at these
sizes, so when the caller certifies that (N(p-1))^N (p-1) fits comfortably
in int64 (``lazy``), products run on the integer lifts and are reduced
only where a residue is actually inspected.
"""

from __future__ import annotations

import numpy as np
from numba import njit

LAZY_LIMIT = 1 << 60


def lazy_ok(n: int, p: int) -> bool:
    """True when integer lifts of X^k v and X^k (k <= n) cannot overflow."""
    return (n * (p - 1)) ** n * (p - 1) + n * p * p < LAZY_LIMIT


@njit(cache=True, nogil=True)
def _rank_mod(a, n, p, inv, work):
    """Rank over F_p of an integer matrix whose entries are non-negative."""
    for i in range(n):
        for j in range(n):
            work[i, j] = a[i, j]
    rank = 0
    for c in range(n):
        piv = -1
        for r in range(rank, n):
            v = work[r, c] % p
            work[r, c] = v
            if v != 0:
                piv = r
                break
        if piv < 0:
            continue
        if piv != rank:
            for j in range(n):
                tmp = work[rank, j]
                work[rank, j] = work[piv, j]
                work[piv, j] = tmp
        f = inv[work[rank, c]]
        for j in range(c, n):
            work[rank, j] = (work[rank, j] % p) * f % p
        for r in range(rank + 1, n):
            g = work[r, c] % p
            if g != 0:
                # adding (p - g) times the pivot row keeps entries non-negative
                h = p - g
                for j in range(c, n):
                    work[r, j] += h * work[rank, j]
        rank += 1
    return rank


@njit(cache=True, nogil=True)
def _matmul_into(a, b, out, n, p, reduce):
    for i in range(n):
        for j in range(n):
            s = 0
            for l in range(n):
                s += a[i, l] * b[l, j]
            out[i, j] = s % p if reduce else s


@njit(cache=True, nogil=True)
def _is_zero_mod(a, n, p):
    for i in range(n):
        for j in range(n):
            if a[i, j] % p != 0:
                return False
    return True


@njit(cache=True, nogil=True)
def _kills_vector(x, n, p, lazy, seed_ones, work):
    """True when x^n v = 0 over F_p, v = e_0 or the all-ones vector."""
    for i in range(n):
        work[0, i] = 1 if (seed_ones or i == 0) else 0
    src = 0
    for _ in range(n):
        dst = 1 - src
        for i in range(n):
            acc = 0
            for j in range(n):
                acc += x[i, j] * work[src, j]
            work[dst, i] = acc if lazy else acc % p
        src = dst
    for i in range(n):
        if work[src, i] % p != 0:
            return False
    return True


@njit(cache=True, nogil=True)
def nilpotent_key(x, n, p, inv, lazy, powers, work):
    """Rank-set key of x (entries in [0, p)) if x^n = 0, else -1.

    powers has shape (n+1, n, n) and work (n, n).
    """
    if n == 0:
        return 0
    t = 0
    for i in range(n):
        t += x[i, i]
    if t % p != 0:
        return -1
    if n == 1:
        return 0 if x[0, 0] % p == 0 else -1
    t2 = 0
    for i in range(n):
        for j in range(n):
            t2 += x[i, j] * x[j, i]
    if t2 % p != 0:
        return -1
    if not _kills_vector(x, n, p, lazy, False, work) or not _kills_vector(x, n, p, lazy, True, work):
        return -1
    for i in range(n):
        for j in range(n):
            powers[0, i, j] = x[i, j]
    # powers[e] holds x^(e+1); stop at the first vanishing power
    e = 0
    while not _is_zero_mod(powers[e], n, p):
        if e + 1 >= n:
            return -1
        _matmul_into(powers[e], x, powers[e + 1], n, p, not lazy)
        e += 1
    # x^1 .. x^e are nonzero, so their ranks are all positive
    key = 0
    for q in range(e):
        r = _rank_mod(powers[q], n, p, inv, work)
        key |= 1 << (r - 1)
    return key


@njit(cache=True, nogil=True)
def scan_exhaustive_chunk(base, dirs, gram, p, outer_start, outer_count, inv, lazy, hist, first):
    """Points base + sum c_l dirs[l] with index sum c_l p^l, c_0 fastest.

    Visits indices outer_start*p .. (outer_start+outer_count)*p - 1.  The
    quadric tr(X^2) is tracked incrementally through the Gram matrix
    gram[l, m] = tr(dirs[l] dirs[m]), so most points cost a few scalar ops.
    All matrices hold residues in [0, p).
    """
    n = base.shape[0]
    d = dirs.shape[0]
    xo = base.copy()
    digits = np.zeros(d, dtype=np.int64)
    idx = outer_start
    for l in range(1, d):
        digits[l] = idx % p
        idx //= p
        if digits[l]:
            for i in range(n):
                for j in range(n):
                    xo[i, j] = (xo[i, j] + digits[l] * dirs[l, i, j]) % p
    s = np.zeros(d, dtype=np.int64)
    for m in range(d):
        acc = 0
        for i in range(n):
            for j in range(n):
                acc += xo[i, j] * dirs[m, j, i]
        s[m] = acc % p
    qo = 0
    for i in range(n):
        for j in range(n):
            qo += xo[i, j] * xo[j, i]
    qo %= p
    # multiples c * dirs[0], reduced once
    mult0 = np.zeros((p, n, n), dtype=np.int64)
    for c in range(p):
        for i in range(n):
            for j in range(n):
                mult0[c, i, j] = c * dirs[0, i, j] % p
    g00 = gram[0, 0]
    x = np.zeros((n, n), dtype=np.int64)
    powers = np.zeros((n + 1, n, n), dtype=np.int64)
    work = np.zeros((n, n), dtype=np.int64)
    for o in range(outer_count):
        lin = 2 * s[0]
        for c0 in range(p):
            if (qo + c0 * (lin + c0 * g00)) % p != 0:
                continue
            for i in range(n):
                for j in range(n):
                    v = xo[i, j] + mult0[c0, i, j]
                    x[i, j] = v - p if v >= p else v
            key = nilpotent_key(x, n, p, inv, lazy, powers, work)
            if key >= 0:
                hist[key] += 1
                if first[key] < 0:
                    first[key] = (outer_start + o) * p + c0
        l = 1
        while l < d:
            # X -> X + D_l: tr(X^2) gains 2 tr(X D_l) + tr(D_l^2)
            qo = (qo + 2 * s[l] + gram[l, l]) % p
            for m in range(d):
                v = s[m] + gram[l, m]
                s[m] = v - p if v >= p else v
            for i in range(n):
                for j in range(n):
                    v = xo[i, j] + dirs[l, i, j]
                    xo[i, j] = v - p if v >= p else v
            digits[l] += 1
            # p steps along one direction return to the start, so a wrap needs no undo
            if digits[l] < p:
                break
            digits[l] = 0
            l += 1


@njit(cache=True, nogil=True)
def scan_sampled_chunk(base, dirs, coords, p, start, inv, lazy, hist, first):
    n = base.shape[0]
    d = dirs.shape[0]
    x = np.zeros((n, n), dtype=np.int64)
    powers = np.zeros((n + 1, n, n), dtype=np.int64)
    work = np.zeros((n, n), dtype=np.int64)
    for s in range(coords.shape[0]):
        for i in range(n):
            for j in range(n):
                x[i, j] = base[i, j]
        for l in range(d):
            c = coords[s, l]
            if c != 0:
                for i in range(n):
                    for j in range(n):
                        x[i, j] += c * dirs[l, i, j]
        for i in range(n):
            for j in range(n):
                x[i, j] %= p
        key = nilpotent_key(x, n, p, inv, lazy, powers, work)
        if key >= 0:
            hist[key] += 1
            if first[key] < 0:
                first[key] = start + s


@njit(cache=True, nogil=True)
def scan_theta_chunk(m, n, p, start, count, inv, lazy_m, lazy_n, hist, first):
    """Pairs X (n x m), Y (m x n); hist[key(YX), key(XY)].

    Digits 0 .. mn-1 are the entries of X row by row, then those of Y.
    """
    d = 2 * m * n
    digits = np.zeros(max(d, 1), dtype=np.int64)
    idx = start
    for l in range(d):
        digits[l] = idx % p
        idx //= p
    yx = np.zeros((m, m), dtype=np.int64)
    xy = np.zeros((n, n), dtype=np.int64)
    pw1 = np.zeros((m + 1, m, m), dtype=np.int64)
    wk1 = np.zeros((m, m), dtype=np.int64)
    pw2 = np.zeros((n + 1, n, n), dtype=np.int64)
    wk2 = np.zeros((n, n), dtype=np.int64)
    off = m * n
    for s in range(count):
        for i in range(m):
            for j in range(m):
                acc = 0
                for l in range(n):
                    acc += digits[off + i * n + l] * digits[l * m + j]
                yx[i, j] = acc % p
        k1 = nilpotent_key(yx, m, p, inv, lazy_m, pw1, wk1)
        if k1 >= 0:
            for i in range(n):
                for j in range(n):
                    acc = 0
                    for l in range(m):
                        acc += digits[i * m + l] * digits[off + l * n + j]
                    xy[i, j] = acc % p
            k2 = nilpotent_key(xy, n, p, inv, lazy_n, pw2, wk2)
            if k2 >= 0:
                hist[k1, k2] += 1
                if first[k1, k2] < 0:
                    first[k1, k2] = start + s
        l = 0
        while l < d:
            digits[l] += 1
            if digits[l] < p:
                break
            digits[l] = 0
            l += 1


def inverse_table(p: int) -> np.ndarray:
    inv = np.zeros(p, dtype=np.int64)
    for a in range(1, p):
        inv[a] = pow(a, -1, p)
    return inv


def key_to_ranks(key: int, n: int) -> list[int]:
    """[N, r_1, ..., 0] from a rank-set key."""
    inner = sorted((b + 1 for b in range(max(n - 1, 0)) if key >> b & 1), reverse=True)
    return [n] + inner + [0]
