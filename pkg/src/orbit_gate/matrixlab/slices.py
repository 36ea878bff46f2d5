"""Affine matrix slices chi + h^perp for the models, via the trace pairing.

A functional chi on a subalgebra is represented by a matrix chi_hat with
chi(Y) = tr(chi_hat Y).  A slice is chi_hat + span(directions), where the
directions span the trace-orthogonal complement of h inside the ambient
Lie algebra (all of gl_N, or so_N for the Bessel case).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

from ..criteria import (
    ModelVerdict,
    ginzburg_rallis_check,
    klyachko_check,
    parabolic_lr_check,
    rs_bessel_compatible,
    shalika_check,
    whittaker_closure_check,
)
from ..errors import InvalidInputError
from ..partitions import Partition, as_partition, interlace_leq_plus_one, partitions_of
from .fields import QQ, Field, PrimeField, parse_field
from .jordan import jordan_type
from .matrix import ExactMatrix, combine, jordan_matrix, nullspace, rank, solve

Gate = Callable[[Partition], ModelVerdict]


@dataclass
class SliceSpec:
    ambient_size: int
    base_point: ExactMatrix
    directions: list[ExactMatrix]
    label: str
    gate: Optional[Gate] = None
    params: dict = field(default_factory=dict)

    def __post_init__(self):
        n = self.ambient_size
        for m in [self.base_point, *self.directions]:
            if m.shape != (n, n):
                raise InvalidInputError(f"slice matrices must be {n}x{n}")
        if self.directions:
            flat = [d.flatten() for d in self.directions]
            if rank(flat, self.field) != len(flat):
                raise InvalidInputError("slice directions are linearly dependent")

    @property
    def field(self) -> Field:
        return self.base_point.field

    @property
    def dimension(self) -> int:
        return len(self.directions)

    def point(self, coords: Sequence) -> ExactMatrix:
        return combine(coords, self.directions, self.base_point)

    def describe(self) -> dict:
        return {"label": self.label, "ambient_size": self.ambient_size,
                "directions": self.dimension, "field": str(self.field),
                "params": self.params}


def _unit(n: int, i: int, j: int, field: Field) -> ExactMatrix:
    return ExactMatrix.unit(n, i, j, field)


def _pairing_rows(basis: Sequence[ExactMatrix], n: int) -> list[list]:
    # tr(M Y) = sum_ij M_ij Y_ji, so row for Y is vec(Y^T)
    return [[y.entries[j][i] for i in range(n) for j in range(n)] for y in basis]


def _vec_to_matrix(vec: Sequence, n: int, field: Field) -> ExactMatrix:
    return ExactMatrix.from_rows([vec[i * n:(i + 1) * n] for i in range(n)], field, n)


def perp_subspace(basis: Sequence[ExactMatrix], n: int, field: Field | None = None) -> list[ExactMatrix]:
    """Basis of {M in gl_n : tr(M Y) = 0 for all Y in basis}."""
    if field is None:
        field = basis[0].field if basis else QQ
    rows = _pairing_rows(basis, n)
    return [_vec_to_matrix(v, n, field) for v in nullspace(rows, n * n, field)]


def trace_pair(a: ExactMatrix, b: ExactMatrix):
    return (a @ b).trace()


def relative_affine_slice(ambient: Sequence[ExactMatrix], constraints: Sequence[ExactMatrix],
                          targets: Sequence, field: Field) -> tuple[ExactMatrix, list[ExactMatrix]]:
    """Solve for {X in span(ambient) : tr(X Y_j) = targets[j]}.

    Returns a particular solution and a basis of the homogeneous part.
    """
    n = ambient[0].nrows
    gram = [[field(trace_pair(a, y)) for a in ambient] for y in constraints]
    sol = solve(gram, [field(t) for t in targets], len(ambient), field)
    if sol is None:
        raise InvalidInputError("affine slice is empty: constraints are inconsistent")
    base = combine(sol, ambient, ExactMatrix.zeros(n, n, field))
    homog = nullspace(gram, len(ambient), field) if gram else [
        [int(i == j) for j in range(len(ambient))] for i in range(len(ambient))]
    dirs = [combine(c, ambient, ExactMatrix.zeros(n, n, field)) for c in homog]
    return base, dirs


def _block_index(sizes: Sequence[int]) -> list[int]:
    out = []
    for b, s in enumerate(sizes):
        out.extend([b] * s)
    return out


def nilradical_basis(sizes: Sequence[int], field: Field) -> list[ExactMatrix]:
    """E_ij with block(i) < block(j): the standard block upper-triangular nilradical."""
    n = sum(sizes)
    blk = _block_index(sizes)
    return [_unit(n, i, j, field) for i in range(n) for j in range(n) if blk[i] < blk[j]]


def _embed(m: ExactMatrix, n: int, offset: int = 0) -> ExactMatrix:
    rows = [[0] * n for _ in range(n)]
    for i in range(m.nrows):
        for j in range(m.ncols):
            rows[offset + i][offset + j] = m.entries[i][j]
    return ExactMatrix.from_rows(rows, m.field, n)


def _as_field(field) -> Field:
    return parse_field(field) if field is not None else QQ


def rs_slice(n: int, k: int, t, field=QQ) -> SliceSpec:
    """A + T + r^perp in gl_{n+k}: S = gl_n top-left, P with blocks n+1,1,...,1.

    ``t`` is the partition of the nilpotent T in gl_n (used as J(t)) or an
    explicit n x n nilpotent matrix.
    """
    field = _as_field(field)
    if n < 0 or k < 1:
        raise InvalidInputError("Rankin-Selberg slice needs n >= 0, k >= 1")
    big = n + k
    if isinstance(t, ExactMatrix):
        tmat = t.to_field(field)
        if tmat.shape != (n, n):
            raise InvalidInputError(f"T must be {n}x{n}")
        t_type = jordan_type(tmat)
    else:
        t_type = as_partition(t)
        if t_type.size != n:
            raise InvalidInputError(f"T must be a partition of {n}")
        tmat = jordan_matrix(t_type, field)
    s_basis = [_unit(big, i, j, field) for i in range(n) for j in range(n)]
    h = s_basis + nilradical_basis([n + 1] + [1] * (k - 1), field)
    a_rows = [[0] * big for _ in range(big)]
    for r in range(n + 1, n + k):
        a_rows[r][r - 1] = 1
    chi = ExactMatrix.from_rows(a_rows, field, big)
    base = chi + _embed(tmat, big)
    return SliceSpec(big, base, perp_subspace(h, big, field), "rankin-selberg",
                     gate=lambda lam: rs_bessel_compatible(lam, t_type),
                     params={"n": n, "k": k, "T": t_type.to_json()})


def _antidiagonal_gram(n: int, field: Field) -> ExactMatrix:
    return ExactMatrix.from_rows([[int(i + j == n - 1) for j in range(n)] for i in range(n)], field, n)


def orthogonal_algebra_basis(n: int, field: Field) -> list[ExactMatrix]:
    """so_n for the split form with antidiagonal Gram matrix: M^T J + J M = 0."""
    j = _antidiagonal_gram(n, field)
    # the map M -> M^T J + J M is linear in vec(M); build its matrix column by column
    cols = []
    for a in range(n):
        for b in range(n):
            e = _unit(n, a, b, field)
            cols.append((e.transpose() @ j + j @ e).flatten())
    rows = [list(r) for r in zip(*cols)]
    return [_vec_to_matrix(v, n, field) for v in nullspace(rows, n * n, field)]


def symplectic_algebra_basis(two_n: int, field: Field) -> list[ExactMatrix]:
    """sp_{2n} for the form with Gram matrix (0 I; -I 0)."""
    n = two_n // 2
    om = [[0] * two_n for _ in range(two_n)]
    for i in range(n):
        om[i][n + i] = 1
        om[n + i][i] = -1
    omega = ExactMatrix.from_rows(om, field, two_n)
    cols = []
    for a in range(two_n):
        for b in range(two_n):
            e = _unit(two_n, a, b, field)
            cols.append((e.transpose() @ omega + omega @ e).flatten())
    rows = [list(r) for r in zip(*cols)]
    return [_vec_to_matrix(v, two_n, field) for v in nullspace(rows, two_n * two_n, field)]


def _anisotropic_vector(dim_v: int, k: int) -> list[int]:
    m = dim_v - 2 * (k - 1)
    x = [0] * dim_v
    if m % 2:
        x[(dim_v - 1) // 2] = 1
    else:
        x[dim_v // 2 - 1] = 1
        x[dim_v // 2] = 1
    return x


def bessel_subalgebra(dim_v: int, k: int, field) -> list[ExactMatrix]:
    """s = so(X^perp in U): elements of so_N killing W, its dual and the line X."""
    field = _as_field(field)
    so = orthogonal_algebra_basis(dim_v, field)
    killed = [[int(i == a) for i in range(dim_v)] for a in range(k - 1)]
    killed += [[int(i == dim_v - 1 - a) for i in range(dim_v)] for a in range(k - 1)]
    killed.append(_anisotropic_vector(dim_v, k))
    rows = []
    for w in killed:
        images = [b.apply(w) for b in so]
        for coord in range(dim_v):
            rows.append([img[coord] for img in images])
    coeffs = nullspace(rows, len(so), field)
    zero = ExactMatrix.zeros(dim_v, dim_v, field)
    return [combine(c, so, zero) for c in coeffs]


def _bessel_checks(dim_v: int, k: int, field: Field) -> None:
    if k not in (1, 2):
        raise InvalidInputError("Bessel slices are implemented for k in {1, 2}")
    if dim_v - 2 * k + 1 < 1:
        raise InvalidInputError("Bessel slice needs dim V >= 2k")
    if dim_v > 6:
        raise InvalidInputError("Bessel slices are capped at dim V <= 6")
    if isinstance(field, PrimeField) and field.p == 2:
        raise InvalidInputError("orthogonal slices need odd characteristic")


def bessel_nilpotent_types(dim_v: int, k: int, field) -> dict[Partition, ExactMatrix]:
    """One nilpotent T in s per Jordan type, keyed by the type on X^perp in U.

    Found by an exhaustive search of s over the field (dim s <= 6 here).
    """
    from .scan import scan_slice

    field = _as_field(field)
    _bessel_checks(dim_v, k, field)
    s = bessel_subalgebra(dim_v, k, field)
    zero = ExactMatrix.zeros(dim_v, dim_v, field)
    if isinstance(field, PrimeField):
        spec = SliceSpec(dim_v, zero, s, "bessel-s")
        report = scan_slice(spec, budget=field.p ** len(s))
        found = {lam: report.witness_matrix(lam) for lam in report.histogram}
    else:
        found = {jordan_type(zero): zero}
    out = {}
    for lam, mat in found.items():
        out[_strip_ones(lam, 2 * k - 1)] = mat
    return dict(sorted(out.items(), reverse=True))


def _strip_ones(lam: Partition, count: int) -> Partition:
    parts = list(lam.parts)
    for _ in range(count):
        parts.remove(1)
    return Partition(parts)


def bessel_slice_orth(dim_v: int, k: int, t: ExactMatrix, field=QQ) -> SliceSpec:
    """chi + T + r^perp inside so(V), V split of dimension dim_v with antidiagonal form.

    W = span(e_1..e_{k-1}) is isotropic, the anisotropic line X sits in the
    middle of U, and T must be a nilpotent element of s = so(X^perp in U).
    """
    field = _as_field(field)
    _bessel_checks(dim_v, k, field)
    t = t.to_field(field)
    so = orthogonal_algebra_basis(dim_v, field)
    s = bessel_subalgebra(dim_v, k, field)
    if rank([m.flatten() for m in s] + [t.flatten()], field) != len(s):
        raise InvalidInputError("T does not lie in the Bessel subgroup's Lie algebra")
    t_type = _strip_ones(jordan_type(t), 2 * k - 1)
    m = dim_v - 2 * (k - 1)
    sizes = [1] * (k - 1) + [m] + [1] * (k - 1)
    blk = _block_index(sizes)
    # so_N intersected with the strictly block upper triangular matrices
    upper_rows = []
    for i in range(dim_v):
        for j in range(dim_v):
            if blk[i] >= blk[j]:
                upper_rows.append([b.entries[i][j] for b in so])
    zero = ExactMatrix.zeros(dim_v, dim_v, field)
    nil = [combine(c, so, zero) for c in nullspace(upper_rows, len(so), field)]
    x = _anisotropic_vector(dim_v, k)

    def chi(y: ExactMatrix):
        val = field.zero()
        for i in range(k - 2):
            val += y.entries[i][i + 1]
        if k >= 2:
            val += y.apply(x)[k - 2]
        return field(val)

    constraints = s + nil
    targets = [trace_pair(t, y) for y in s] + [chi(y) for y in nil]
    base, dirs = relative_affine_slice(so, constraints, targets, field)
    return SliceSpec(dim_v, base, dirs, "bessel",
                     gate=lambda lam: rs_bessel_compatible(lam, t_type, model="Bessel"),
                     params={"dim_v": dim_v, "k": k, "T": t_type.to_json()})


def klyachko_slice(n: int, k: int, field=QQ) -> SliceSpec:
    """A + h^perp in gl_{2n+k}; k = 0 gives sp_{2n}^perp."""
    field = _as_field(field)
    if n < 0 or k < 0 or 2 * n + k == 0:
        raise InvalidInputError("Klyachko slice needs n, k >= 0 and 2n+k > 0")
    big = 2 * n + k
    sp = [_embed(m, big) for m in symplectic_algebra_basis(2 * n, field)] if n else []
    h = list(sp)
    if k > 0:
        h += [_unit(big, i, 2 * n, field) for i in range(2 * n)]
        h += nilradical_basis([2 * n + 1] + [1] * (k - 1), field)
    a_rows = [[0] * big for _ in range(big)]
    for r in range(2 * n + 1, 2 * n + k):
        a_rows[r][r - 1] = 1
    base = ExactMatrix.from_rows(a_rows, field, big)
    return SliceSpec(big, base, perp_subspace(h, big, field), "klyachko",
                     gate=lambda lam: klyachko_check(lam, n, k), params={"n": n, "k": k})


def shalika_slice(n: int, field=QQ) -> SliceSpec:
    """(0 0; Id 0) + h^perp in gl_{2n}, h = diagonal gl_n plus the upper-right block."""
    field = _as_field(field)
    if n < 1:
        raise InvalidInputError("Shalika slice needs n >= 1")
    big = 2 * n
    h = []
    for i in range(n):
        for j in range(n):
            h.append(_unit(big, i, j, field) + _unit(big, n + i, n + j, field))
    h += nilradical_basis([n, n], field)
    base = ExactMatrix.from_rows([[int(i >= n and j == i - n) for j in range(big)]
                                  for i in range(big)], field, big)
    return SliceSpec(big, base, perp_subspace(h, big, field), "shalika",
                     gate=shalika_check, params={"n": n})


def gr_slice(field=QQ) -> SliceSpec:
    """Ginzburg-Rallis slice in gl_6: h = diagonal gl_2 plus the (2,2,2) nilradical."""
    field = _as_field(field)
    big = 6
    h = []
    for i in range(2):
        for j in range(2):
            h.append(_unit(big, i, j, field) + _unit(big, 2 + i, 2 + j, field)
                     + _unit(big, 4 + i, 4 + j, field))
    h += nilradical_basis([2, 2, 2], field)
    rows = [[0] * big for _ in range(big)]
    for b in (1, 2):
        for i in range(2):
            rows[2 * b + i][2 * (b - 1) + i] = 1
    base = ExactMatrix.from_rows(rows, field, big)
    return SliceSpec(big, base, perp_subspace(h, big, field), "ginzburg-rallis",
                     gate=ginzburg_rallis_check, params={})


def default_whittaker_chi(weights: Sequence[int], field=QQ) -> ExactMatrix:
    """Sum of the E_ab of weight exactly +2."""
    field = _as_field(field)
    n = len(weights)
    return ExactMatrix.from_rows([[int(weights[a] - weights[b] == 2) for b in range(n)]
                                  for a in range(n)], field, n)


def whittaker_slice(weights: Sequence[int], chi: ExactMatrix | None = None, field=QQ) -> SliceSpec:
    """chi_hat + r^perp with r the sum of weight spaces of weight <= -2 for diag(weights)."""
    field = _as_field(field)
    weights = [int(w) for w in weights]
    n = len(weights)
    if n < 1:
        raise InvalidInputError("need at least one weight")
    chi = default_whittaker_chi(weights, field) if chi is None else chi.to_field(field)
    if chi.shape != (n, n):
        raise InvalidInputError("chi must match the number of weights")
    for a in range(n):
        for b in range(n):
            if chi.entries[a][b] != 0 and weights[a] - weights[b] != 2:
                raise InvalidInputError(f"chi has an entry at ({a},{b}) outside weight +2")
    r = [_unit(n, a, b, field) for a in range(n) for b in range(n) if weights[a] - weights[b] <= -2]
    chi_type = jordan_type(chi)
    return SliceSpec(n, chi, perp_subspace(r, n, field), "whittaker",
                     gate=lambda lam: whittaker_closure_check(lam, chi_type),
                     params={"weights": weights, "chi_type": chi_type.to_json(),
                             "chi": chi.to_json()["rows"]})


def parabolic_slice(mu, nu, field=QQ) -> SliceSpec:
    """J(mu) + J(nu) plus the upper-right block: the Levi orbit plus the nilradical."""
    field = _as_field(field)
    mu, nu = as_partition(mu), as_partition(nu)
    a, b = mu.size, nu.size
    big = a + b
    base = ExactMatrix.direct_sum(jordan_matrix(mu, field), jordan_matrix(nu, field)) \
        if big else ExactMatrix.zeros(0, 0, field)
    dirs = nilradical_basis([a, b], field)
    return SliceSpec(big, base, dirs, "parabolic",
                     gate=lambda lam: parabolic_lr_check(lam, mu, nu),
                     params={"mu": mu.to_json(), "nu": nu.to_json()})


def pardim_slice(lam, n: int, field=QQ) -> SliceSpec:
    """(J(lam) A; 0 0) with A ranging over all size(lam) x n matrices."""
    field = _as_field(field)
    lam = as_partition(lam)
    k = lam.size
    big = k + n
    base = _embed(jordan_matrix(lam, field), big) if k else ExactMatrix.zeros(big, big, field)
    dirs = [_unit(big, i, k + j, field) for i in range(k) for j in range(n)]

    return SliceSpec(big, base, dirs, "pardim", gate=_interlace_gate(lam),
                     params={"lambda": lam.to_json(), "n": n})


def _interlace_gate(lam: Partition) -> Gate:
    def gate(lp: Partition) -> ModelVerdict:
        ok = interlace_leq_plus_one(lam, lp)
        return ModelVerdict("Interlace", ok, [] if ok else [0],
                            f"{lp} vs {lam}: need lam_i <= lam'_i <= lam_i + 1")
    return gate


def torus_slice(n: int = 2, field=QQ) -> SliceSpec:
    """Perp of the diagonal torus: matrices with zero diagonal."""
    field = _as_field(field)
    diag = [_unit(n, i, i, field) for i in range(n)]
    return SliceSpec(n, ExactMatrix.zeros(n, n, field), perp_subspace(diag, n, field), "torus",
                     params={"n": n})


def theta_product_slice(lam1, lam2, field=QQ) -> SliceSpec:
    """The pairs (X, Y) as block off-diagonal matrices (0 Y; X 0) in gl(V + W).

    Sizes come from lam1 (dim V) and lam2 (dim W); scanned with
    :func:`orbit_gate.matrixlab.scan.scan_theta_pairs`.
    """
    field = _as_field(field)
    lam1, lam2 = as_partition(lam1), as_partition(lam2)
    m, n = lam1.size, lam2.size
    big = m + n
    dirs = [_unit(big, m + i, j, field) for i in range(n) for j in range(m)]
    dirs += [_unit(big, i, m + j, field) for i in range(m) for j in range(n)]
    return SliceSpec(big, ExactMatrix.zeros(big, big, field), dirs, "theta",
                     params={"lambda1": lam1.to_json(), "lambda2": lam2.to_json(),
                             "dim_v": m, "dim_w": n})


def rs_cases(max_total: int) -> list[tuple[int, int, Partition]]:
    """(n, k, T) with n >= 1, k >= 1, n + k <= max_total, T over all partitions of n."""
    return [(n, k, t) for total in range(2, max_total + 1) for n in range(1, total)
            for k in [total - n] for t in partitions_of(n)]
