from __future__ import annotations

import pytest

from orbit_gate.errors import InvalidInputError
from orbit_gate.matrixlab import slices as S
from orbit_gate.matrixlab.fields import QQ, PrimeField
from orbit_gate.matrixlab.jordan import jordan_type
from orbit_gate.matrixlab.matrix import ExactMatrix, jordan_matrix, rank
from orbit_gate.partitions import Partition


def P(*parts):
    return Partition(parts)


def unit(n, i, j, field=QQ):
    return ExactMatrix.unit(n, i, j, field)


def span_rank(mats, field=QQ):
    return rank([m.flatten() for m in mats], field) if mats else 0


def same_span(a, b, field=QQ):
    return span_rank(a, field) == span_rank(b, field) == span_rank(list(a) + list(b), field)


def test_perp_subspace_examples():
    everything = [unit(2, i, j) for i in range(2) for j in range(2)]
    assert S.perp_subspace(everything, 2) == []
    assert same_span(S.perp_subspace([], 2), everything)
    diag = [unit(2, 0, 0), unit(2, 1, 1)]
    assert same_span(S.perp_subspace(diag, 2), [unit(2, 0, 1), unit(2, 1, 0)])


def test_perp_is_orthogonal_and_complementary():
    basis = S.nilradical_basis([2, 1], QQ)
    perp = S.perp_subspace(basis, 3)
    assert len(perp) == 9 - len(basis)
    for a in basis:
        for b in perp:
            assert S.trace_pair(a, b) == 0


def test_shalika_n1_shape():
    spec = S.shalika_slice(1)
    assert spec.dimension == 2
    # every point is (b, c; 1, -b)
    for coords in [(0, 0), (2, 3), (-1, 5)]:
        x = spec.point(coords)
        assert x.entries[1][0] == 1 and x.entries[0][0] == -x.entries[1][1]


def test_klyachko_1_0_is_scalars():
    spec = S.klyachko_slice(1, 0)
    assert spec.dimension == 1 and spec.base_point.is_zero()
    assert same_span(spec.directions, [ExactMatrix.identity(2)])


def test_whittaker_gl2_shape():
    spec = S.whittaker_slice([1, -1], unit(2, 0, 1))
    assert spec.dimension == 3
    assert spec.base_point == unit(2, 0, 1)
    assert same_span(spec.directions, [unit(2, 0, 0), unit(2, 1, 0), unit(2, 1, 1)])
    with pytest.raises(InvalidInputError):
        S.whittaker_slice([1, -1], unit(2, 1, 0))


def test_slice_dimensions():
    dims = {(1, 1): 4, (1, 2): 8, (2, 0): 6, (2, 1): 11, (1, 3): 13, (2, 2): 17, (3, 0): 15}
    for (n, k), d in dims.items():
        assert S.klyachko_slice(n, k, PrimeField(3)).dimension == d
    assert [S.shalika_slice(n, PrimeField(3)).dimension for n in (1, 2, 3)] == [2, 8, 18]
    assert S.gr_slice(PrimeField(2)).dimension == 20


def test_rs_slice_contents():
    spec = S.rs_slice(2, 2, P(2))
    assert spec.ambient_size == 4
    assert spec.base_point.entries[3][2] == 1
    assert jordan_type(spec.base_point) == P(2, 2)
    with pytest.raises(InvalidInputError):
        S.rs_slice(2, 1, P(3))
    with pytest.raises(InvalidInputError):
        S.rs_slice(2, 0, P(2))
    assert len(S.rs_cases(4)) == sum(1 for _ in S.rs_cases(4))


def test_rs_slice_accepts_explicit_t():
    t = jordan_matrix([2])
    assert S.rs_slice(2, 1, t).params["T"] == [2]
    with pytest.raises(InvalidInputError):
        S.rs_slice(2, 1, jordan_matrix([3]))


def test_bessel_pieces():
    f = PrimeField(5)
    sub = S.bessel_subalgebra(5, 1, f)
    assert sub
    reps = S.bessel_nilpotent_types(5, 1, f)
    # keys drop the 2k - 1 = 1 fixed ones coming from the line X
    for lam, t in reps.items():
        assert jordan_type(t) == Partition(lam.parts + (1,))
    spec = S.bessel_slice_orth(5, 1, next(iter(reps.values())), f)
    assert spec.ambient_size == 5
    with pytest.raises(InvalidInputError):
        S.bessel_nilpotent_types(5, 1, PrimeField(2))
    with pytest.raises(InvalidInputError):
        S.bessel_nilpotent_types(7, 1, PrimeField(3))


def test_parabolic_and_pardim():
    spec = S.parabolic_slice(P(2), P(1, 1))
    assert spec.dimension == 2 * 2 and jordan_type(spec.base_point) == P(2, 1, 1)
    pd = S.pardim_slice(P(2, 1), 2)
    assert pd.dimension == 6 and pd.ambient_size == 5


def test_theta_product_slice():
    spec = S.theta_product_slice(P(1), P(2))
    assert spec.ambient_size == 3 and spec.dimension == 4


def test_dependent_directions_rejected():
    with pytest.raises(InvalidInputError):
        S.SliceSpec(2, ExactMatrix.zeros(2, 2), [unit(2, 0, 1), unit(2, 0, 1).scale(2)], "bad")
