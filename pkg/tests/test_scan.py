from __future__ import annotations

from collections import Counter
from itertools import product

import pytest
from oracles import jordan_type_oracle

from orbit_gate.errors import InvalidInputError
from orbit_gate.matrixlab import slices as S
from orbit_gate.matrixlab.fields import QQ, PrimeField
from orbit_gate.matrixlab.jordan import jordan_type
from orbit_gate.matrixlab.scan import default_budget, scan_slice, scan_theta_pairs
from orbit_gate.partitions import Partition


def P(*parts):
    return Partition(parts)


def brute_histogram(spec):
    p = spec.field.p
    hist = Counter()
    for coords in product(range(p), repeat=spec.dimension):
        rows = [list(r) for r in spec.point(coords).entries]
        lam = jordan_type_oracle(rows, p)
        if lam is not None:
            hist[Partition(lam)] += 1
    return dict(hist)


F2, F3, F5, F7 = (PrimeField(p) for p in (2, 3, 5, 7))

SMALL = [
    lambda: S.shalika_slice(1, F3),
    lambda: S.klyachko_slice(1, 1, F3),
    lambda: S.klyachko_slice(2, 0, F2),
    lambda: S.rs_slice(1, 1, P(1), F3),
    lambda: S.rs_slice(2, 1, P(2), F2),
    lambda: S.rs_slice(1, 2, P(1), F2),
    lambda: S.whittaker_slice([2, 0, -2], None, F3),
    lambda: S.parabolic_slice(P(1), P(1), F5),
    lambda: S.pardim_slice(P(2, 1), 1, F3),
    lambda: S.torus_slice(2, F7),
    lambda: S.shalika_slice(2, F2),
]


@pytest.mark.parametrize("make", SMALL)
def test_kernel_matches_brute_force(make):
    spec = make()
    report = scan_slice(spec)
    assert report.mode == "exhaustive"
    assert report.histogram == brute_histogram(spec)
    assert report.nilpotent_count == sum(report.histogram.values())
    assert report.points_visited == spec.field.p ** spec.dimension
    for lam, w in report.witnesses.items():
        assert jordan_type(w) == lam


def test_frozen_small_histograms():
    # values computed by brute_histogram above and frozen here
    assert scan_slice(S.shalika_slice(1, F3)).histogram == {P(2): 3}
    assert scan_slice(S.klyachko_slice(1, 0, F5)).histogram == {P(1, 1): 1}
    assert scan_slice(S.torus_slice(2, F5)).histogram == {P(2): 8, P(1, 1): 1}


def test_trace_reduction_counts():
    spec = S.klyachko_slice(1, 1, F3)
    report = scan_slice(spec)
    assert report.points_visited == 3 ** 4
    assert report.points_evaluated in (3 ** 3, 3 ** 4)


def test_sampled_mode_witnesses_are_genuine():
    spec = S.klyachko_slice(2, 1, F5)
    report = scan_slice(spec, budget=20000, seed=3)
    assert report.mode == "sampled" and report.seed == 3
    assert report.points_visited == 20000
    for lam, w in report.witnesses.items():
        assert jordan_type_oracle([list(r) for r in w.entries], 5) == lam.parts


def test_rational_sampling():
    spec = S.whittaker_slice([1, -1], None, QQ)
    report = scan_slice(spec, budget=3000, seed=5)
    assert report.mode == "sampled" and report.field == "Q"
    for lam, w in report.witnesses.items():
        assert jordan_type(w) == lam
    assert not report.violations


def test_determinism_across_workers():
    specs = [S.klyachko_slice(2, 1, F3), S.shalika_slice(2, F5)]
    for spec in specs:
        outs = {w: scan_slice(spec, budget=100000, seed=11, workers=w).to_json() for w in (1, 4, 8)}
        assert outs[1] == outs[4] == outs[8]


def test_advisory_flag_and_violations():
    report = scan_slice(S.gr_slice(F2), budget=1 << 20)
    assert report.advisory
    assert report.types == {P(6), P(5, 1), P(3, 3)}
    assert report.histogram == {P(6): 24576, P(5, 1): 12288, P(3, 3): 4096}
    assert not report.violations and not report.authoritative_failure


def test_gate_violation_is_reported_with_witness():
    spec = S.klyachko_slice(1, 1, F3)
    spec.gate = lambda lam: S.ModelVerdict("Klyachko", False, [0], "forced")
    report = scan_slice(spec)
    assert report.violations and report.advisory
    assert all(v["witness"] for v in report.violations)
    assert not report.authoritative_failure


def test_budget_validation(monkeypatch):
    spec = S.shalika_slice(1, F3)
    with pytest.raises(InvalidInputError):
        scan_slice(spec, budget=0)
    with pytest.raises(InvalidInputError):
        scan_slice(spec, workers=0)
    with pytest.raises(InvalidInputError):
        scan_slice(spec, field=5)
    monkeypatch.setenv("ORBIT_GATE_BUDGET", "4")
    assert default_budget() == 4
    assert scan_slice(spec).mode == "sampled"
    monkeypatch.setenv("ORBIT_GATE_BUDGET", "lots")
    with pytest.raises(InvalidInputError):
        default_budget()


def test_theta_pairs_brute_force():
    report = scan_theta_pairs(1, 2, 3)
    hist = Counter()
    for flat in product(range(3), repeat=4):
        x = [[flat[0]], [flat[1]]]
        y = [[flat[2], flat[3]]]
        yx = [[sum(a * b for a, b in zip(y[0], [x[0][0], x[1][0]])) % 3]]
        xy = [[(x[i][0] * y[0][j]) % 3 for j in range(2)] for i in range(2)]
        t1, t2 = jordan_type_oracle(yx, 3), jordan_type_oracle(xy, 3)
        if t1 is not None and t2 is not None:
            hist[(Partition(t1), Partition(t2))] += 1
    assert report.pair_histogram == dict(hist)
    assert report.points_visited == 3 ** 4
    with pytest.raises(InvalidInputError):
        scan_theta_pairs(3, 3, 5, budget=1000)
