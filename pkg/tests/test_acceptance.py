"""Acceptance criteria 1-10.  Each test prints one PASS/FAIL line with its runtime."""

from __future__ import annotations

import json
import random
import time
from contextlib import contextmanager

import pytest
from oracles import dominates, lr_table, transpose_by_cells

from orbit_gate.criteria import (
    ginzburg_rallis_check,
    klyachko_check,
    rs_bessel_compatible,
    shalika_check,
    theta_match,
    theta_max_match,
)
from orbit_gate.errors import InvalidInputError
from orbit_gate.lr import lr_coefficient, lr_support
from orbit_gate.matrixlab import dimension as D
from orbit_gate.matrixlab import slices as S
from orbit_gate.matrixlab.fields import QQ, PrimeField
from orbit_gate.matrixlab.jordan import (
    cyclic_quotient_type,
    extended_matrix,
    interlace_witness,
    jordan_type,
    random_nilpotent,
    theta_witness,
)
from orbit_gate.matrixlab.matrix import jordan_matrix
from orbit_gate.matrixlab.scan import scan_slice, scan_theta_pairs
from orbit_gate.orbits import orbit_dim_gl
from orbit_gate.partitions import (
    Partition,
    dominance_leq,
    has_even_multiplicities,
    interlace_leq_plus_one,
    is_very_even,
    partitions_of,
    pointwise_sum,
    sorted_merge,
    transpose,
)

F2, F3, F5 = PrimeField(2), PrimeField(3), PrimeField(5)


def P(*parts):
    return Partition(parts)


@contextmanager
def criterion(capsys, number: int, limit: float, title: str):
    """Run a criterion body, then print one line and enforce the runtime bound."""
    notes: dict = {}
    start = time.perf_counter()
    ok = False
    try:
        yield notes
        ok = True
    finally:
        elapsed = time.perf_counter() - start
        in_time = elapsed < limit
        status = "PASS" if ok and in_time else "FAIL"
        extra = notes.get("detail", "")
        with capsys.disabled():
            print(f"\n[criterion {number:2d}] {status} {title}: {extra} "
                  f"({elapsed:.1f}s, limit {limit:.0f}s)")
    assert in_time, f"criterion {number} took {elapsed:.1f}s, limit {limit}s"


# 1 ---------------------------------------------------------------------------

def test_criterion_01_partition_suite(capsys):
    with criterion(capsys, 1, 10, "partition suite to size 12") as notes:
        checked = 0
        for n in range(13):
            parts = list(partitions_of(n))
            for lam in parts:
                assert transpose(transpose(lam)) == lam
                assert transpose(lam).parts == transpose_by_cells(lam.parts)
                assert is_very_even(lam) == has_even_multiplicities(transpose(lam))
            for mu in parts:
                for lam in parts:
                    leq = dominance_leq(mu, lam)
                    assert leq == dominates(lam.parts, mu.parts)
                    assert leq == dominance_leq(transpose(lam), transpose(mu))
                    checked += 1
        notes["detail"] = f"{checked} dominance pairs"


# 2 ---------------------------------------------------------------------------

def test_criterion_02_quotient_fuzz(capsys):
    with criterion(capsys, 2, 60, "cyclic quotient bound fuzz") as notes:
        rng = random.Random(20240)
        parts = {n: list(partitions_of(n)) for n in range(1, 9)}
        violations, trials = 0, 0
        for field in (QQ, F5):
            for t in range(10_000):
                n = rng.randint(1, 8)
                lam = rng.choice(parts[n])
                y = random_nilpotent(lam, field, seed=rng.randrange(1 << 30))
                v = [rng.randrange(5) if field is F5 else rng.randint(-3, 3) for _ in range(n)]
                try:
                    nu, nu_p = cyclic_quotient_type(y, v)
                except RuntimeError:
                    violations += 1
                    continue
                nt, npt = transpose(nu), transpose(nu_p)
                if nu != lam or any(nt.part(i) - npt.part(i) not in (0, 1)
                                    for i in range(1, n + 1)):
                    violations += 1
                trials += 1
        notes["detail"] = f"{trials} trials over Q and F5, {violations} violations"
        assert violations == 0


# 3 ---------------------------------------------------------------------------

PARDIM_PAIRS = [
    (P(1), P(2)),
    (P(2, 1), P(2, 2, 1)),
    (P(2), P(3, 1)),
    (P(1, 1), P(2, 2)),
    (P(2, 1), P(3, 2)),
    (P(3), P(4)),
]


def test_criterion_03_interlacing_both_directions(capsys):
    with criterion(capsys, 3, 300, "interlacing witness, scans and dimension") as notes:
        pairs = 0
        for m in range(10):
            for lam_p in partitions_of(m):
                for k in range(m + 1):
                    for lam in partitions_of(k):
                        if not interlace_leq_plus_one(lam, lam_p):
                            with pytest.raises(InvalidInputError):
                                interlace_witness(lam, lam_p)
                            continue
                        a = interlace_witness(lam, lam_p)
                        assert jordan_type(extended_matrix(jordan_matrix(lam), a)) == lam_p
                        pairs += 1
        scans = 0
        for field in (F2, F3):
            for k in range(6):
                for n in range(1, 7 - k):
                    for lam in partitions_of(k):
                        rep = scan_slice(S.pardim_slice(lam, n, field), budget=field.p ** (k * n))
                        assert rep.mode == "exhaustive"
                        assert not rep.violations, rep.violations
                        scans += 1
        fits = []
        for lam, lam_p in PARDIM_PAIRS:
            rep = D.estimate_pardim(lam, lam_p, 5, 7)
            expected = (orbit_dim_gl(lam_p) - orbit_dim_gl(lam)) // 2
            assert rep.fit.within_tolerance and rep.fit.value == expected == rep.predicted
            fits.append(f"{lam}->{lam_p}:{rep.fit.raw:.2f}")
        first = D.estimate_pardim(P(1), P(2))
        assert first.counts == (4, 6)
        notes["detail"] = f"{pairs} witnesses, {scans} exhaustive scans, fits {' '.join(fits)}"


# 4 ---------------------------------------------------------------------------

def test_criterion_04_theta_matching(capsys):
    with criterion(capsys, 4, 300, "theta matching, witnesses and F2 pair scan") as notes:
        witnessed = refused = 0
        for a in range(6):
            for b in range(6):
                for l1 in partitions_of(a):
                    for l2 in partitions_of(b):
                        if theta_match(l1, l2).passed:
                            x, y = theta_witness(l1, l2)
                            assert jordan_type(y @ x) == l1 and jordan_type(x @ y) == l2
                            witnessed += 1
                        else:
                            with pytest.raises(InvalidInputError):
                                theta_witness(l1, l2)
                            refused += 1
        scans = 0
        for m in range(1, 4):
            for n in range(1, 4):
                rep = scan_theta_pairs(m, n, 2, budget=1 << 18)
                expected = {(l1, l2) for l1 in partitions_of(m) for l2 in partitions_of(n)
                            if theta_match(l1, l2).passed}
                assert rep.pairs == expected, (m, n, rep.pairs ^ expected)
                scans += 1
        maxima = 0
        for dv in range(9):
            for dw in range(dv, 9):
                for l1 in partitions_of(dv):
                    matches = [l2 for l2 in partitions_of(dw) if theta_match(l1, l2).passed]
                    top = theta_max_match(l1, dv, dw)
                    assert top in matches and all(dominance_leq(l2, top) for l2 in matches)
                    maxima += 1
        notes["detail"] = (f"{witnessed} witnesses, {refused} refusals, {scans} pair scans equal "
                           f"to the match set, {maxima} maxima")


# 5 ---------------------------------------------------------------------------

def _soundness_slices(field):
    out = []
    for n, k, t in S.rs_cases(4):
        out.append((f"rs n={n} k={k} T={t}", lambda n=n, k=k, t=t: S.rs_slice(n, k, t, field)))
    for n in (1, 2, 3):
        out.append((f"shalika n={n}", lambda n=n: S.shalika_slice(n, field)))
    for n in range(4):
        for k in range(7 - 2 * n):
            if 2 * n + k == 0:
                continue
            if n == 0 and k == 6 and field.p == 3:
                continue  # 3^21 points; covered at F2 and by F5 sampling
            out.append((f"klyachko n={n} k={k}", lambda n=n, k=k: S.klyachko_slice(n, k, field)))
    if field.p == 2:
        out.append(("ginzburg-rallis", lambda: S.gr_slice(field)))
    else:
        for dv in range(2, 6):
            for k in (1, 2):
                if dv < 2 * k:
                    continue
                for lam, t in S.bessel_nilpotent_types(dv, k, field).items():
                    out.append((f"bessel dimV={dv} k={k} T={lam}",
                                lambda dv=dv, k=k, t=t: S.bessel_slice_orth(dv, k, t, field)))
    for w in ([1, -1], [2, 0, -2], [1, -1, 0]):
        out.append((f"whittaker {w}", lambda w=w: S.whittaker_slice(w, None, field)))
    return out


def test_criterion_05_model_slice_soundness(capsys):
    with criterion(capsys, 5, 900, "model-slice soundness scans") as notes:
        bad, runs, points = [], 0, 0
        for field in (F2, F3):
            for name, make in _soundness_slices(field):
                spec = make()
                rep = scan_slice(spec, budget=field.p ** spec.dimension)
                assert rep.mode == "exhaustive"
                runs += 1
                points += rep.points_visited
                if rep.violations:
                    bad.append((str(field), name, rep.violations))
        sampled = 0
        for name, make in _soundness_slices(F5) + [("ginzburg-rallis", lambda: S.gr_slice(F5)),
                                                   ("klyachko n=0 k=6", lambda: S.klyachko_slice(0, 6, F5))]:
            spec = make()
            rep = scan_slice(spec, budget=100_000, seed=1729)
            runs += 1
            sampled += rep.mode == "sampled"
            points += rep.points_visited
            if rep.violations:
                bad.append(("F5", name, rep.violations))
        notes["detail"] = (f"{runs} scans ({sampled} sampled at F5), {points} points, "
                           f"{len(bad)} with violations")
        assert not bad, bad


# 6 ---------------------------------------------------------------------------

def test_criterion_06_parabolic_lr_two_sided(capsys):
    with criterion(capsys, 6, 300, "parabolic slices equal LR supports") as notes:
        cases = 0
        for a, b in ((2, 2), (3, 2)):
            for mu in partitions_of(a):
                for nu in partitions_of(b):
                    support = set(lr_support(mu, nu))
                    for field in (F2, F3):
                        rep = scan_slice(S.parabolic_slice(mu, nu, field))
                        assert rep.mode == "exhaustive"
                        assert rep.types == support, (mu, nu, field, rep.types ^ support)
                    top, bottom = pointwise_sum(mu, nu), sorted_merge(mu, nu)
                    assert top in support and bottom in support
                    assert all(dominance_leq(lam, top) and dominance_leq(bottom, lam) for lam in support)
                    cases += 1
        notes["detail"] = f"{cases} (mu, nu) block pairs over F2 and F3"


# 7 ---------------------------------------------------------------------------

def test_criterion_07_lr_oracle(capsys):
    with criterion(capsys, 7, 120, "LR coefficients against the Kostka oracle") as notes:
        triples = 0
        for s in range(9):
            for a in range(s + 1):
                for mu in partitions_of(a):
                    for nu in partitions_of(s - a):
                        table = lr_table(mu.parts, nu.parts)
                        for lam in partitions_of(s):
                            assert lr_coefficient(lam, mu, nu) == table.get(lam.parts, 0)
                            triples += 1
        assert lr_coefficient(P(3, 2, 1), P(2, 1), P(2, 1)) == 2
        notes["detail"] = f"{triples} triples agree; c(321; 21, 21) = 2"


# 8 ---------------------------------------------------------------------------

def test_criterion_08_torus_spot_check(capsys):
    with criterion(capsys, 8, 5, "gl2 torus slice dimension") as notes:
        rep = D.estimate_torus(5, 7)
        assert rep.counts == (2 * 4, 2 * 6)
        assert rep.fit.value == 1 == orbit_dim_gl(P(2)) // 2 and rep.agrees
        notes["detail"] = f"counts {rep.counts}, raw {rep.fit.raw:.3f} -> {rep.fit.value}"


# 9 ---------------------------------------------------------------------------

def _determinism_specs():
    specs = [make() for _, make in _soundness_slices(F5)]
    specs += [S.gr_slice(F5), S.parabolic_slice(P(2, 1), P(1, 1), F5), S.torus_slice(2, F5),
              S.pardim_slice(P(2, 1), 2, F5), S.klyachko_slice(2, 1, F3), S.shalika_slice(2, F3)]
    return specs


def test_criterion_09_determinism(capsys):
    with criterion(capsys, 9, 120, "byte-identical reports for 1, 4 and 8 workers") as notes:
        specs = _determinism_specs()
        for spec in specs:
            blobs = {json.dumps(scan_slice(spec, budget=40_000, seed=7, workers=w).to_json(),
                                sort_keys=True) for w in (1, 4, 8)}
            assert len(blobs) == 1, spec.label
        notes["detail"] = f"{len(specs)} scans x 3 worker counts"


# 10 --------------------------------------------------------------------------

def test_criterion_10_gate_fixtures(capsys):
    with criterion(capsys, 10, 5, "gate regression fixtures") as notes:
        assert rs_bessel_compatible(transpose(P(3, 2)), transpose(P(2, 2))).passed
        assert {lam for lam in partitions_of(6) if ginzburg_rallis_check(lam).passed} == \
            {P(6), P(5, 1), P(3, 3)}
        assert klyachko_check(P(2, 2), 2, 0).passed
        assert not klyachko_check(P(3, 1), 2, 0).passed
        checked = 0
        for n in range(0, 9, 2):
            for lam in partitions_of(n):
                assert shalika_check(lam).passed == is_very_even(lam)
                checked += 1
        notes["detail"] = f"(3,2)/(2,2) pair, GR set, Klyachko k=0, Shalika on {checked} partitions"
