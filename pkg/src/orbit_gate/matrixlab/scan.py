"""Exhaustive and sampled nilpotent scans of affine slices.

Exhaustive mode runs over F_p when p^d <= budget (d = number of slice
directions).  Otherwise ``budget`` points are drawn uniformly; chunk c uses
its own Philox stream keyed by the seed, so the sample set depends only on
(seed, budget) and never on how many workers process the chunks.
"""

from __future__ import annotations

import os
import random
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from ..errors import InvalidInputError
from ..partitions import Partition
from . import _kernels as K
from .fields import Field, PrimeField, parse_field
from .jordan import _type_from_ranks, is_nilpotent, jordan_type
from .matrix import ExactMatrix
from .slices import SliceSpec

DEFAULT_SEED = 1729
DEFAULT_BUDGET = 1 << 22
# fixed chunk sizes keep the output independent of the worker count
SAMPLE_CHUNK = 1 << 15
EXHAUSTIVE_CHUNK = 1 << 14
AUTHORITATIVE_MIN_P = 5
RATIONAL_BOX = 2


def default_budget() -> int:
    env = os.environ.get("ORBIT_GATE_BUDGET")
    if env is None or env == "":
        return DEFAULT_BUDGET
    try:
        value = int(env)
    except ValueError:
        raise InvalidInputError(f"ORBIT_GATE_BUDGET must be an integer, got {env!r}")
    if value <= 0:
        raise InvalidInputError("ORBIT_GATE_BUDGET must be positive")
    return value


@dataclass
class ScanReport:
    label: str
    field: str
    mode: str
    seed: Optional[int]
    budget: int
    directions: int
    points_visited: int
    points_evaluated: int
    nilpotent_count: int
    histogram: dict[Partition, int]
    witnesses: dict[Partition, ExactMatrix]
    violations: list[dict] = field(default_factory=list)
    advisory: bool = False
    params: dict = field(default_factory=dict)

    def witness_matrix(self, lam: Partition) -> ExactMatrix:
        return self.witnesses[lam]

    @property
    def types(self) -> set[Partition]:
        return set(self.histogram)

    @property
    def authoritative_failure(self) -> bool:
        """Violations count as failures only at p >= 5 (or over Q)."""
        return bool(self.violations) and not self.advisory

    def to_json(self) -> dict:
        return {
            "label": self.label,
            "field": self.field,
            "mode": self.mode,
            "seed": self.seed,
            "budget": self.budget,
            "directions": self.directions,
            "points_visited": self.points_visited,
            "points_evaluated": self.points_evaluated,
            "nilpotent_count": self.nilpotent_count,
            "jordan_type_histogram": [
                {"type": lam.to_json(), "count": self.histogram[lam],
                 "witness": self.witnesses[lam].to_json()["rows"]}
                for lam in sorted(self.histogram, reverse=True)
            ],
            "violations": self.violations,
            "advisory": self.advisory,
            "params": self.params,
        }


def _np_matrix(m: ExactMatrix, p: int) -> np.ndarray:
    return np.array([[int(v) % p for v in row] for row in m.entries], dtype=np.int64).reshape(m.nrows, m.ncols)


def _key_partition(key: int, n: int) -> Partition:
    return _type_from_ranks(K.key_to_ranks(int(key), n))


def _run_chunks(tasks, workers: int):
    if workers <= 1 or len(tasks) <= 1:
        return [t() for t in tasks]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(lambda t: t(), tasks))


def _merge(results, n_keys: int):
    hist = np.zeros(n_keys, dtype=np.int64)
    first = np.full(n_keys, -1, dtype=np.int64)
    for h, f in results:  # chunk order, so the first witness has the smallest index
        hist += h
        take = (first < 0) & (f >= 0)
        first[take] = f[take]
    return hist, first


def _trace_reduce(base: np.ndarray, dirs: np.ndarray, p: int):
    """Re-coordinatise the slice so enumeration covers only tr(X) = 0.

    Returns (base', dirs') spanning the trace-zero points of the slice, or
    None when the slice has no such point.
    """
    traces = [int(np.trace(d)) % p for d in dirs]
    pivot = next((i for i, t in enumerate(traces) if t), None)
    tb = int(np.trace(base)) % p
    if pivot is None:
        return (base, dirs) if tb == 0 else None
    e0 = dirs[pivot] * pow(traces[pivot], -1, p) % p
    rest = [(dirs[i] - traces[i] * e0) % p for i in range(len(dirs)) if i != pivot]
    base2 = (base - tb * e0) % p
    return base2, np.array(rest, dtype=np.int64).reshape(len(rest), *base.shape)


def _exhaustive(spec: SliceSpec, p: int, workers: int):
    n = spec.ambient_size
    base = _np_matrix(spec.base_point, p)
    dirs = np.array([_np_matrix(d, p) for d in spec.directions], dtype=np.int64).reshape(spec.dimension, n, n)
    n_keys = 1 << max(n - 1, 0)
    reduced = _trace_reduce(base, dirs, p)
    if reduced is None:
        return np.zeros(n_keys, dtype=np.int64), np.full(n_keys, -1, dtype=np.int64), None, 0
    rbase, rdirs = reduced
    inv = K.inverse_table(p)
    d = rdirs.shape[0]
    if d == 0:
        powers = np.zeros((n + 1, n, n), dtype=np.int64)
        work = np.zeros((n, n), dtype=np.int64)
        hist = np.zeros(n_keys, dtype=np.int64)
        first = np.full(n_keys, -1, dtype=np.int64)
        key = K.nilpotent_key(rbase.copy(), n, p, inv, K.lazy_ok(n, p), powers, work)
        if key >= 0:
            hist[key], first[key] = 1, 0
        return hist, first, (rbase, rdirs), 1
    gram = np.einsum("aij,bji->ab", rdirs, rdirs) % p
    lazy = K.lazy_ok(n, p)
    outer_total = p ** (d - 1)

    def task(start, count):
        def run():
            h = np.zeros(n_keys, dtype=np.int64)
            f = np.full(n_keys, -1, dtype=np.int64)
            K.scan_exhaustive_chunk(rbase, rdirs, gram, p, start, count, inv, lazy, h, f)
            return h, f
        return run

    tasks = [task(s, min(EXHAUSTIVE_CHUNK, outer_total - s)) for s in range(0, outer_total, EXHAUSTIVE_CHUNK)]
    hist, first = _merge(_run_chunks(tasks, workers), n_keys)
    return hist, first, (rbase, rdirs), outer_total * p


def _index_point(index: int, base: np.ndarray, dirs: np.ndarray, p: int) -> np.ndarray:
    x = base.copy()
    for d in dirs:
        x = (x + (index % p) * d) % p
        index //= p
    return x


def _chunk_coords(seed: int, chunk: int, count: int, d: int, p: int) -> np.ndarray:
    gen = np.random.Generator(np.random.Philox(key=seed, counter=[0, 0, 0, chunk]))
    return gen.integers(0, p, size=(count, d), dtype=np.int64)


def _sampled(spec: SliceSpec, p: int, count: int, seed: int, workers: int):
    n = spec.ambient_size
    base = _np_matrix(spec.base_point, p)
    d = spec.dimension
    dirs = np.array([_np_matrix(m, p) for m in spec.directions], dtype=np.int64).reshape(d, n, n)
    n_keys = 1 << max(n - 1, 0)
    inv = K.inverse_table(p)
    lazy = K.lazy_ok(n, p)

    def task(c, start, size):
        def run():
            coords = _chunk_coords(seed, c, size, d, p)
            h = np.zeros(n_keys, dtype=np.int64)
            f = np.full(n_keys, -1, dtype=np.int64)
            K.scan_sampled_chunk(base, dirs, coords, p, start, inv, lazy, h, f)
            return h, f
        return run

    tasks = [task(c, s, min(SAMPLE_CHUNK, count - s)) for c, s in enumerate(range(0, count, SAMPLE_CHUNK))]
    hist, first = _merge(_run_chunks(tasks, workers), n_keys)
    return hist, first, base, dirs


def _sample_point(index: int, seed: int, base, dirs, p: int) -> np.ndarray:
    chunk, offset = divmod(index, SAMPLE_CHUNK)
    coords = _chunk_coords(seed, chunk, offset + 1, dirs.shape[0], p)[offset]
    x = base.copy()
    for c, dmat in zip(coords, dirs):
        x = (x + int(c) * dmat) % p
    return x


def _rational_sampled(spec: SliceSpec, count: int, seed: int):
    """Integer coordinates in [-RATIONAL_BOX, RATIONAL_BOX], exact arithmetic."""
    rng = random.Random(f"{spec.label}|{seed}")
    hist: dict[Partition, int] = {}
    wit: dict[Partition, ExactMatrix] = {}
    for _ in range(count):
        coords = [rng.randint(-RATIONAL_BOX, RATIONAL_BOX) for _ in spec.directions]
        x = spec.point(coords)
        if is_nilpotent(x):
            lam = jordan_type(x)
            hist[lam] = hist.get(lam, 0) + 1
            wit.setdefault(lam, x)
    return hist, wit


def scan_slice(spec: SliceSpec, budget: Optional[int] = None, seed: int = DEFAULT_SEED,
               workers: int = 1, field: Field | str | int | None = None) -> ScanReport:
    """Histogram the Jordan types of nilpotent points of ``spec``.

    ``field`` defaults to the slice's own field.  Every type found is run
    through the slice gate; failures become violations carrying a witness.
    """
    budget = default_budget() if budget is None else int(budget)
    if budget <= 0:
        raise InvalidInputError("scan budget must be positive")
    if workers < 1:
        raise InvalidInputError("workers must be >= 1")
    fld = spec.field if field is None else parse_field(field)
    if fld != spec.field:
        raise InvalidInputError(f"slice was built over {spec.field}, not {fld}")
    n = spec.ambient_size
    d = spec.dimension
    if isinstance(fld, PrimeField):
        p = fld.p
        total = p ** d
        if total <= budget:
            hist_arr, first, reduced, evaluated = _exhaustive(spec, p, workers)
            mode, used_seed, visited = "exhaustive", None, total

            def witness(idx):
                rbase, rdirs = reduced
                return _index_point(int(idx), rbase, rdirs, p)
        else:
            hist_arr, first, sbase, sdirs = _sampled(spec, p, budget, seed, workers)
            mode, used_seed, visited, evaluated = "sampled", seed, budget, budget

            def witness(idx):
                return _sample_point(int(idx), seed, sbase, sdirs, p)
        hist, wit = {}, {}
        for key in np.nonzero(hist_arr)[0]:
            lam = _key_partition(key, n)
            hist[lam] = int(hist_arr[key])
            wit[lam] = ExactMatrix.from_rows(witness(first[key]).tolist(), fld, n)
        advisory = p < AUTHORITATIVE_MIN_P
    else:
        hist, wit = _rational_sampled(spec, budget, seed)
        mode, used_seed, visited, evaluated = "sampled", seed, budget, budget
        advisory = False
    violations = []
    if spec.gate is not None:
        for lam in sorted(hist, reverse=True):
            verdict = spec.gate(lam)
            if not verdict.passed:
                violations.append({"type": lam.to_json(), "reason": verdict.detail,
                                   "model": verdict.model,
                                   "witness": wit[lam].to_json()["rows"]})
    return ScanReport(
        label=spec.label, field=str(fld), mode=mode, seed=used_seed, budget=budget,
        directions=d, points_visited=visited, points_evaluated=evaluated,
        nilpotent_count=sum(hist.values()), histogram=dict(sorted(hist.items(), reverse=True)),
        witnesses=wit, violations=violations, advisory=advisory,
        params=dict(spec.params),
    )


@dataclass
class ThetaScanReport:
    dim_v: int
    dim_w: int
    field: str
    points_visited: int
    pair_histogram: dict[tuple[Partition, Partition], int]
    witnesses: dict[tuple[Partition, Partition], tuple[ExactMatrix, ExactMatrix]]

    @property
    def pairs(self) -> set[tuple[Partition, Partition]]:
        return set(self.pair_histogram)

    def to_json(self) -> dict:
        rows = []
        for (l1, l2) in sorted(self.pair_histogram, reverse=True):
            x, y = self.witnesses[(l1, l2)]
            rows.append({"lambda1": l1.to_json(), "lambda2": l2.to_json(),
                         "count": self.pair_histogram[(l1, l2)],
                         "X": x.to_json()["rows"], "Y": y.to_json()["rows"]})
        return {"dim_v": self.dim_v, "dim_w": self.dim_w, "field": self.field,
                "points_visited": self.points_visited, "pairs": rows}


def scan_theta_pairs(dim_v: int, dim_w: int, field: Field | str | int = 2,
                     budget: Optional[int] = None, workers: int = 1) -> ThetaScanReport:
    """All pairs X: V -> W, Y: W -> V with YX and XY nilpotent, by type pair."""
    fld = parse_field(field)
    if not isinstance(fld, PrimeField):
        raise InvalidInputError("theta pair scans are exhaustive and need a prime field")
    budget = default_budget() if budget is None else int(budget)
    m, n, p = dim_v, dim_w, fld.p
    if m < 0 or n < 0:
        raise InvalidInputError("dimensions must be non-negative")
    total = p ** (2 * m * n)
    if total > budget:
        raise InvalidInputError(f"theta scan needs {total} points, budget is {budget}")
    k1, k2 = 1 << max(m - 1, 0), 1 << max(n - 1, 0)
    inv = K.inverse_table(p)
    chunk = 1 << 16

    def task(start, count):
        def run():
            h = np.zeros((k1, k2), dtype=np.int64)
            f = np.full((k1, k2), -1, dtype=np.int64)
            K.scan_theta_chunk(m, n, p, start, count, inv, K.lazy_ok(m, p), K.lazy_ok(n, p), h, f)
            return h, f
        return run

    tasks = [task(s, min(chunk, total - s)) for s in range(0, total, chunk)]
    results = _run_chunks(tasks, workers)
    hist = np.zeros((k1, k2), dtype=np.int64)
    first = np.full((k1, k2), -1, dtype=np.int64)
    for h, f in results:
        hist += h
        take = (first < 0) & (f >= 0)
        first[take] = f[take]
    out, wit = {}, {}
    for a, b in zip(*np.nonzero(hist)):
        pair = (_key_partition(a, m), _key_partition(b, n))
        out[pair] = int(hist[a, b])
        wit[pair] = _theta_point(int(first[a, b]), m, n, p, fld)
    return ThetaScanReport(m, n, str(fld), total, dict(sorted(out.items(), reverse=True)), wit)


def _theta_point(index: int, m: int, n: int, p: int, fld: Field) -> tuple[ExactMatrix, ExactMatrix]:
    digits = []
    for _ in range(2 * m * n):
        digits.append(index % p)
        index //= p
    x = ExactMatrix.from_rows([digits[i * m:(i + 1) * m] for i in range(n)], fld, m)
    off = m * n
    y = ExactMatrix.from_rows([digits[off + i * n: off + (i + 1) * n] for i in range(m)], fld, n)
    return x, y
