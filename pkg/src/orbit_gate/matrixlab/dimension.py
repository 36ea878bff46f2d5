"""Dimension estimates from point counts over two prime fields.

For a variety of dimension d the number of F_q points grows like c q^d, so
ln(N2/N1) / ln(q2/q1) approximates d.  Counts come from exhaustive scans
only; an empty count is reported as inconclusive rather than guessed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from ..errors import InconclusiveError, InvalidInputError
from ..orbits import orbit_dim_gl, theta_min_orbit_dim
from ..partitions import Partition, as_partition, interlace_leq_plus_one
from .fields import PrimeField, is_prime
from .scan import scan_slice, scan_theta_pairs
from .slices import SliceSpec, pardim_slice, torus_slice

TOLERANCE = 0.35
COUNT_BUDGET = 1 << 26


@dataclass(frozen=True)
class DimensionFit:
    raw: float
    value: int

    @property
    def residual(self) -> float:
        return abs(self.raw - self.value)

    @property
    def within_tolerance(self) -> bool:
        return self.residual <= TOLERANCE


@dataclass
class DimensionReport:
    target: str
    params: dict
    primes: tuple[int, int]
    counts: tuple[int, int]
    fit: DimensionFit
    predicted: int
    extra: dict = field(default_factory=dict)

    @property
    def agrees(self) -> bool:
        return self.fit.within_tolerance and self.fit.value == self.predicted

    def to_json(self) -> dict:
        return {
            "target": self.target,
            "params": self.params,
            "primes": list(self.primes),
            "counts": list(self.counts),
            "raw_exponent": round(self.fit.raw, 6),
            "estimate": self.fit.value,
            "residual": round(self.fit.residual, 6),
            "tolerance": TOLERANCE,
            "within_tolerance": self.fit.within_tolerance,
            "predicted": self.predicted,
            "agrees": self.agrees,
            **self.extra,
        }


def estimate_dim(n1: int, n2: int, q1: int, q2: int) -> DimensionFit:
    if not q1 < q2:
        raise InvalidInputError("need q1 < q2")
    if n1 <= 0 or n2 <= 0:
        raise InconclusiveError(f"empty point count (N({q1})={n1}, N({q2})={n2}); no dimension inferred")
    raw = math.log(n2 / n1) / math.log(q2 / q1)
    return DimensionFit(raw, int(round(raw)))


def _check_primes(q1: int, q2: int) -> None:
    for q in (q1, q2):
        if not is_prime(q):
            raise InvalidInputError(f"{q} is not prime")
    if q1 >= q2:
        raise InvalidInputError("need q1 < q2")


def count_points(spec: SliceSpec, lam, budget: int = COUNT_BUDGET) -> int:
    """Number of slice points over its prime field whose Jordan type is lam."""
    if not isinstance(spec.field, PrimeField):
        raise InvalidInputError("point counts need a prime field")
    total = spec.field.p ** spec.dimension
    if total > budget:
        raise InvalidInputError(f"count needs {total} points, over the budget {budget}")
    report = scan_slice(spec, budget=total)
    return report.histogram.get(as_partition(lam), 0)


def pardim_predicted(lam, lam_prime) -> int:
    """(dim O' - dim O) / 2 for O in gl(size lam), O' in gl(size lam')."""
    twice = orbit_dim_gl(lam_prime) - orbit_dim_gl(lam)
    if twice % 2:
        raise InvalidInputError("orbit dimension difference is odd")
    return twice // 2


def estimate_pardim(lam, lam_prime, q1: int = 5, q2: int = 7) -> DimensionReport:
    """Dimension of {A : (J(lam) A; 0 0) has type lam'}."""
    lam, lam_prime = as_partition(lam), as_partition(lam_prime)
    _check_primes(q1, q2)
    n = lam_prime.size - lam.size
    if n < 0:
        raise InvalidInputError("lambda' must be at least as large as lambda")
    counts = tuple(count_points(pardim_slice(lam, n, PrimeField(q)), lam_prime) for q in (q1, q2))
    fit = estimate_dim(counts[0], counts[1], q1, q2)
    return DimensionReport("pardim", {"lambda": lam.to_json(), "lambda_prime": lam_prime.to_json()},
                           (q1, q2), counts, fit, pardim_predicted(lam, lam_prime),
                           {"interlacing": interlace_leq_plus_one(lam, lam_prime)})


def estimate_torus(q1: int = 5, q2: int = 7) -> DimensionReport:
    """Regular nilpotents of gl_2 with zero diagonal: the torus slice meets O_(2)."""
    _check_primes(q1, q2)
    regular = Partition([2])
    counts = tuple(count_points(torus_slice(2, PrimeField(q)), regular) for q in (q1, q2))
    fit = estimate_dim(counts[0], counts[1], q1, q2)
    return DimensionReport("torus", {"n": 2, "orbit": regular.to_json()}, (q1, q2), counts, fit,
                           orbit_dim_gl(regular) // 2)


def theta_predicted(lam1, lam2) -> int:
    """Half of dim(O1 x O2 x O_min)."""
    lam1, lam2 = as_partition(lam1), as_partition(lam2)
    total = orbit_dim_gl(lam1) + orbit_dim_gl(lam2) + theta_min_orbit_dim(lam1.size, lam2.size)
    return total // 2


def count_theta_pairs(lam1, lam2, q: int, budget: int = COUNT_BUDGET) -> int:
    lam1, lam2 = as_partition(lam1), as_partition(lam2)
    report = scan_theta_pairs(lam1.size, lam2.size, q, budget=budget)
    return report.pair_histogram.get((lam1, lam2), 0)


def estimate_theta(lam1, lam2, q1: int = 5, q2: int = 7) -> DimensionReport:
    """Dimension of S = {(X, Y) : YX in O1, XY in O2}."""
    lam1, lam2 = as_partition(lam1), as_partition(lam2)
    _check_primes(q1, q2)
    counts = tuple(count_theta_pairs(lam1, lam2, q) for q in (q1, q2))
    fit = estimate_dim(counts[0], counts[1], q1, q2)
    return DimensionReport("theta", {"lambda1": lam1.to_json(), "lambda2": lam2.to_json()},
                           (q1, q2), counts, fit, theta_predicted(lam1, lam2))
