"""Partition-level gates for the existence of mixed models.

Every gate is a necessary condition: a failing verdict rules the model out,
a passing verdict proves nothing.  Most conditions compare transposed
partitions position by position; ``failing_indices`` then lists the 1-based
offending positions.  Conditions on the partition as a whole (Klyachko,
Ginzburg-Rallis, LR) report the single index 0 on failure.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from itertools import zip_longest
from typing import Optional

from .errors import InvalidInputError
from .lr import lr_coefficient
from .orbits import GroupFamily, validate_partition
from .partitions import (
    Partition,
    as_partition,
    dominance_failures,
    max_abs_difference_positions,
    odd_part_count,
    pointwise_sum,
    transpose,
)

MODELS = (
    "RankinSelberg",
    "Bessel",
    "DerivativeB",
    "DerivativeE",
    "Klyachko",
    "Shalika",
    "GinzburgRallis",
    "ThetaMatch",
    "ParabolicLR",
    "WhittakerClosure",
    "Interlace",
)

GLOBAL_FAILURE = [0]


@dataclass(frozen=True)
class ModelVerdict:
    model: str
    passed: bool
    failing_indices: list[int] = field(default_factory=list)
    detail: str = ""

    def __post_init__(self):
        if self.model not in MODELS:
            raise ValueError(f"unknown model {self.model}")
        if self.passed != (not self.failing_indices):
            raise ValueError("pass must coincide with an empty failure list")

    def __bool__(self) -> bool:
        return self.passed

    def to_json(self) -> dict:
        return {
            "model": self.model,
            "pass": self.passed,
            "failing_indices": list(self.failing_indices),
            "detail": self.detail,
        }


def _verdict(model: str, failures: list[int], detail: str) -> ModelVerdict:
    return ModelVerdict(model, not failures, failures, detail)


def _transposed_gap_failures(a: Partition, b: Partition, lo: int, hi: int) -> list[int]:
    at, bt = transpose(a), transpose(b)
    return [i + 1 for i, (x, y) in enumerate(zip_longest(at.parts, bt.parts, fillvalue=0))
            if not lo <= x - y <= hi]


def rs_bessel_compatible(lam, mu, g_family: Optional[GroupFamily] = None,
                         s_family: Optional[GroupFamily] = None,
                         model: str = "RankinSelberg") -> ModelVerdict:
    """|lam^t_i - mu^t_i| <= 1 for all i; lam labels the big group, mu the small one."""
    lam, mu = as_partition(lam), as_partition(mu)
    if model not in ("RankinSelberg", "Bessel"):
        raise InvalidInputError("model must be RankinSelberg or Bessel")
    for fam, part, name in ((g_family, lam, "pi"), (s_family, mu, "tau")):
        if fam is not None and not validate_partition(fam, part):
            raise InvalidInputError(f"{name} partition {part} is not valid for {fam}")
    fails = _transposed_gap_failures(lam, mu, -1, 1)
    return _verdict(model, fails,
                    f"lambda^t={transpose(lam)} mu^t={transpose(mu)}; need |diff|<=1")


def derivative_bounds(lam_pi, lam_tau, variant: str = "B") -> ModelVerdict:
    """Variant B: lam^t(pi) - lam^t(tau) in {0,1}; variant E: in {-1,0,1}."""
    lam_pi, lam_tau = as_partition(lam_pi), as_partition(lam_tau)
    variant = variant.upper()
    if variant not in ("B", "E"):
        raise InvalidInputError("variant must be B or E")
    if lam_pi.size < lam_tau.size:
        raise InvalidInputError("derivative needs size(pi) >= size(tau)")
    lo = 0 if variant == "B" else -1
    fails = _transposed_gap_failures(lam_pi, lam_tau, lo, 1)
    return _verdict("Derivative" + variant, fails,
                    f"k={lam_pi.size - lam_tau.size}; diffs must lie in [{lo},1]")


def klyachko_check(lam, n: int, k: int) -> ModelVerdict:
    lam = as_partition(lam)
    if n < 0 or k < 0:
        raise InvalidInputError("n and k must be non-negative")
    if lam.size != 2 * n + k:
        raise InvalidInputError(f"Klyachko needs size 2n+k={2 * n + k}, got {lam.size}")
    odd = odd_part_count(transpose(lam))
    return _verdict("Klyachko", [] if odd == k else GLOBAL_FAILURE,
                    f"lambda^t={transpose(lam)} has {odd} odd parts; need exactly {k}")


def shalika_check(lam) -> ModelVerdict:
    lam = as_partition(lam)
    if lam.size % 2:
        raise InvalidInputError("Shalika needs an even size")
    lt = transpose(lam)
    mult = Counter(lt.parts)
    fails = [i + 1 for i, v in enumerate(lt.parts) if mult[v] % 2]
    return _verdict("Shalika", fails, f"lambda^t={lt}; every value needs even multiplicity")


GR_ALLOWED_TRANSPOSES = (Partition([1] * 6), Partition([2, 1, 1, 1, 1]), Partition([2, 2, 2]))


def ginzburg_rallis_check(lam) -> ModelVerdict:
    lam = as_partition(lam)
    if lam.size != 6:
        raise InvalidInputError("Ginzburg-Rallis is defined for GL_6 only")
    lt = transpose(lam)
    ok = lt in GR_ALLOWED_TRANSPOSES
    return _verdict("GinzburgRallis", [] if ok else GLOBAL_FAILURE,
                    f"lambda^t={lt}; allowed 1^6, 21^4, 2^3")


def theta_match(lam1, lam2) -> ModelVerdict:
    lam1, lam2 = as_partition(lam1), as_partition(lam2)
    return _verdict("ThetaMatch", max_abs_difference_positions(lam1, lam2),
                    f"{lam1} vs {lam2}; need |diff|<=1 (untransposed)")


def theta_max_match(lam1, dim_v: int, dim_w: int) -> Partition:
    """The dominance-largest partition of dim_w matching lam1.

    Prefix sums are capped by sum(lam1_i + 1) from above and by what the
    tail must still hold (each later part is at least lam1_i - 1).  When
    the rank of lam1 is large enough this is lam1 with its first
    dim_w - dim_v parts raised by one.
    """
    lam1 = as_partition(lam1)
    if lam1.size != dim_v:
        raise InvalidInputError(f"lambda1 has size {lam1.size}, dim V is {dim_v}")
    if dim_w < dim_v:
        raise InvalidInputError("need dim W >= dim V")
    length = len(lam1) + dim_w
    lo = [max(lam1.part(i) - 1, 0) for i in range(1, length + 1)]
    hi = [lam1.part(i) + 1 for i in range(1, length + 1)]
    parts, prev = [], 0
    for j in range(length):
        cap = min(prev + hi[j], dim_w - sum(lo[j + 1:]))
        parts.append(cap - prev)
        prev = cap
    top = Partition(parts)
    if top.size != dim_w or not theta_match(lam1, top).passed:
        raise InvalidInputError(f"no partition of {dim_w} matches {lam1}")
    return top


def parabolic_lr_check(lam, mu, nu) -> ModelVerdict:
    lam, mu, nu = as_partition(lam), as_partition(mu), as_partition(nu)
    if lam.size != mu.size + nu.size:
        raise InvalidInputError("need size(lambda) = size(mu) + size(nu)")
    c = lr_coefficient(lam, mu, nu)
    return _verdict("ParabolicLR", [] if c > 0 else GLOBAL_FAILURE, f"c^{lam}_{{{mu},{nu}}} = {c}")


def whittaker_closure_check(lam, mu_chi) -> ModelVerdict:
    lam, mu_chi = as_partition(lam), as_partition(mu_chi)
    if lam.size != mu_chi.size:
        raise InvalidInputError("sizes differ")
    return _verdict("WhittakerClosure", dominance_failures(mu_chi, lam),
                    f"need {mu_chi} dominated by {lam}")
