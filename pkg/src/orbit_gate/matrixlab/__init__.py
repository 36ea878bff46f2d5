"""Exact linear algebra over Q and F_p: Jordan types, slices, scans, witnesses."""

from __future__ import annotations

from .fields import QQ, PrimeField, Rationals, parse_field
from .jordan import cyclic_quotient_type, interlace_witness, jordan_type, random_nilpotent, theta_witness
from .matrix import ExactMatrix, jordan_matrix

__all__ = [
    "QQ", "PrimeField", "Rationals", "parse_field", "ExactMatrix", "jordan_matrix",
    "jordan_type", "random_nilpotent", "cyclic_quotient_type", "interlace_witness", "theta_witness",
]
