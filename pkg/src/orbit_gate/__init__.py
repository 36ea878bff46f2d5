"""Partition-level gates for mixed models and an exact matrix oracle for them."""

from __future__ import annotations

__version__ = "0.1.0"

from .errors import InconclusiveError, InvalidInputError
from .partitions import Partition

__all__ = ["Partition", "InvalidInputError", "InconclusiveError", "__version__"]
