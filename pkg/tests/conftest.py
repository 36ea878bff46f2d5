from __future__ import annotations

import sys
from pathlib import Path

from hypothesis import settings
from hypothesis import strategies as st

sys.path.insert(0, str(Path(__file__).parent))

settings.register_profile("default", deadline=None, max_examples=200)
settings.load_profile("default")


@st.composite
def partitions(draw, max_size: int = 12, min_size: int = 0):
    n = draw(st.integers(min_size, max_size))
    parts, left = [], n
    while left:
        cap = min(left, parts[-1]) if parts else left
        v = draw(st.integers(1, cap))
        parts.append(v)
        left -= v
    return parts
