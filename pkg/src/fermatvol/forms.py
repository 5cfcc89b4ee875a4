"""Index bookkeeping for the holomorphic one-forms on the Fermat curve.

The normalized forms are indexed by integer pairs (r, s) with r, s >= 1 and
r + s <= n - 1; there are exactly genus-many of them.  The normalization is
chosen so the form integrates to 1 along the base path, which keeps every
loop period inside Z[zeta_n].
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache


@dataclass(frozen=True, order=True)
class FormIdx:
    """A valid holomorphic one-form index on the degree-n Fermat curve."""

    n: int
    r: int
    s: int

    def __post_init__(self):
        if self.n < 3:
            raise ValueError(f"need n >= 3, got {self.n}")
        if not (self.r >= 1 and self.s >= 1 and self.r + self.s <= self.n - 1):
            raise ValueError(
                f"form index (r, s) = ({self.r}, {self.s}) violates "
                f"r, s >= 1 and r + s <= n - 1 = {self.n - 1}"
            )

    def to_json(self) -> list[int]:
        return [self.r, self.s]


@lru_cache(maxsize=None)
def form_indices(n: int) -> tuple[FormIdx, ...]:
    """All valid form indices for the degree-n curve, lexicographic."""
    out = []
    for r in range(1, n - 1):
        for s in range(1, n - r):
            out.append(FormIdx(n, r, s))
    return tuple(out)
