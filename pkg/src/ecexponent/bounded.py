"""A real value paired with a certified absolute error bound."""

from __future__ import annotations

from dataclasses import dataclass
from math import isfinite


@dataclass(frozen=True)
class BoundedValue:
    """value is within +/- error of the target quantity; truncation records
    the prime cutoff Q or series cutoff Y that produced it."""

    value: float
    error: float
    truncation: float

    def __post_init__(self):
        if not (isfinite(self.error) and self.error >= 0):
            raise ValueError(f"invalid error bound: {self.error}")

    def contains(self, x: float) -> bool:
        return abs(x - self.value) <= self.error

    def overlaps(self, other: "BoundedValue") -> bool:
        return abs(self.value - other.value) <= self.error + other.error
