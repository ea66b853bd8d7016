"""The strip 0 <= Re z < 1, Im z > r and sample grids over it."""

from __future__ import annotations

import cmath
from dataclasses import dataclass

import numpy as np

__all__ = ["StripRegion", "StripSample", "strip_grid"]


@dataclass(frozen=True)
class StripRegion:
    r: float
    y_max: float = float("inf")
    eta: float = 0.0

    def __post_init__(self):
        if not self.r > 1:
            raise ValueError(f"strip needs r > 1, got {self.r}")
        if not self.y_max > self.r:
            raise ValueError(f"y_max must exceed r (got {self.y_max} <= {self.r})")

    def contains(self, z: complex) -> bool:
        return 0 <= z.real < 1 and self.r < z.imag <= self.y_max

    @property
    def rect(self) -> tuple[float, float, float, float]:
        """Closure of the region as (x0, x1, y0, y1)."""
        return (0.0, 1.0, float(self.r), float(self.y_max))

    def describe(self) -> dict:
        return {"r": self.r, "y_max": self.y_max, "eta": self.eta}


@dataclass(frozen=True)
class StripSample:
    z: complex

    @property
    def y(self) -> float:
        return self.z.imag

    @property
    def t1(self) -> complex:
        return cmath.exp(2j * cmath.pi * self.z)


def strip_grid(r: float, y_max: float, n_re: int, n_y: int) -> np.ndarray:
    """x = k / n_re for k < n_re, y on the geometric ladder from r to y_max with n_y levels.

    Returned in (y, x) order: y slowest.
    """
    if n_re < 1 or n_y < 1:
        raise ValueError("grid sizes must be positive")
    xs = np.arange(n_re) / n_re
    ys = r * (y_max / r) ** (np.arange(n_y) / max(n_y - 1, 1)) if n_y > 1 else np.array([float(r)])
    return (xs[None, :] + 1j * ys[:, None]).ravel()
