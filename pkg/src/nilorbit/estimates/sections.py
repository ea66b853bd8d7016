"""Section values, weighted norms and the deck-transformation check."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..exact import GVector, as_gscalar
from .model import SectionModel

__all__ = [
    "PolyMatrix",
    "phi",
    "level_norms",
    "norms",
    "monodromy_consistency",
    "monodromy_consistency_exact",
]


@dataclass(frozen=True)
class PolyMatrix:
    """M(t) = sum_e coeffs[e] t^e with coeffs[0] = 0, mapping F^0 coordinates to G^{<0}."""

    coeffs: tuple  # of complex arrays, index = power of t

    def __post_init__(self):
        if self.coeffs and np.any(np.asarray(self.coeffs[0]) != 0):
            raise ValueError("M(0) must vanish")

    @classmethod
    def from_powers(cls, powers: dict, shape: tuple[int, int]) -> "PolyMatrix":
        top = max(powers) if powers else 0
        coeffs = [np.zeros(shape, dtype=complex) for _ in range(top + 1)]
        for e, m in powers.items():
            arr = np.asarray(m, dtype=complex).reshape(shape)
            if e == 0 and np.any(arr != 0):
                raise ValueError("M(0) must vanish")
            coeffs[e] = arr
        return cls(tuple(coeffs))

    def scaled(self, c: complex) -> "PolyMatrix":
        return PolyMatrix(tuple(c * m for m in self.coeffs))

    def __call__(self, t: complex) -> np.ndarray:
        out = np.zeros_like(self.coeffs[0])
        for m in reversed(self.coeffs):
            out = out * t + m
        return out

    def divided(self, t: complex) -> np.ndarray:
        """M(t) / t, evaluated without forming t (avoids underflow for large Im z)."""
        out = np.zeros_like(self.coeffs[0])
        for m in reversed(self.coeffs[1:]):
            out = out * t + m
        return out


def phi(model: SectionModel, h, z: complex, M: PolyMatrix | None = None) -> np.ndarray:
    """Coordinates of the section through the lattice vector ``h`` at ``z``.

    With ``M`` the F^0 part is moved by the graph of M(t), t = exp(2 pi i z).
    """
    val = model.evaluate(h, z)
    if M is None:
        return val
    model.require_hodge("a perturbed section")
    t = np.exp(2j * np.pi * z)
    return val - M(t) @ model.evaluate_f0(h, z)


def level_norms(model: SectionModel, vals: np.ndarray) -> np.ndarray:
    """|v|_k for each kernel level k (l1 over the coordinates at that level)."""
    if model.levels_out is None:
        return np.array([float(np.abs(vals).sum())])
    nlev = int(model.levels_out.max(initial=0)) + 1
    out = np.zeros(nlev)
    np.add.at(out, model.levels_out, np.abs(vals))
    return out


def norms(model: SectionModel, h, z: complex) -> dict:
    """A(h, z) = sum_k a_k y^k and B(h, z) = sum_{k>=1} a_k y^(k-1)."""
    y = complex(z).imag
    if y <= 0:
        raise ValueError("norms need Im z > 0")
    a = model.level_norms_in(h)
    ks = np.arange(len(a))
    A = float(np.sum(a * y ** ks))
    B = float(np.sum(a[1:] * y ** (ks[1:] - 1)))
    return {"levels": a.tolist(), "A": A, "B": B}


def monodromy_consistency(model: SectionModel, h, z: complex, rtol: float = 1e-12) -> bool:
    """phi(h; z + 1) == phi(exp(N) h; z) up to roundoff."""
    T = model.monodromy().to_int_lists()
    h2 = np.asarray(T) @ np.asarray(h)
    left = model.evaluate(h, z + 1)
    right = model.evaluate(h2, z)
    scale = max(1.0, float(np.abs(left).max(initial=0)), float(np.abs(right).max(initial=0)))
    return bool(np.all(np.abs(left - right) <= rtol * scale))


def monodromy_consistency_exact(model: SectionModel, h, z) -> bool:
    """Exact version at a Gaussian-rational z."""
    z = as_gscalar(z)
    T = model.monodromy()
    return model.evaluate_exact(h, z + 1) == model.evaluate_exact(T @ GVector(h), z)
