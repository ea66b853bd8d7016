"""Empirical constant for a holomorphic perturbation of the F^0 part.

For M(t) with M(0) = 0 the perturbed section differs from the nilpotent
orbit section by M(t) phi''(h; z).  We scan lattice vectors and grid points
and fit the smallest C' with

    |M(t) phi''(h; z)|_k <= C' |t| A(h, z)      for every level k.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ._pykernels import box_chunks
from .model import SectionModel
from .sections import PolyMatrix
from .strip import strip_grid

__all__ = ["PerturbationReport", "perturbation_bound_check"]


@dataclass(frozen=True)
class PerturbationReport:
    C_prime: float
    argmax_h: tuple
    argmax_z: complex
    argmax_k: int
    per_y: tuple          # (y, max ratio at that y)
    bounded: bool
    bound: int
    grid: dict

    def as_dict(self) -> dict:
        return {
            "C_prime": self.C_prime,
            "argmax": {"h": list(self.argmax_h), "z": [self.argmax_z.real, self.argmax_z.imag],
                       "k": self.argmax_k},
            "max_ratio_by_y": [[y, v] for y, v in self.per_y],
            "bounded_in_y": self.bounded,
            "bound": self.bound,
            "grid": self.grid,
        }


def perturbation_bound_check(model: SectionModel, M: PolyMatrix, bound: int = 5, r: float = 2.0,
                             y_max: float = 4096.0, n_re: int = 8, n_y: int = 12) -> PerturbationReport:
    """Fit C' over the box |h_c| <= bound (h != 0) and the strip grid.

    ``bounded`` holds when the largest ratio at the top y-level does not
    exceed the largest ratio at the bottom one.
    """
    model.require_hodge("perturbation_bound_check")
    d_f0 = model.phi2.shape[1]
    shape = (model.out_dim, d_f0)
    for m in M.coeffs:
        if np.asarray(m).shape != shape:
            raise ValueError(f"M has blocks of shape {np.asarray(m).shape}, expected {shape}")
    if M.coeffs and np.any(np.asarray(M.coeffs[0]) != 0):
        raise ValueError("M(0) must vanish")

    zs = strip_grid(r, y_max, n_re, n_y)
    levels = model.levels_out
    nlev = int(levels.max(initial=0)) + 1
    n = model.rank
    best = 0.0
    arg = (tuple([0] * n), complex(zs[0]), 0)
    per_y = {}
    for H in box_chunks(n, bound):
        H = H[np.any(H != 0, axis=1)]
        if not len(H):
            continue
        Hf = H.astype(float)
        c2 = np.einsum("dcn,kn->kdc", model.phi2, Hf)          # (K, m+1, d_f0)
        U = np.abs(Hf @ model.T.T)
        a = np.zeros((len(H), int(model.levels_in.max()) + 1))
        np.add.at(a.T, model.levels_in, U.T)
        for zi, z in enumerate(zs):
            t = np.exp(2j * np.pi * z)
            y = z.imag
            f0 = np.zeros((len(H), d_f0), dtype=complex)
            for d in range(c2.shape[1] - 1, -1, -1):
                f0 = f0 * z + c2[:, d]
            # |M(t) f0| / |t| computed from M(t)/t to avoid underflow
            moved = f0 @ M.divided(t).T * np.exp(2j * np.pi * z.real)
            A = a @ (y ** np.arange(a.shape[1]))
            ratios = np.zeros((len(H), nlev))
            for k in range(nlev):
                ratios[:, k] = np.abs(moved[:, levels == k]).sum(axis=1) / A
            flat = int(np.argmax(ratios))
            hi, k = divmod(flat, nlev)
            val = float(ratios[hi, k])
            per_y[y] = max(per_y.get(y, 0.0), val)
            if val > best:
                best = val
                arg = (tuple(int(x) for x in H[hi]), complex(z), k)
    ys = sorted(per_y)
    rows = tuple((float(y), per_y[y]) for y in ys)
    bounded = bool(rows[-1][1] <= rows[0][1] * (1 + 1e-9) + 1e-300)
    grid = {"r": r, "y_max": y_max, "n_re": n_re, "n_y": n_y}
    return PerturbationReport(best, arg[0], arg[1], arg[2], rows, bounded, bound, grid)
