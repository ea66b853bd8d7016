"""Minimal lattice norm and the empirical constant of the lower estimate."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ..exact import GMatrix
from . import kernels
from ._pykernels import box_chunks
from .model import SectionModel
from .strip import strip_grid

__all__ = ["LatticeNorm", "EstimateReport", "lattice_min_norm", "estimate_epsilon", "NotInvariantTarget"]


class NotInvariantTarget(ValueError):
    """The target has components outside Ker N."""


@dataclass(frozen=True)
class LatticeNorm:
    E: float
    argmin: tuple
    bound: int
    certified: bool
    tail_bound: float

    def as_dict(self) -> dict:
        return {"E": self.E, "argmin": list(self.argmin), "bound": self.bound,
                "certified": self.certified, "tail_bound": self.tail_bound}


def _T_numerators(model: SectionModel) -> tuple[np.ndarray, int]:
    T = model.T_exact
    if not T.is_real():
        raise ValueError("lattice-to-bigraded map must be rational")
    D = T.denominator()
    return np.array([[int(a.re * D) for a in r] for r in T.rows], dtype=np.int64), D


def lattice_min_norm(model: SectionModel, bound: int, basis=None) -> LatticeNorm:
    """min over nonzero lattice h with |h_c| <= bound of the l1 norm of its
    bigraded coordinates.

    ``basis`` (columns) replaces the standard lattice.  ``certified`` is set
    when the coercivity bound ||u|| >= (bound + 1) / max|T^-1| rules out
    every vector outside the box.
    """
    if bound < 1:
        raise ValueError("bound must be at least 1")
    T = model.T_exact
    if basis is not None:
        L = GMatrix(basis)
        T = T @ L
    Tf = T.to_numpy().real if T.is_real() else T.to_numpy()
    n = Tf.shape[1]
    best = np.inf
    arg = None
    for H in box_chunks(n, bound):
        nz = np.any(H != 0, axis=1)
        H = H[nz]
        if not len(H):
            continue
        vals = np.abs(H.astype(float) @ Tf.T).sum(axis=1)
        i = int(np.argmin(vals))
        if vals[i] < best:
            best = float(vals[i])
            arg = tuple(int(x) for x in H[i])
    tinv = np.abs(T.inverse().to_numpy()).max()
    tail = (bound + 1) / tinv
    return LatticeNorm(best, arg, bound, bool(tail >= best), float(tail))


@dataclass(frozen=True)
class EstimateReport:
    epsilon: float
    argmin_h: tuple
    argmin_z: complex
    argmin_k: int
    bound: int
    grid: dict
    scanned: int
    kpos: int
    part_ii_violations: int
    backend: str
    extra: dict = field(default_factory=dict)

    def as_dict(self) -> dict:
        return {
            "epsilon_empirical": self.epsilon,
            "argmin": {"h": list(self.argmin_h), "z": [self.argmin_z.real, self.argmin_z.imag],
                       "k": self.argmin_k},
            "bound": self.bound,
            "grid": self.grid,
            "scanned_pairs": self.scanned,
            "max_level_positive": self.kpos,
            "part_ii_violations": self.part_ii_violations,
            "backend": self.backend,
            **self.extra,
        }


def check_invariant_target(model: SectionModel, v) -> np.ndarray:
    v = np.asarray(v, dtype=complex).reshape(-1)
    if v.shape[0] != model.out_dim:
        raise ValueError(f"target has {v.shape[0]} coordinates, expected {model.out_dim}")
    if model.levels_out is not None and np.any(v[model.levels_out > 0] != 0):
        raise NotInvariantTarget("target must lie in Ker N (level-0 coordinates only)")
    return v


def estimate_epsilon(model: SectionModel, v=None, bound: int = 20, r: float = 2.0,
                     y_max: float = 4096.0, n_re: int = 8, n_y: int = 12) -> EstimateReport:
    """min over lattice h outside Ker N (box ``bound``) and grid z of
    max_k |phi(h; z) - v|_k y^k / A(h, z)."""
    model.require_hodge("estimate_epsilon")
    if v is None:
        v = np.zeros(model.out_dim, dtype=complex)
    v = check_invariant_target(model, v)
    zs = strip_grid(r, y_max, n_re, n_y)
    Tn, DT = _T_numerators(model)
    N = np.array(model.orbit.N.to_int_lists(), dtype=np.int64)
    best, h, zi, k, scanned, kpos, viol = kernels.scan_epsilon(
        model.phi_num.real.astype(np.int64), model.phi_num.imag.astype(np.int64), model.denominator,
        model.levels_out, Tn, DT, model.levels_in, v, N, bound, zs)
    z = complex(zs[zi]) if zi >= 0 else complex("nan")
    grid = {"r": r, "y_max": y_max, "n_re": n_re, "n_y": n_y}
    return EstimateReport(best, tuple(int(x) for x in h), z, k, bound, grid, scanned, kpos, viol,
                          kernels.backend_name())
