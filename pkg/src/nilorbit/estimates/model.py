"""Lattice sections over the strip as polynomial maps in z.

For a lattice vector h the section is z -> sum_d Phi_d h z^d.  In Hodge mode
the coordinates are those of G^{<0} in the Hodge-bigraded basis and

    Phi_d = pr1 . Hb^-1 . S^d / d! . iota . T,

with T the lattice-to-bigraded map, S the shift (N in bigraded coordinates)
and Hb the Hodge-bigraded basis.  In rational mode (no limit MHS) the
coordinates are those of H / F^0 and Phi_d = Q N^d / d!.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import factorial, lcm

import numpy as np

from ..exact import GMatrix, GScalar, GVector, Subspace, as_gscalar, kernel
from ..hodge import (
    AlphaConstructionError,
    IotaMap,
    NilpotentOrbit,
    PurityError,
    ShiftError,
    build_limit_mhs,
    construct_alpha,
    exp_nilpotent,
    normalize_iota,
    rational_alpha,
    rational_decomposition,
)

__all__ = ["SectionModel", "ModeError", "build_section_model", "integer_numerators"]


class ModeError(ValueError):
    """The operation needs a limit MHS and a Hodge-compatible splitting."""


@dataclass(frozen=True)
class SectionModel:
    orbit: NilpotentOrbit
    mode: str                      # "hodge" or "rational"
    phi_exact: tuple               # Phi_d as GMatrix, d = 0..m
    phi2_exact: tuple              # F^0 part (Hodge mode only; empty otherwise)
    T_exact: GMatrix               # lattice -> bigraded coordinates
    levels_in: np.ndarray          # kernel level of each bigraded coordinate
    levels_out: np.ndarray | None  # kernel level of each output coordinate (Hodge mode)
    invariant: Subspace            # Ker N part of the output space
    iota: IotaMap | None = None
    note: str = ""
    denominator: int = 1
    phi_num: np.ndarray = field(default=None, repr=False)   # (m+1, d_out, n) complex, integer valued
    phi: np.ndarray = field(default=None, repr=False)       # phi_num / denominator
    phi2: np.ndarray = field(default=None, repr=False)
    T: np.ndarray = field(default=None, repr=False)

    @property
    def rank(self) -> int:
        return self.orbit.rank

    @property
    def out_dim(self) -> int:
        return self.phi.shape[1]

    @property
    def degree(self) -> int:
        return self.phi.shape[0] - 1

    def require_hodge(self, what: str) -> None:
        if self.mode != "hodge":
            raise ModeError(f"{what} needs a limit MHS with a Hodge splitting; "
                            f"orbit {self.orbit.label!r} only supports rational mode ({self.note})")

    # evaluation
    def coefficients(self, h) -> np.ndarray:
        """(m+1, d_out) coefficient vectors of the section through h."""
        return np.einsum("dcn,n->dc", self.phi, np.asarray(h, dtype=float))

    def evaluate(self, h, z: complex) -> np.ndarray:
        c = self.coefficients(h)
        out = np.zeros(c.shape[1], dtype=complex)
        for d in range(c.shape[0] - 1, -1, -1):
            out = out * z + c[d]
        return out

    def evaluate_exact(self, h, z) -> GVector:
        z = as_gscalar(z)
        h = GVector(h)
        out = GVector.zero(self.out_dim)
        zp = GScalar(1)
        for m in self.phi_exact:
            out = out + (m @ h).scale(zp)
            zp = zp * z
        return out

    def evaluate_f0(self, h, z: complex) -> np.ndarray:
        self.require_hodge("the F^0 component")
        c = np.einsum("dcn,n->dc", self.phi2, np.asarray(h, dtype=float))
        out = np.zeros(c.shape[1], dtype=complex)
        for d in range(c.shape[0] - 1, -1, -1):
            out = out * z + c[d]
        return out

    def bigraded(self, h) -> np.ndarray:
        return self.T @ np.asarray(h, dtype=float)

    def level_norms_in(self, h) -> np.ndarray:
        """a_k: l1 norm of the level-k bigraded components of h."""
        u = np.abs(self.bigraded(h))
        out = np.zeros(int(self.levels_in.max()) + 1 if len(self.levels_in) else 1)
        np.add.at(out, self.levels_in, u)
        return out

    def monodromy(self) -> GMatrix:
        return exp_nilpotent(self.orbit.N)

    def in_kernel(self, h) -> bool:
        return not np.any(self.orbit.N.to_numpy().real @ np.asarray(h, dtype=float))


def integer_numerators(mats) -> tuple[np.ndarray, int]:
    """Common denominator D and complex array of the integer numerators."""
    D = 1
    for m in mats:
        D = lcm(D, m.denominator())
    arr = np.zeros((len(mats), mats[0].nrows, mats[0].ncols), dtype=complex)
    for d, m in enumerate(mats):
        for i, r in enumerate(m.rows):
            for j, a in enumerate(r):
                if a:
                    arr[d, i, j] = complex(int(a.re * D), int(a.im * D))
    return arr, D


def _quotient_by(sub: Subspace) -> GMatrix:
    """Coordinates of H / sub: reduce against sub, read the non-pivot columns."""
    n = sub.ambient_dim
    free = [c for c in range(n) if c not in set(sub.pivot_columns)]
    rows = []
    for c in free:
        row = []
        for j in range(n):
            red = sub.reduce(GVector.unit(n, j))
            row.append(red[c])
        rows.append(row)
    return GMatrix(rows, ncols=n)


def _finish(model_kwargs: dict, phis: list, phi2s: list, T: GMatrix) -> SectionModel:
    num, D = integer_numerators(phis)
    kw = dict(model_kwargs)
    kw.update(
        phi_exact=tuple(phis),
        phi2_exact=tuple(phi2s),
        T_exact=T,
        denominator=D,
        phi_num=num,
        phi=num / D,
        phi2=(np.stack([m.to_numpy() for m in phi2s]) if phi2s else None),
        T=T.to_numpy().real if T.is_real() else T.to_numpy(),
    )
    return SectionModel(**kw)


def build_section_model(orbit: NilpotentOrbit, mode: str = "auto", normalize: bool = False) -> SectionModel:
    """Exact section polynomials for ``orbit``.

    ``mode="auto"`` uses Hodge mode when the limit MHS and splitting exist and
    falls back to rational mode otherwise.
    """
    if mode not in ("auto", "hodge", "rational"):
        raise ValueError(f"unknown mode {mode!r}")
    note = ""
    if mode in ("auto", "hodge"):
        try:
            mhs = build_limit_mhs(orbit)
            im = construct_alpha(mhs)
        except (PurityError, AlphaConstructionError, ShiftError) as exc:
            if mode == "hodge":
                raise ModeError(str(exc)) from exc
            note = f"no Hodge splitting: {exc}"
        else:
            return _hodge_model(orbit, normalize_iota(im) if normalize else im)
    return _rational_model(orbit, note or "rational mode requested")


def _hodge_model(orbit: NilpotentOrbit, im: IotaMap) -> SectionModel:
    bg = im.bigraded
    T = im.alpha_Q.inverse()
    S = bg.shift_matrix()
    m = bg.depth
    pr1 = bg.hodge_negative_projection()
    pr2 = bg.hodge_nonnegative_projection()
    hinv = bg.hodge_basis_inv
    base = im.iota @ T
    phis, phi2s = [], []
    Sd = GMatrix.identity(bg.rank)
    for d in range(m + 1):
        core = (hinv @ Sd @ base).scale(GScalar(1) / factorial(d))
        phis.append(pr1 @ core if pr1.nrows else GMatrix.zeros(0, orbit.rank))
        phi2s.append(pr2 @ core if pr2.nrows else GMatrix.zeros(0, orbit.rank))
        Sd = Sd @ S
    mask = bg.negative_mask()
    levels_out = np.array([lab[4] for lab, neg in zip(bg.hodge_labels, mask) if neg], dtype=int)
    levels_in = np.array(bg.levels(), dtype=int)
    d_out = int(len(levels_out))
    invariant = Subspace(d_out, [GVector.unit(d_out, c) for c in range(d_out) if levels_out[c] == 0])
    return _finish(dict(orbit=orbit, mode="hodge", levels_in=levels_in, levels_out=levels_out,
                        invariant=invariant, iota=im, note="hodge"), phis, phi2s, T)


def _rational_model(orbit: NilpotentOrbit, note: str) -> SectionModel:
    bg = rational_decomposition(orbit)
    T = rational_alpha(orbit, bg).inverse()
    Q = _quotient_by(orbit.F[0])
    phis = []
    Nd = GMatrix.identity(orbit.rank)
    for d in range(bg.depth + 1):
        phis.append((Q @ Nd).scale(GScalar(1) / factorial(d)))
        Nd = Nd @ orbit.N
    kerN = kernel(orbit.N)
    invariant = Subspace(Q.nrows, [Q @ v for v in kerN.basis])
    return _finish(dict(orbit=orbit, mode="rational", levels_in=np.array(bg.levels(), dtype=int),
                        levels_out=None, invariant=invariant, note=note), phis, [], T)
