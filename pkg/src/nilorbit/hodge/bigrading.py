"""Primitive decomposition of the graded space and its Hodge refinement."""

from __future__ import annotations

from dataclasses import dataclass, field

from ..exact import GMatrix, GVector, Subspace, kernel, solve
from .mhs import GradedSpace, LimitMHS, graded_space
from .orbit import NilpotentOrbit
from .weight import monodromy_weight_filtration

__all__ = ["BiGradedSpace", "ShiftError", "primitive_decomposition", "rational_decomposition"]


class ShiftError(ValueError):
    """N fails to shift the primitive pieces isomorphically."""


@dataclass(frozen=True)
class BiGradedSpace:
    """Bigraded basis of G.

    ``labels[c] = (j, s, k)`` names column c of ``basis``: the vector
    N^(j-k) p_{j,s} where p_{j,s} is the s-th canonical basis vector of the
    primitive part of Gr_{w+j}.  Columns are ordered by j, then k, then s, so
    N acts on these coordinates as a shift lowering k by one.

    When a limit MHS is available ``hodge_labels[c] = (j, p, q, t, k)`` names
    column c of ``hodge_basis`` (coordinates in the bigraded basis), the
    vector N^(j-k) h_{j,p,t} of Hodge type (p-(j-k), q-(j-k)).
    """

    graded: GradedSpace
    weight: int
    depth: int
    labels: tuple
    basis: GMatrix
    basis_inv: GMatrix
    primitive: dict
    pieces: dict = field(repr=False)
    hodge_labels: tuple | None = None
    hodge_basis: GMatrix | None = None
    hodge_basis_inv: GMatrix | None = None
    # per j, matrix whose columns are the Hodge basis of PGr_{w+j} in p-coordinates
    hodge_primitive: dict | None = field(default=None, repr=False)

    @property
    def rank(self) -> int:
        return self.basis.nrows

    @property
    def has_hodge(self) -> bool:
        return self.hodge_basis is not None

    def level_of(self, c: int) -> int:
        return self.labels[c][2]

    def levels(self) -> list[int]:
        return [lab[2] for lab in self.labels]

    def negative_mask(self) -> list[bool]:
        """Hodge-bigraded columns spanning G^{<0}."""
        if not self.has_hodge:
            raise ValueError("no Hodge structure attached")
        return [p - (j - k) < 0 for (j, p, q, t, k) in self.hodge_labels]

    def negative_part(self) -> Subspace:
        """G^{<0} as a subspace of G (graded coordinates)."""
        cols = [self.basis @ self.hodge_basis.column(c)
                for c, neg in enumerate(self.negative_mask()) if neg]
        return Subspace(self.rank, cols)

    def shift_matrix(self) -> GMatrix:
        """N in bigraded coordinates."""
        n = self.rank
        index = {lab: c for c, lab in enumerate(self.labels)}
        rows = [[0] * n for _ in range(n)]
        for c, (j, s, k) in enumerate(self.labels):
            if k > 0:
                rows[index[(j, s, k - 1)]][c] = 1
        return GMatrix(rows, ncols=n)

    def hodge_negative_projection(self) -> GMatrix:
        """Rows of the G^{<0} coordinates, applied to Hodge-bigraded coordinates."""
        mask = self.negative_mask()
        n = len(mask)
        sel = [c for c in range(n) if mask[c]]
        return GMatrix([[1 if c == r else 0 for c in range(n)] for r in sel], ncols=n)

    def hodge_nonnegative_projection(self) -> GMatrix:
        mask = self.negative_mask()
        n = len(mask)
        sel = [c for c in range(n) if not mask[c]]
        return GMatrix([[1 if c == r else 0 for c in range(n)] for r in sel], ncols=n)


def _primitive_bases(G: GradedSpace, w: int, m: int) -> dict:
    """j -> list of canonical basis vectors of PGr_{w+j} in Gr_{w+j} coordinates."""
    out = {}
    for j in range(m + 1):
        k = w + j
        d = G.dims.get(k, 0)
        if not d:
            out[j] = []
            continue
        target = k - 2 * j - 2
        power = G.graded_map(j + 1)
        if G.dims.get(target, 0):
            blk = power.submatrix(list(G.block(target)), list(G.block(k)))
            prim = kernel(blk)
        else:
            prim = Subspace.full(d)
        out[j] = list(prim.basis)
    return out


def _assemble(G: GradedSpace, w: int, m: int, prim: dict):
    n = G.rank
    labels = []
    cols = []
    pieces = {}
    for j in range(m + 1):
        tops = [G.embed(w + j, p) for p in prim[j]]
        chains = []
        for top in tops:
            chain = [top]
            for _ in range(j):
                chain.append(G.N_graded @ chain[-1])
            chains.append(chain)
        for k in range(j + 1):
            vecs = []
            for s, chain in enumerate(chains):
                v = chain[j - k]
                if v.is_zero():
                    raise ShiftError(f"N^{j - k} kills a primitive vector of Gr_{w + j}")
                labels.append((j, s, k))
                cols.append(v)
                vecs.append(v)
            pieces[(j, k)] = Subspace(n, vecs)
    basis = GMatrix.from_columns(cols, nrows=n)
    if len(cols) != n:
        raise ShiftError(f"primitive pieces span {len(cols)} of {n} dimensions")
    try:
        binv = basis.inverse()
    except ZeroDivisionError as exc:
        raise ShiftError("primitive chains are linearly dependent") from exc
    return tuple(labels), basis, binv, pieces


def rational_decomposition(orbit: NilpotentOrbit) -> BiGradedSpace:
    """Bigrading from N and W alone; no Hodge data needed."""
    W = monodromy_weight_filtration(orbit.N, orbit.weight)
    G = graded_space(orbit.N, W)
    m = W.depth
    prim = _primitive_bases(G, orbit.weight, m)
    labels, basis, binv, pieces = _assemble(G, orbit.weight, m, prim)
    return BiGradedSpace(G, orbit.weight, m, labels, basis, binv,
                         {j: tuple(v) for j, v in prim.items()}, pieces)


def primitive_decomposition(mhs: LimitMHS) -> BiGradedSpace:
    """Bigrading refined by the Hodge decomposition of each primitive part."""
    orbit = mhs.orbit
    G = mhs.graded
    w = orbit.weight
    m = mhs.W.depth
    prim = _primitive_bases(G, w, m)
    labels, basis, binv, pieces = _assemble(G, w, m, prim)

    hodge_prim = {}
    hlabels = []
    hcols = []
    index = {lab: c for c, lab in enumerate(labels)}
    n = G.rank
    for j in range(m + 1):
        if not prim[j]:
            hodge_prim[j] = GMatrix.zeros(0, 0)
            continue
        d = G.dims[w + j]
        psub = Subspace(d, prim[j])
        pmat = GMatrix.from_columns(prim[j], nrows=d)
        per_type = []
        for (p, q), piece in sorted(mhs.graded_hodge[w + j].items()):
            inter = piece & psub
            for t, v in enumerate(inter.basis):
                per_type.append((p, q, t, _coords(pmat, v)))
        if len(per_type) != len(prim[j]):
            raise ShiftError(f"Hodge pieces do not decompose the primitive part of Gr_{w + j}")
        per_type.sort(key=lambda e: (-e[0], e[2]))
        hodge_prim[j] = GMatrix.from_columns([c for *_, c in per_type], nrows=len(prim[j]))
        for k in range(j + 1):
            for p, q, t, coeff in per_type:
                col = [0] * n
                for s, a in enumerate(coeff):
                    col[index[(j, s, k)]] = a
                hlabels.append((j, p, q, t, k))
                hcols.append(col)
    hb = GMatrix.from_columns(hcols, nrows=n)
    # reorder to the bigraded column order (j, k, then type)
    order = sorted(range(n), key=lambda c: (hlabels[c][0], hlabels[c][4], -hlabels[c][1], hlabels[c][3]))
    hlabels = [hlabels[c] for c in order]
    hb = GMatrix.from_columns([hb.column(c) for c in order], nrows=n)
    return BiGradedSpace(G, w, m, labels, basis, binv,
                         {j: tuple(v) for j, v in prim.items()}, pieces,
                         tuple(hlabels), hb, hb.inverse(), hodge_prim)


def _coords(pmat: GMatrix, v: GVector) -> GVector:
    x = solve(pmat, v)
    if x is None:
        raise ShiftError("Hodge vector outside the primitive part")
    return x
