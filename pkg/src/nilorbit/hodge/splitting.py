"""Splittings of the weight filtration and their discrepancy iota.

Both splittings are maps G -> H inducing the identity on every Gr^W and
commuting with N.  The rational one lifts the primitive basis into
W ∩ Ker N^(j+1); the Hodge one lifts each Hodge-type primitive vector into
F^p ∩ W ∩ Ker N^(j+1).  iota = alpha_C^-1 alpha_Q is an automorphism of G,
written here in bigraded coordinates.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import lcm

from ..exact import GMatrix, GVector, Subspace, kernel, solve
from .bigrading import BiGradedSpace, primitive_decomposition
from .mhs import LimitMHS

__all__ = ["AlphaConstructionError", "IotaMap", "construct_alpha", "normalize_iota", "rational_alpha"]


class AlphaConstructionError(ValueError):
    """No lift with the required properties exists."""


@dataclass(frozen=True)
class IotaMap:
    bigraded: BiGradedSpace
    alpha_Q: GMatrix          # bigraded coordinates -> H
    alpha_C: GMatrix          # bigraded coordinates -> H
    iota: GMatrix             # bigraded coordinates -> bigraded coordinates
    components: dict = field(repr=False)
    lattice_index: int = 1

    @property
    def alpha_Q_inv(self) -> GMatrix:
        return self.alpha_Q.inverse()

    def lattice_to_bigraded(self) -> GMatrix:
        """T with u = T h: lattice vector h to its bigraded coordinates."""
        return self.alpha_Q.inverse()

    def vanishing_violations(self) -> list[tuple[int, int, int]]:
        """(i, j, k) with k < 0 and a nonzero component."""
        return sorted(key for key, blk in self.components.items() if key[2] < 0 and not blk.is_zero())


def _lift(orbit, bg: BiGradedSpace, j: int, target: GVector, extra: Subspace | None) -> GVector:
    """Canonical x in W_{w+j} ∩ Ker N^(j+1) (∩ extra) with class ``target`` in Gr_{w+j}."""
    G = bg.graded
    w = orbit.weight
    space = G.W[w + j] & kernel(orbit.N ** (j + 1))
    if extra is not None:
        space = space & extra
    if space.is_zero():
        raise AlphaConstructionError(f"no admissible lifts at primitive level {j}")
    sb = space.basis_matrix()
    cls = G.basis_inv @ sb
    rows = list(G.block(w + j))
    system = cls.submatrix(rows, range(sb.ncols))
    c = solve(system, target)
    if c is None:
        raise AlphaConstructionError(
            f"primitive class at level {j} has no lift in the required subspace")
    return sb @ c


def _chain_matrix(orbit, bg: BiGradedSpace, tops: dict, order_labels) -> GMatrix:
    """Columns N^(j-k) tops[(j, idx)] for each label (j, idx, k) in order."""
    cols = []
    cache = {}
    for j, idx, k in order_labels:
        key = (j, idx)
        if key not in cache:
            chain = [tops[key]]
            for _ in range(j):
                chain.append(orbit.N @ chain[-1])
            cache[key] = chain
        cols.append(cache[key][j - k])
    return GMatrix.from_columns(cols, nrows=orbit.rank)


def rational_alpha(orbit, bg: BiGradedSpace) -> GMatrix:
    """Splitting over the rationals: bigraded coordinates -> H."""
    tops = {}
    for j, prim in bg.primitive.items():
        for s, p in enumerate(prim):
            tops[(j, s)] = _lift(orbit, bg, j, p, None)
    return _chain_matrix(orbit, bg, tops, bg.labels)


def construct_alpha(mhs: LimitMHS, bigraded: BiGradedSpace | None = None) -> IotaMap:
    orbit = mhs.orbit
    bg = bigraded if bigraded is not None else primitive_decomposition(mhs)
    G = bg.graded
    w = orbit.weight
    aq = rational_alpha(orbit, bg)

    tops_c = {}
    hl = []
    for j, p, q, t, k in bg.hodge_labels:
        hl.append((j, (p, t), k))
    for j, prim in bg.primitive.items():
        if not prim:
            continue
        hp = bg.hodge_primitive[j]
        d = G.dims[w + j]
        types = [(p, t) for (jj, p, q, t, k) in bg.hodge_labels if jj == j and k == j]
        for col, (p, t) in enumerate(types):
            vec = GVector([0] * d)
            for s, a in enumerate(hp.column(col)):
                vec = vec + GVector(prim[s]).scale(a)
            tops_c[(j, (p, t))] = _lift(orbit, bg, j, vec, orbit.F[p])
    ac_h = _chain_matrix(orbit, bg, tops_c, hl)
    ac = ac_h @ bg.hodge_basis_inv

    iota = ac.inverse() @ aq
    comps = _components(bg, iota)
    return IotaMap(bg, aq, ac, iota, comps, lattice_index(ac))


def lattice_index(alpha_C: GMatrix) -> int:
    """Smallest d > 0 with d * alpha_C^-1 h integral (Gaussian) for every lattice h."""
    inv = alpha_C.inverse()
    d = 1
    for r in inv.rows:
        for a in r:
            d = lcm(d, a.denominator())
    return d


def _components(bg: BiGradedSpace, iota: GMatrix) -> dict:
    """(i, j, k) -> block sending the top of each G^(j) chain to G^(i) at level j - k."""
    index = {lab: c for c, lab in enumerate(bg.labels)}
    mult = {j: len(p) for j, p in bg.primitive.items()}
    out = {}
    for j, nj in mult.items():
        if not nj:
            continue
        for i, ni in mult.items():
            if not ni:
                continue
            for level in range(i + 1):
                k = j - level
                rows = [index[(i, s2, level)] for s2 in range(ni)]
                cols = [index[(j, s, j)] for s in range(nj)]
                out[(i, j, k)] = iota.submatrix(rows, cols)
    return out


def normalize_iota(im: IotaMap) -> IotaMap:
    """Keep only the components that preserve the kernel level."""
    bg = im.bigraded
    index = {lab: c for c, lab in enumerate(bg.labels)}
    n = bg.rank
    rows = [[0] * n for _ in range(n)]
    for (i, j, k), blk in im.components.items():
        if k != 0:
            continue
        for level in range(j + 1):
            for a in range(blk.nrows):
                for b in range(blk.ncols):
                    rows[index[(i, a, level)]][index[(j, b, level)]] = blk[a, b]
    iota = GMatrix(rows, ncols=n)
    comps = {key: (blk if key[2] == 0 else GMatrix.zeros(blk.nrows, blk.ncols))
             for key, blk in im.components.items()}
    return IotaMap(bg, im.alpha_Q, im.alpha_C, iota, comps, im.lattice_index)
