"""Graded pieces of the weight filtration and the limit mixed Hodge structure."""

from __future__ import annotations

from dataclasses import dataclass, field

from ..exact import GMatrix, GVector, Subspace, kernel
from .orbit import NilpotentOrbit
from .weight import WeightFiltration, monodromy_weight_filtration

__all__ = [
    "GradedSpace",
    "LimitMHS",
    "PurityError",
    "graded_space",
    "build_limit_mhs",
    "hodge_numbers",
    "check_kernel_injectivity",
    "deligne_splitting",
    "is_r_split",
]


class PurityError(ValueError):
    """Some Gr^W_k is not a pure Hodge structure of weight k."""

    def __init__(self, level: int, dim: int, filled: int, total: int, hodge_numbers: dict,
                 failing_levels: tuple = ()):
        self.level = level
        self.dim = dim
        self.filled = filled
        self.total = total
        self.deficit = dim - filled
        self.hodge_numbers = hodge_numbers
        self.failing_levels = tuple(failing_levels) or (level,)
        super().__init__(
            f"Gr^W_{level} is not pure: Hodge pieces span {filled} of {dim} dimensions "
            f"with total dimension {total} (h^pq = {dict(sorted(hodge_numbers.items()))})")

    def as_dict(self) -> dict:
        return {
            "level": self.level,
            "dim": self.dim,
            "filled": self.filled,
            "total": self.total,
            "deficit": self.deficit,
            "failing_levels": list(self.failing_levels),
            "hodge_numbers": {f"{p},{q}": h for (p, q), h in sorted(self.hodge_numbers.items())},
        }


@dataclass(frozen=True)
class GradedSpace:
    """G = sum_k Gr^W_k in coordinates.

    ``basis`` has as columns an adapted basis of H: the canonical complement
    of W_{k-1} in W_k for each k, in increasing k.  A vector of G is written
    in these coordinates, so block k of ``basis^-1 x`` is the class in Gr_k of
    any x in W_k.
    """

    W: WeightFiltration
    levels: tuple[int, ...]
    offsets: dict
    dims: dict
    basis: GMatrix
    basis_inv: GMatrix
    N_graded: GMatrix

    @property
    def rank(self) -> int:
        return self.basis.nrows

    def block(self, k: int) -> range:
        o = self.offsets.get(k, 0)
        return range(o, o + self.dims.get(k, 0))

    def class_of(self, x, k: int) -> GVector:
        """Class in Gr_k (block coordinates) of x in W_k."""
        x = GVector(x)
        if not self.W[k].contains(x):
            raise ValueError(f"vector is not in W_{k}")
        c = self.basis_inv @ x
        return GVector(c[i] for i in self.block(k))

    def embed(self, k: int, coords) -> GVector:
        """Vector of G supported on Gr_k."""
        out = [0] * self.rank
        for i, a in zip(self.block(k), GVector(coords)):
            out[i] = a
        return GVector(out)

    def graded_subspace(self, sub: Subspace, k: int) -> Subspace:
        """Image of sub ∩ W_k in Gr_k coordinates."""
        inter = sub & self.W[k]
        return Subspace(self.dims.get(k, 0), [self.class_of(v, k) for v in inter.basis])

    def graded_map(self, power: int) -> GMatrix:
        return self.N_graded ** power


def graded_space(N: GMatrix, W: WeightFiltration) -> GradedSpace:
    n = N.nrows
    cols: list[GVector] = []
    offsets: dict[int, int] = {}
    dims: dict[int, int] = {}
    levels = []
    for k in W.indices:
        comp = W[k - 1].complement_in(W[k])
        if comp.dim:
            offsets[k] = len(cols)
            dims[k] = comp.dim
            levels.append(k)
            cols.extend(comp.basis)
    basis = GMatrix.from_columns(cols, nrows=n)
    binv = basis.inverse()
    full = binv @ N @ basis
    # keep only the blocks Gr_k -> Gr_{k-2}
    rows = [[0] * n for _ in range(n)]
    for k in levels:
        if k - 2 not in offsets:
            continue
        for i in range(dims[k - 2]):
            for j in range(dims[k]):
                rows[offsets[k - 2] + i][offsets[k] + j] = full[offsets[k - 2] + i, offsets[k] + j]
    return GradedSpace(W, tuple(levels), offsets, dims, basis, binv, GMatrix(rows, ncols=n))


def hodge_numbers(pieces: dict) -> dict:
    return {pq: s.dim for pq, s in pieces.items() if s.dim}


@dataclass(frozen=True)
class LimitMHS:
    orbit: NilpotentOrbit
    W: WeightFiltration
    graded: GradedSpace
    # k -> {(p, q): Subspace of Gr_k coordinates}
    graded_hodge: dict = field(repr=False)
    # k -> {p: F^p Gr_k}
    graded_F: dict = field(repr=False)

    def hodge_numbers(self) -> dict:
        return {k: hodge_numbers(v) for k, v in self.graded_hodge.items()}


def _graded_F(orbit: NilpotentOrbit, G: GradedSpace) -> dict:
    out = {}
    lo, hi = orbit.F.lo, orbit.F.hi
    for k in G.levels:
        out[k] = {p: G.graded_subspace(orbit.F[p], k) for p in range(lo, hi + 1)}
    return out


def _F_at(gF: dict, p: int, dim: int) -> Subspace:
    keys = list(gF)
    if p < keys[0]:
        return gF[keys[0]]
    if p > keys[-1]:
        return Subspace.zero(dim)
    return gF[p]


def _decompose(gF: dict, k: int, dim: int) -> dict:
    keys = list(gF)
    lo, hi = keys[0], keys[-1]
    pieces = {}
    for p in range(min(lo, k - hi) - 1, max(hi, k - lo) + 2):
        q = k - p
        piece = _F_at(gF, p, dim) & _F_at(gF, q, dim).conjugate()
        if piece.dim:
            pieces[(p, q)] = piece
    return pieces


def build_limit_mhs(orbit: NilpotentOrbit) -> LimitMHS:
    """Weight filtration plus Hodge decomposition H^{p,q} = F^p ∩ conj(F^q)
    of every graded piece.  Raises :class:`PurityError` naming the highest
    graded level that is not pure of its weight, plus all failing levels."""
    W = monodromy_weight_filtration(orbit.N, orbit.weight)
    G = graded_space(orbit.N, W)
    gF = _graded_F(orbit, G)
    decomp = {}
    failures = []
    # top weight first, so the diagnosis names the highest impure level
    for k in reversed(G.levels):
        d = G.dims[k]
        pieces = _decompose(gF[k], k, d)
        total = sum(s.dim for s in pieces.values())
        filled = Subspace.zero(d)
        for s in pieces.values():
            filled = filled + s
        if total != d or filled.dim != d:
            failures.append((k, d, filled.dim, total, hodge_numbers(pieces)))
        decomp[k] = pieces
    if failures:
        k, d, filled, total, hn = failures[0]
        raise PurityError(k, d, filled, total, hn, tuple(f[0] for f in failures))
    decomp = dict(sorted(decomp.items()))
    return LimitMHS(orbit, W, G, decomp, gF)


def check_kernel_injectivity(orbit: NilpotentOrbit) -> bool:
    """True iff no nonzero lattice vector of Ker N lies in F^0.

    A Q(i)-subspace contains a nonzero rational vector exactly when it meets
    its complex conjugate, so the test is exact.
    """
    s = kernel(orbit.N) & orbit.F[0]
    return (s & s.conjugate()).is_zero()


def deligne_splitting(orbit: NilpotentOrbit, W: WeightFiltration | None = None) -> dict:
    """(p, q) -> I^{p,q} = F^p ∩ W_{p+q} ∩ (conj F^q ∩ W_{p+q} + sum_{j>=1} conj F^{q-j} ∩ W_{p+q-j-1})."""
    if W is None:
        W = monodromy_weight_filtration(orbit.N, orbit.weight)
    F = orbit.F
    n = orbit.rank
    cF = {p: F[p].conjugate() for p in range(F.lo, F.hi + 1)}

    def conjF(p: int) -> Subspace:
        if p < F.lo:
            return Subspace.full(n)
        if p > F.hi:
            return Subspace.zero(n)
        return cF[p]

    out = {}
    for k in W.indices:
        wk = W[k]
        if wk.dim == W[k - 1].dim:
            continue
        for p in range(F.lo, F.hi):
            q = k - p
            inner = conjF(q) & wk
            j = 1
            while W[k - j - 1].dim:
                inner = inner + (conjF(q - j) & W[k - j - 1])
                j += 1
            piece = F[p] & wk & inner
            if piece.dim:
                out[(p, q)] = piece
    return out


def is_r_split(orbit: NilpotentOrbit) -> bool:
    """True iff the Deligne splitting is stable under conjugation, conj I^{p,q} = I^{q,p}."""
    I = deligne_splitting(orbit)
    total = sum(s.dim for s in I.values())
    if total != orbit.rank:
        return False
    return all(I.get((q, p), Subspace.zero(orbit.rank)) == s.conjugate() for (p, q), s in I.items())
