"""Subspaces in canonical reduced echelon form, filtrations, and the
operations built on them (sums, intersections, kernels, images, quotients,
induced maps)."""

from __future__ import annotations

from typing import Iterable, Mapping, Sequence

from .matrix import DimensionError, GMatrix, GVector
from .scalar import GScalar, ONE, ZERO

__all__ = [
    "rref",
    "Subspace",
    "Filtration",
    "echelonize",
    "span",
    "kernel",
    "image",
    "preimage",
    "solve",
    "induced_map",
    "induced_map_on_quotient",
    "NotInvariantError",
]


class NotInvariantError(ValueError):
    """A matrix does not preserve the subspaces an induced map needs."""


def rref(rows: Sequence[Sequence[GScalar]], ncols: int) -> tuple[list[list[GScalar]], list[int]]:
    """Reduced row echelon form; returns (nonzero rows, pivot columns)."""
    m = [list(r) for r in rows]
    for r in m:
        if len(r) != ncols:
            raise DimensionError(f"row of length {len(r)} in a {ncols}-column system")
    pivots: list[int] = []
    prow = 0
    nrows = len(m)
    for col in range(ncols):
        if prow == nrows:
            break
        sel = None
        for i in range(prow, nrows):
            if m[i][col]:
                sel = i
                break
        if sel is None:
            continue
        m[prow], m[sel] = m[sel], m[prow]
        piv_row = m[prow]
        inv = piv_row[col].inverse()
        if piv_row[col] != ONE:
            piv_row = [a * inv if a else a for a in piv_row]
            m[prow] = piv_row
        for i in range(nrows):
            if i != prow:
                f = m[i][col]
                if f:
                    row = m[i]
                    m[i] = [a - f * b if b else a for a, b in zip(row, piv_row)]
        pivots.append(col)
        prow += 1
    return m[:prow], pivots


class Subspace:
    """A subspace of Q(i)^n stored by its unique reduced echelon basis.

    Equality of subspaces is equality of canonical bases, so instances can be
    compared and hashed directly.
    """

    __slots__ = ("ambient_dim", "basis", "pivot_columns")

    def __init__(self, ambient_dim: int, basis: Iterable[Sequence] = (), *, _canonical: bool = False):
        vecs = [GVector(v) for v in basis]
        for v in vecs:
            if len(v) != ambient_dim:
                raise DimensionError(f"vector of dim {len(v)} in ambient dim {ambient_dim}")
        if _canonical:
            rows = vecs
            piv = [next(j for j, a in enumerate(v) if a) for v in vecs]
        else:
            red, piv = rref(vecs, ambient_dim)
            rows = [GVector(r) for r in red]
        object.__setattr__(self, "ambient_dim", ambient_dim)
        object.__setattr__(self, "basis", tuple(rows))
        object.__setattr__(self, "pivot_columns", tuple(piv))

    def __setattr__(self, name, value):
        raise AttributeError("Subspace is immutable")

    @classmethod
    def zero(cls, n: int) -> "Subspace":
        return cls(n, (), _canonical=True)

    @classmethod
    def full(cls, n: int) -> "Subspace":
        return cls(n, [GVector.unit(n, i) for i in range(n)], _canonical=True)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def is_zero(self) -> bool:
        return not self.basis

    def is_full(self) -> bool:
        return self.dim == self.ambient_dim

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        return self.ambient_dim == other.ambient_dim and self.basis == other.basis

    def __hash__(self):
        return hash((self.ambient_dim, self.basis))

    def __repr__(self):
        inner = ", ".join("(" + ", ".join(str(a) for a in v) + ")" for v in self.basis)
        return f"Subspace(dim={self.dim}/{self.ambient_dim}: {inner})"

    def _check(self, other: "Subspace") -> None:
        if self.ambient_dim != other.ambient_dim:
            raise DimensionError(f"ambient dims {self.ambient_dim} and {other.ambient_dim}")

    # membership and coordinates
    def reduce(self, v: Sequence) -> GVector:
        """Subtract the basis combination that clears every pivot column."""
        out = list(GVector(v))
        if len(out) != self.ambient_dim:
            raise DimensionError("vector dimension mismatch")
        for row, p in zip(self.basis, self.pivot_columns):
            f = out[p]
            if f:
                out = [a - f * b if b else a for a, b in zip(out, row)]
        return GVector(out)

    def contains(self, v: Sequence) -> bool:
        return self.reduce(v).is_zero()

    def __contains__(self, v) -> bool:
        return self.contains(v)

    def contains_subspace(self, other: "Subspace") -> bool:
        self._check(other)
        return all(self.contains(v) for v in other.basis)

    def __le__(self, other: "Subspace") -> bool:
        return other.contains_subspace(self)

    def coordinates(self, v: Sequence) -> GVector:
        """Coefficients of ``v`` in the canonical basis; ``v`` must lie in the span."""
        v = GVector(v)
        if not self.contains(v):
            raise ValueError("vector is not in the subspace")
        return GVector(v[p] for p in self.pivot_columns)

    # lattice operations
    def __add__(self, other: "Subspace") -> "Subspace":
        self._check(other)
        if other.is_zero():
            return self
        if self.is_zero():
            return other
        return Subspace(self.ambient_dim, list(self.basis) + list(other.basis))

    def annihilator(self) -> "Subspace":
        """Vectors x with <b, x> = 0 for every basis vector b (bilinear pairing)."""
        return kernel(GMatrix(self.basis, ncols=self.ambient_dim))

    def __and__(self, other: "Subspace") -> "Subspace":
        self._check(other)
        if self.is_zero() or other.is_zero():
            return Subspace.zero(self.ambient_dim)
        if self.is_full():
            return other
        if other.is_full():
            return self
        rows = list(self.annihilator().basis) + list(other.annihilator().basis)
        return kernel(GMatrix(rows, ncols=self.ambient_dim))

    def conjugate(self) -> "Subspace":
        return Subspace(self.ambient_dim, [v.conjugate() for v in self.basis])

    def is_real(self) -> bool:
        return all(a.is_real() for v in self.basis for a in v)

    def basis_matrix(self) -> GMatrix:
        """Columns are the canonical basis vectors."""
        return GMatrix.from_columns(self.basis, nrows=self.ambient_dim) if self.basis else GMatrix.zeros(self.ambient_dim, 0)

    # quotients
    def complement_in(self, sup: "Subspace") -> "Subspace":
        """Canonical complement of ``self`` inside ``sup``: the span of sup's
        vectors reduced against self, which vanishes on self's pivot columns."""
        self._check(sup)
        if not sup.contains_subspace(self):
            raise ValueError("subspace is not contained in the given superspace")
        return Subspace(self.ambient_dim, [self.reduce(v) for v in sup.basis])

    def embed(self, n_before: int, n_after: int) -> "Subspace":
        """Image under the coordinate inclusion into a larger direct sum."""
        z0 = [ZERO] * n_before
        z1 = [ZERO] * n_after
        return Subspace(self.ambient_dim + n_before + n_after,
                        [z0 + list(v) + z1 for v in self.basis], _canonical=True)

    @staticmethod
    def direct_sum(parts: Sequence["Subspace"]) -> "Subspace":
        total = sum(p.ambient_dim for p in parts)
        vecs = []
        off = 0
        for p in parts:
            for v in p.basis:
                vecs.append([ZERO] * off + list(v) + [ZERO] * (total - off - p.ambient_dim))
            off += p.ambient_dim
        return Subspace(total, vecs, _canonical=True)


def echelonize(vectors: Sequence[Sequence], ambient_dim: int | None = None) -> Subspace:
    """Canonical reduced echelon basis of the span of ``vectors``."""
    vecs = [GVector(v) for v in vectors]
    if ambient_dim is None:
        if not vecs:
            raise ValueError("ambient dimension required for an empty family")
        ambient_dim = len(vecs[0])
    for v in vecs:
        if len(v) != ambient_dim:
            raise DimensionError("all vectors must share one ambient dimension")
    return Subspace(ambient_dim, vecs)


span = echelonize


def kernel(m: GMatrix) -> Subspace:
    n = m.ncols
    red, piv = rref(m.rows, n)
    pivset = set(piv)
    basis = []
    for free in range(n):
        if free in pivset:
            continue
        v = [ZERO] * n
        v[free] = ONE
        for row, p in zip(red, piv):
            if row[free]:
                v[p] = -row[free]
        basis.append(v)
    return Subspace(n, basis)


def image(m: GMatrix, sub: Subspace | None = None) -> Subspace:
    """Image of the whole space, or of ``sub``, under ``m``."""
    if sub is None:
        return Subspace(m.nrows, m.columns())
    if sub.ambient_dim != m.ncols:
        raise DimensionError("subspace does not live in the matrix domain")
    return Subspace(m.nrows, [m @ v for v in sub.basis])


def preimage(m: GMatrix, target: Subspace) -> Subspace:
    """{x : m x in target}."""
    if target.ambient_dim != m.nrows:
        raise DimensionError("target does not live in the matrix codomain")
    if target.is_full():
        return Subspace.full(m.ncols)
    ann = GMatrix(target.annihilator().basis, ncols=m.nrows)
    return kernel(ann @ m)


def solve(m: GMatrix, b: Sequence) -> GVector | None:
    """Canonical particular solution of m x = b (free variables set to zero),
    or None when the system is inconsistent."""
    b = GVector(b)
    if len(b) != m.nrows:
        raise DimensionError("right-hand side dimension mismatch")
    n = m.ncols
    aug = [list(r) + [bi] for r, bi in zip(m.rows, b)]
    red, piv = rref(aug, n + 1)
    if piv and piv[-1] == n:
        return None
    x = [ZERO] * n
    for row, p in zip(red, piv):
        x[p] = row[n]
    return GVector(x)


def _quotient_coords(v: GVector, sub: Subspace, comp: Subspace) -> GVector:
    r = sub.reduce(v)
    if not comp.contains(r):
        raise NotInvariantError("vector does not lie in the quotient's superspace")
    return GVector(r[p] for p in comp.pivot_columns)


def induced_map(m: GMatrix, src_sup: Subspace, src_sub: Subspace,
                dst_sup: Subspace, dst_sub: Subspace) -> GMatrix:
    """Matrix of the map src_sup/src_sub -> dst_sup/dst_sub induced by ``m``,
    in the canonical complement bases of both quotients."""
    if not _maps_into(m, src_sup, dst_sup):
        raise NotInvariantError("matrix does not map the source superspace into the target")
    if not _maps_into(m, src_sub, dst_sub):
        raise NotInvariantError("matrix does not map the source subspace into the target subspace")
    src_comp = src_sub.complement_in(src_sup)
    dst_comp = dst_sub.complement_in(dst_sup)
    cols = [_quotient_coords(m @ c, dst_sub, dst_comp) for c in src_comp.basis]
    if not cols:
        return GMatrix.zeros(dst_comp.dim, 0)
    return GMatrix.from_columns(cols)


def induced_map_on_quotient(m: GMatrix, sub: Subspace, quot_of: Subspace) -> GMatrix:
    """Endomorphism of quot_of/sub induced by ``m``."""
    return induced_map(m, quot_of, sub, quot_of, sub)


def _maps_into(m: GMatrix, a: Subspace, b: Subspace) -> bool:
    return all(b.contains(m @ v) for v in a.basis)


class Filtration:
    """An increasing or decreasing chain of subspaces indexed by integers.

    Only a finite window of levels is stored.  Outside it the chain is
    constant: an increasing filtration is zero below its first stored level
    and equal to its last stored level above; a decreasing one is zero above
    its last stored level and equal to its first stored level below.
    """

    __slots__ = ("direction", "levels", "ambient_dim")

    def __init__(self, direction: str, levels: Mapping[int, Subspace], ambient_dim: int):
        if direction not in ("increasing", "decreasing"):
            raise ValueError("direction must be 'increasing' or 'decreasing'")
        if not levels:
            raise ValueError("a filtration needs at least one stored level")
        lv = {int(k): levels[k] for k in sorted(levels)}
        for s in lv.values():
            if s.ambient_dim != ambient_dim:
                raise DimensionError("filtration level in the wrong ambient dimension")
        keys = list(lv)
        for a, b in zip(keys, keys[1:]):
            small, big = (lv[a], lv[b]) if direction == "increasing" else (lv[b], lv[a])
            if not big.contains_subspace(small):
                raise ValueError(f"filtration is not nested between levels {a} and {b}")
        object.__setattr__(self, "direction", direction)
        object.__setattr__(self, "levels", lv)
        object.__setattr__(self, "ambient_dim", ambient_dim)

    def __setattr__(self, name, value):
        raise AttributeError("Filtration is immutable")

    @property
    def lo(self) -> int:
        return next(iter(self.levels))

    @property
    def hi(self) -> int:
        return next(reversed(self.levels))

    def __getitem__(self, k: int) -> Subspace:
        if k in self.levels:
            return self.levels[k]
        if self.direction == "increasing":
            if k < self.lo:
                return Subspace.zero(self.ambient_dim)
            if k > self.hi:
                return self.levels[self.hi]
        else:
            if k > self.hi:
                return Subspace.zero(self.ambient_dim)
            if k < self.lo:
                return self.levels[self.lo]
        # interior gap: constant from the nearest stored level on the "small" side
        keys = [j for j in self.levels if (j < k if self.direction == "increasing" else j > k)]
        ref = max(keys) if self.direction == "increasing" else min(keys)
        return self.levels[ref]

    def graded_dim(self, k: int) -> int:
        if self.direction == "increasing":
            return self[k].dim - self[k - 1].dim
        return self[k].dim - self[k + 1].dim

    def __eq__(self, other):
        if not isinstance(other, Filtration):
            return NotImplemented
        if self.direction != other.direction or self.ambient_dim != other.ambient_dim:
            return False
        lo = min(self.lo, other.lo) - 1
        hi = max(self.hi, other.hi) + 1
        return all(self[k] == other[k] for k in range(lo, hi + 1))

    def __hash__(self):
        return hash((self.direction, self.ambient_dim, tuple(self.levels.items())))

    def map(self, m: GMatrix) -> "Filtration":
        return Filtration(self.direction, {k: image(m, s) for k, s in self.levels.items()}, m.nrows)

    def __repr__(self):
        body = ", ".join(f"{k}: dim {s.dim}" for k, s in self.levels.items())
        return f"Filtration({self.direction}, {{{body}}} in dim {self.ambient_dim})"
