"""Dense vectors and matrices over the Gaussian rationals."""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from .scalar import GScalar, ONE, ZERO, as_gscalar

__all__ = ["GVector", "GMatrix", "DimensionError"]


class DimensionError(ValueError):
    """Operands live in incompatible ambient dimensions."""


class GVector(tuple):
    """An immutable coordinate vector of :class:`GScalar` entries."""

    def __new__(cls, entries: Iterable = ()):
        return super().__new__(cls, (as_gscalar(e) for e in entries))

    @classmethod
    def zero(cls, dim: int) -> "GVector":
        return cls([ZERO] * dim)

    @classmethod
    def unit(cls, dim: int, index: int) -> "GVector":
        v = [ZERO] * dim
        v[index] = ONE
        return cls(v)

    @property
    def dim(self) -> int:
        return len(self)

    def __add__(self, other):
        _same_dim(self, other)
        return GVector(a + b for a, b in zip(self, other))

    def __sub__(self, other):
        _same_dim(self, other)
        return GVector(a - b for a, b in zip(self, other))

    def __neg__(self):
        return GVector(-a for a in self)

    def scale(self, c) -> "GVector":
        c = as_gscalar(c)
        return GVector(c * a for a in self)

    def __mul__(self, c):
        if isinstance(c, (GScalar, int, Fraction)):
            return self.scale(c)
        return NotImplemented

    __rmul__ = __mul__

    def conjugate(self) -> "GVector":
        return GVector(a.conjugate() for a in self)

    def is_zero(self) -> bool:
        return not any(self)

    def dot(self, other) -> GScalar:
        """Bilinear (not Hermitian) pairing."""
        _same_dim(self, other)
        s = ZERO
        for a, b in zip(self, other):
            if a and b:
                s = s + a * b
        return s

    def to_numpy(self) -> np.ndarray:
        return np.array([complex(a) for a in self], dtype=complex)

    def __repr__(self):
        return "GVector([" + ", ".join(str(a) for a in self) + "])"


def _same_dim(a: Sequence, b: Sequence) -> None:
    if len(a) != len(b):
        raise DimensionError(f"dimension mismatch: {len(a)} vs {len(b)}")


class GMatrix:
    """Immutable dense matrix; ``rows`` is a tuple of :class:`GVector`."""

    __slots__ = ("rows", "nrows", "ncols")

    def __init__(self, rows: Iterable[Iterable], ncols: int | None = None):
        rs = tuple(GVector(r) for r in rows)
        if rs:
            width = len(rs[0])
            if any(len(r) != width for r in rs):
                raise DimensionError("ragged matrix rows")
        else:
            width = 0 if ncols is None else ncols
        object.__setattr__(self, "rows", rs)
        object.__setattr__(self, "nrows", len(rs))
        object.__setattr__(self, "ncols", width)

    def __setattr__(self, name, value):
        raise AttributeError("GMatrix is immutable")

    # constructors
    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> "GMatrix":
        return cls([[ZERO] * ncols for _ in range(nrows)], ncols=ncols)

    @classmethod
    def identity(cls, n: int) -> "GMatrix":
        return cls([[ONE if i == j else ZERO for j in range(n)] for i in range(n)], ncols=n)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence], nrows: int | None = None) -> "GMatrix":
        cols = [GVector(c) for c in columns]
        if not cols:
            return cls.zeros(nrows or 0, 0)
        n = len(cols[0])
        return cls([[c[i] for c in cols] for i in range(n)], ncols=len(cols))

    @classmethod
    def block_diag(cls, blocks: Sequence["GMatrix"]) -> "GMatrix":
        nr = sum(b.nrows for b in blocks)
        nc = sum(b.ncols for b in blocks)
        rows = []
        c0 = 0
        for b in blocks:
            for r in b.rows:
                rows.append([ZERO] * c0 + list(r) + [ZERO] * (nc - c0 - b.ncols))
            c0 += b.ncols
        return cls(rows, ncols=nc) if nr else cls.zeros(0, nc)

    # shape helpers
    @property
    def shape(self) -> tuple[int, int]:
        return (self.nrows, self.ncols)

    def column(self, j: int) -> GVector:
        return GVector(r[j] for r in self.rows)

    def columns(self) -> list[GVector]:
        return [self.column(j) for j in range(self.ncols)]

    def __getitem__(self, idx):
        i, j = idx
        return self.rows[i][j]

    def transpose(self) -> "GMatrix":
        return GMatrix(self.columns(), ncols=self.nrows)

    def conjugate(self) -> "GMatrix":
        return GMatrix((r.conjugate() for r in self.rows), ncols=self.ncols)

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "GMatrix":
        return GMatrix(([self.rows[i][j] for j in cols] for i in rows), ncols=len(cols))

    # arithmetic
    def __add__(self, other: "GMatrix") -> "GMatrix":
        self._same_shape(other)
        return GMatrix((a + b for a, b in zip(self.rows, other.rows)), ncols=self.ncols)

    def __sub__(self, other: "GMatrix") -> "GMatrix":
        self._same_shape(other)
        return GMatrix((a - b for a, b in zip(self.rows, other.rows)), ncols=self.ncols)

    def __neg__(self):
        return GMatrix((-r for r in self.rows), ncols=self.ncols)

    def scale(self, c) -> "GMatrix":
        c = as_gscalar(c)
        return GMatrix((r.scale(c) for r in self.rows), ncols=self.ncols)

    def __matmul__(self, other):
        if isinstance(other, GMatrix):
            if self.ncols != other.nrows:
                raise DimensionError(f"cannot multiply {self.shape} by {other.shape}")
            cols = other.columns()
            return GMatrix(([r.dot(c) for c in cols] for r in self.rows), ncols=other.ncols)
        v = GVector(other)
        if self.ncols != len(v):
            raise DimensionError(f"cannot apply {self.shape} matrix to vector of dim {len(v)}")
        return GVector(r.dot(v) for r in self.rows)

    def apply(self, v) -> GVector:
        return self @ GVector(v)

    def __pow__(self, k: int) -> "GMatrix":
        if self.nrows != self.ncols:
            raise DimensionError("power of a non-square matrix")
        result = GMatrix.identity(self.nrows)
        base = self
        while k:
            if k & 1:
                result = result @ base
            base = base @ base
            k >>= 1
        return result

    def inverse(self) -> "GMatrix":
        from .subspace import rref

        n = self.nrows
        if n != self.ncols:
            raise DimensionError("inverse of a non-square matrix")
        aug = [list(r) + [ONE if i == j else ZERO for j in range(n)] for i, r in enumerate(self.rows)]
        red, piv = rref(aug, ncols=2 * n)
        if piv[:n] != list(range(n)):
            raise ZeroDivisionError("matrix is singular")
        return GMatrix(([r[n + j] for j in range(n)] for r in red[:n]), ncols=n)

    def is_zero(self) -> bool:
        return all(r.is_zero() for r in self.rows)

    def is_integral(self) -> bool:
        return all(a.is_gaussian_integer() and not a.im for r in self.rows for a in r)

    def is_real(self) -> bool:
        return all(a.is_real() for r in self.rows for a in r)

    def denominator(self) -> int:
        d = 1
        for r in self.rows:
            for a in r:
                q = a.denominator()
                if q != 1:
                    d = d * q // _gcd(d, q)
        return d

    def __eq__(self, other):
        if not isinstance(other, GMatrix):
            return NotImplemented
        return self.shape == other.shape and self.rows == other.rows

    def __hash__(self):
        return hash((self.shape, self.rows))

    def to_numpy(self) -> np.ndarray:
        out = np.zeros(self.shape, dtype=complex)
        for i, r in enumerate(self.rows):
            for j, a in enumerate(r):
                if a:
                    out[i, j] = complex(a)
        return out

    def to_int_lists(self) -> list[list[int]]:
        if not self.is_integral():
            raise ValueError("matrix is not integral")
        return [[int(a.re) for a in r] for r in self.rows]

    def __repr__(self):
        body = "; ".join(" ".join(str(a) for a in r) for r in self.rows)
        return f"GMatrix[{self.nrows}x{self.ncols}]({body})"

    def _same_shape(self, other: "GMatrix") -> None:
        if self.shape != other.shape:
            raise DimensionError(f"shape mismatch: {self.shape} vs {other.shape}")


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a
