"""Monodromy weight filtration of a nilpotent endomorphism."""

from __future__ import annotations

from dataclasses import dataclass

from ..exact import Filtration, GMatrix, Subspace, image, induced_map, kernel
from .orbit import nilpotency_index

__all__ = ["WeightFiltration", "NotNilpotentError", "monodromy_weight_filtration", "weight_conditions"]


class NotNilpotentError(ValueError):
    pass


@dataclass(frozen=True)
class WeightFiltration:
    center: int
    levels: Filtration
    depth: int

    def __getitem__(self, k: int) -> Subspace:
        return self.levels[k]

    def graded_dim(self, k: int) -> int:
        return self.levels.graded_dim(k)

    @property
    def indices(self) -> range:
        """All k with Gr_k possibly nonzero."""
        return range(self.center - self.depth, self.center + self.depth + 1)


def monodromy_weight_filtration(N: GMatrix, w: int) -> WeightFiltration:
    """W_{w+k} = sum over j >= max(0, k) of Ker N^(j+1) ∩ Im N^(j-k)."""
    e = nilpotency_index(N)
    if e is None:
        raise NotNilpotentError("N is not nilpotent")
    n = N.nrows
    m = max(e - 1, 0)
    powers = [GMatrix.identity(n)]
    for _ in range(2 * m + 2):
        powers.append(powers[-1] @ N)
    kers = [kernel(p) for p in powers]
    ims = [image(p) for p in powers]

    def ker(a: int) -> Subspace:
        return kers[a] if a < len(kers) else Subspace.full(n)

    def im(b: int) -> Subspace:
        return ims[b] if b < len(ims) else Subspace.zero(n)

    levels = {}
    for k in range(-m - 1, m + 1):
        acc = Subspace.zero(n)
        for j in range(max(0, k), m + max(k, 0) + 1):
            if j - k > m:
                continue
            acc = acc + (ker(j + 1) & im(j - k))
        levels[w + k] = acc
    return WeightFiltration(w, Filtration("increasing", levels, n), m)


def weight_conditions(N: GMatrix, W: Filtration, w: int) -> tuple[bool, bool]:
    """Check N W_j in W_{j-2} for all j, and that N^i induces an isomorphism
    Gr_{w+i} -> Gr_{w-i} for all i > 0.  Returns the two verdicts."""
    n = N.nrows
    lo, hi = W.lo - 1, W.hi + 1
    shift_ok = all(W[j - 2].contains_subspace(image(N, W[j])) for j in range(lo, hi + 3))
    if not shift_ok:
        return False, False
    iso_ok = True
    span_i = max(hi - w, w - lo) + 1
    p = GMatrix.identity(n)
    for i in range(1, span_i + 1):
        p = p @ N
        src_sup, src_sub = W[w + i], W[w + i - 1]
        dst_sup, dst_sub = W[w - i], W[w - i - 1]
        if src_sup.dim - src_sub.dim != dst_sup.dim - dst_sub.dim:
            iso_ok = False
            break
        if src_sup.dim == src_sub.dim:
            continue
        mat = induced_map(p, src_sup, src_sub, dst_sup, dst_sub)
        if kernel(mat).dim != 0:
            iso_ok = False
            break
    return shift_ok, iso_ok
