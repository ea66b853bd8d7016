"""The degeneration datum: lattice Z^n, nilpotent log-monodromy N, limit Hodge
filtration F and weight w."""

from __future__ import annotations

from dataclasses import dataclass, field
from math import factorial
from typing import Mapping, Sequence

from ..exact import Filtration, GMatrix, GVector, Subspace, as_gscalar, image, span

__all__ = [
    "NilpotentOrbit",
    "ValidationReport",
    "CheckResult",
    "validate_orbit",
    "hodge_filtration",
    "nilpotency_index",
    "exp_nilpotent",
]


def hodge_filtration(rank: int, spans: Mapping[int, Sequence[Sequence]]) -> Filtration:
    """Decreasing filtration from spanning vectors listed per level.

    F^p is the span of every vector listed at a level >= p; one level below
    the lowest listed one the filtration is the whole space, and above the
    highest listed level it is zero.
    """
    if not spans:
        return Filtration("decreasing", {0: Subspace.full(rank), 1: Subspace.zero(rank)}, rank)
    keys = sorted(int(p) for p in spans)
    levels: dict[int, Subspace] = {}
    acc: list = []
    for p in reversed(keys):
        acc = acc + [GVector(v) for v in spans[p]]
        levels[p] = span(acc, rank) if acc else Subspace.zero(rank)
    lo = keys[0]
    if not levels[lo].is_full():
        levels[lo - 1] = Subspace.full(rank)
    hi = keys[-1]
    if not levels[hi].is_zero():
        levels[hi + 1] = Subspace.zero(rank)
    return Filtration("decreasing", levels, rank)


def nilpotency_index(n: GMatrix) -> int | None:
    """Smallest e with N^e = 0, or None if N is not nilpotent."""
    size = n.nrows
    p = GMatrix.identity(size)
    for e in range(0, size + 1):
        if p.is_zero():
            return e
        p = p @ n
    return None


def exp_nilpotent(n: GMatrix, scale=1) -> GMatrix:
    """exp(scale * N) as the finite sum over powers of N."""
    size = n.nrows
    out = GMatrix.identity(size)
    term = GMatrix.identity(size)
    for k in range(1, size + 1):
        term = term @ n
        if term.is_zero():
            break
        out = out + term.scale(as_gscalar(scale) ** k / factorial(k))
    return out


@dataclass(frozen=True)
class NilpotentOrbit:
    """Lattice Z^rank with log-monodromy ``N`` (integer, acting on column
    vectors) and limit Hodge filtration ``F`` over Q(i)."""

    rank: int
    weight: int
    N: GMatrix
    F: Filtration
    label: str = ""

    def __post_init__(self):
        if self.N.shape != (self.rank, self.rank):
            raise ValueError(f"N must be {self.rank}x{self.rank}, got {self.N.shape}")
        if self.F.ambient_dim != self.rank or self.F.direction != "decreasing":
            raise ValueError("F must be a decreasing filtration on the orbit's ambient space")

    @classmethod
    def from_data(cls, N: Sequence[Sequence[int]], weight: int,
                  F: Mapping[int, Sequence[Sequence]], label: str = "") -> "NilpotentOrbit":
        n = GMatrix(N)
        return cls(n.nrows, int(weight), n, hodge_filtration(n.nrows, F), label)

    @property
    def depth(self) -> int:
        """m with N^(m+1) = 0 and N^m != 0 (0 for N = 0)."""
        e = nilpotency_index(self.N)
        if e is None:
            raise ValueError("N is not nilpotent")
        return max(e - 1, 0)

    def F_levels(self) -> range:
        return range(self.F.lo, self.F.hi + 1)

    def conjugated(self, u: GMatrix, label: str | None = None) -> "NilpotentOrbit":
        """Transport by a lattice automorphism: N -> U N U^-1, F -> U F."""
        uinv = u.inverse()
        return NilpotentOrbit(self.rank, self.weight, u @ self.N @ uinv, self.F.map(u),
                              self.label if label is None else label)


@dataclass(frozen=True)
class CheckResult:
    passed: bool
    detail: str = ""


@dataclass
class ValidationReport:
    checks: dict[str, CheckResult] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks.values())

    def __getitem__(self, name: str) -> CheckResult:
        return self.checks[name]

    def as_dict(self) -> dict:
        return {k: {"passed": c.passed, "detail": c.detail} for k, c in self.checks.items()}


def validate_orbit(orbit: NilpotentOrbit) -> ValidationReport:
    """Structural checks on the datum.  Failures are reported, never raised."""
    rep = ValidationReport()
    e = nilpotency_index(orbit.N)
    rep.checks["nilpotency"] = CheckResult(
        e is not None,
        f"N^{e} = 0" if e is not None else f"N^{orbit.rank} != 0",
    )
    rep.checks["integral_N"] = CheckResult(orbit.N.is_integral(), "N has integer entries"
                                           if orbit.N.is_integral() else "N has non-integer entries")
    bad = []
    for p in range(orbit.F.lo, orbit.F.hi + 2):
        if not orbit.F[p - 1].contains_subspace(image(orbit.N, orbit.F[p])):
            bad.append(p)
    rep.checks["transversality"] = CheckResult(
        not bad, "N F^p in F^(p-1) for all p" if not bad else f"fails at p in {bad}")
    rep.checks["weight_negative"] = CheckResult(orbit.weight < 0, f"w = {orbit.weight}")
    exhaustive = orbit.F[orbit.F.lo].is_full() and orbit.F[orbit.F.hi].is_zero()
    rep.checks["filtration_exhaustive"] = CheckResult(
        exhaustive, f"F^{orbit.F.lo} full, F^{orbit.F.hi} zero" if exhaustive else "F is not exhaustive")
    if e is None:
        rep.checks["integral_exp_N"] = CheckResult(False, "exp(N) undefined for non-nilpotent N")
    else:
        ex = exp_nilpotent(orbit.N)
        rep.checks["integral_exp_N"] = CheckResult(ex.is_integral(), "exp(N) integral"
                                                   if ex.is_integral() else "exp(N) has denominators")
    return rep
