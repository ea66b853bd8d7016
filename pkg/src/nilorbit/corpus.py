"""Built-in orbits: the two worked examples and synthetic families."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Callable, Sequence

from .exact import Filtration, GMatrix, GVector, I, Subspace, as_gscalar
from .hodge import (
    NilpotentOrbit,
    PurityError,
    build_limit_mhs,
    exp_nilpotent,
    is_r_split,
    validate_orbit,
)

__all__ = [
    "OrbitRecipe",
    "IllegalShapeError",
    "example_1_10_i",
    "example_1_10_2",
    "jordan_orbit",
    "direct_sum",
    "random_split_orbit",
    "random_unimodular",
    "twisted_rank3",
    "RECIPES",
    "get_example",
    "example_names",
    "check_manifest",
]


class IllegalShapeError(ValueError):
    pass


def _jordan_N(size: int) -> list[list[int]]:
    """N e_k = (k+1) e_{k+1}; then exp(N) is the Pascal matrix, hence integral."""
    rows = [[0] * size for _ in range(size)]
    for k in range(size - 1):
        rows[k + 1][k] = k + 1
    return rows


def example_1_10_i() -> NilpotentOrbit:
    """Rank 2, N e0 = e1, F^0 spanned by e0, weight -1."""
    return NilpotentOrbit.from_data([[0, 0], [1, 0]], -1, {0: [[1, 0]]}, label="1.10-i")


def example_1_10_2() -> NilpotentOrbit:
    """Rank 4 on (e0, e1, f0, f1), N e0 = e1, N f0 = f1, F^0 spanned by e_k - i f_k."""
    N = [[0, 0, 0, 0],
         [1, 0, 0, 0],
         [0, 0, 0, 0],
         [0, 0, 1, 0]]
    F0 = [[1, 0, -I, 0], [0, 1, 0, -I]]
    return NilpotentOrbit.from_data(N, -1, {0: F0}, label="1.10-2")


def _split_filtration(rank: int, typed: list[tuple[GVector, int]]) -> dict:
    """Spanning vectors per level from vectors tagged with their Hodge index p."""
    out: dict[int, list] = {}
    for v, p in typed:
        out.setdefault(p, []).append(list(v))
    return out


def jordan_orbit(size: int, w: int, hodge_shift: int = 0, twist=0, label: str = "") -> NilpotentOrbit:
    """Orbit with one-dimensional or two-dimensional primitive part.

    With top weight K = w + size - 1 even and no shift, a single real Jordan
    block whose top vector has type (K/2, K/2).  Otherwise two blocks e, f
    whose tops e0 +- i f0 carry the conjugate types (p, K-p), (K-p, p) with
    p = floor(K/2) + 1 + hodge_shift.  The limit filtration is then moved by
    exp(twist N).
    """
    if size < 1:
        raise IllegalShapeError("block size must be at least 1")
    K = w + size - 1
    real = K % 2 == 0 and hodge_shift == 0
    if real:
        N = GMatrix(_jordan_N(size))
        p0 = K // 2
        typed = []
        for k in range(size):
            typed.append((GVector.unit(size, k), p0 - k))
        rank = size
    else:
        p0 = K // 2 + 1 + hodge_shift
        if 2 * p0 == K:
            raise IllegalShapeError("conjugate pair needs distinct Hodge types")
        rank = 2 * size
        blk = _jordan_N(size)
        N = GMatrix.block_diag([GMatrix(blk), GMatrix(blk)])
        typed = []
        for k in range(size):
            e = GVector.unit(rank, k)
            f = GVector.unit(rank, size + k)
            typed.append((e + f.scale(I), p0 - k))
            typed.append((e - f.scale(I), K - p0 - k))
    spans = _split_filtration(rank, typed)
    orbit = NilpotentOrbit.from_data(N.rows, w, spans,
                                     label=label or f"jordan-{size}-w{w}-h{hodge_shift}")
    twist = as_gscalar(twist)
    if twist:
        g = exp_nilpotent(orbit.N, twist)
        orbit = NilpotentOrbit(orbit.rank, orbit.weight, orbit.N, orbit.F.map(g), orbit.label)
    return orbit


def direct_sum(orbits: Sequence[NilpotentOrbit], label: str = "") -> NilpotentOrbit:
    if not orbits:
        raise ValueError("empty direct sum")
    w = orbits[0].weight
    if any(o.weight != w for o in orbits):
        raise IllegalShapeError("direct sum needs a common weight")
    N = GMatrix.block_diag([o.N for o in orbits])
    lo = min(o.F.lo for o in orbits)
    hi = max(o.F.hi for o in orbits)
    levels = {p: Subspace.direct_sum([o.F[p] for o in orbits]) for p in range(lo, hi + 1)}
    F = Filtration("decreasing", levels, N.nrows)
    return NilpotentOrbit(N.nrows, w, N, F, label or "+".join(o.label for o in orbits))


def random_unimodular(n: int, rng: random.Random, spread: int = 2, permute: bool = True) -> GMatrix:
    """L U (times a permutation) with unit triangular integer factors."""
    L = [[1 if i == j else (rng.randint(-spread, spread) if i > j else 0) for j in range(n)] for i in range(n)]
    U = [[1 if i == j else (rng.randint(-spread, spread) if i < j else 0) for j in range(n)] for i in range(n)]
    m = GMatrix(L) @ GMatrix(U)
    if permute:
        perm = list(range(n))
        rng.shuffle(perm)
        P = GMatrix([[1 if perm[i] == j else 0 for j in range(n)] for i in range(n)])
        m = P @ m
    return m


def random_split_orbit(seed: int, shape: Sequence[tuple[int, int]] | None = None,
                       w: int | None = None, max_rank: int = 6) -> NilpotentOrbit:
    """R-split orbit built from Jordan blocks, moved by a random unimodular basis change.

    ``shape`` lists (block size, hodge shift); when omitted it is drawn from
    the seed with total rank at most ``max_rank``.
    """
    rng = random.Random(seed)
    if w is None:
        w = rng.choice([-1, -2, -3])
    if shape is None:
        shape = []
        rank = 0
        while True:
            size = rng.randint(1, 3)
            shift = rng.choice([0, 0, 1])
            r = size if ((w + size - 1) % 2 == 0 and shift == 0) else 2 * size
            if rank + r > max_rank:
                break
            shape.append((size, shift))
            rank += r
            if rng.random() < 0.4:
                break
        if not shape:
            shape = [(1, 0)]
    blocks = [jordan_orbit(size, w, shift) for size, shift in shape]
    base = direct_sum(blocks)
    u = random_unimodular(base.rank, rng)
    return base.conjugated(u, label=f"random-split-{seed}")


def twisted_rank3() -> NilpotentOrbit:
    """Single real block of size 3 at weight -2 moved by exp(i N): mixed levels, iota != identity."""
    return jordan_orbit(3, -2, 0, twist=I, label="jordan-3-twisted")


@dataclass(frozen=True)
class OrbitRecipe:
    name: str
    build: Callable[[], NilpotentOrbit]
    parameters: dict = field(default_factory=dict)
    # expected properties: validates, pure_graded, r_split
    manifest: dict = field(default_factory=dict)


RECIPES: dict[str, OrbitRecipe] = {
    r.name: r
    for r in [
        OrbitRecipe("1.10-i", example_1_10_i, {},
                    {"validates": True, "pure_graded": True, "r_split": True}),
        OrbitRecipe("1.10-2", example_1_10_2, {"weight": -1},
                    {"validates": True, "pure_graded": False, "r_split": False}),
        OrbitRecipe("1.10-i-x2", lambda: direct_sum([example_1_10_i(), example_1_10_i()], "1.10-i-x2"), {},
                    {"validates": True, "pure_graded": True, "r_split": True}),
        OrbitRecipe("jordan-3-twisted", twisted_rank3, {"size": 3, "weight": -2, "twist": "i"},
                    {"validates": True, "pure_graded": True, "r_split": False}),
        OrbitRecipe("pair-1", lambda: jordan_orbit(1, -1, 0, label="pair-1"), {"size": 1, "weight": -1},
                    {"validates": True, "pure_graded": True, "r_split": True}),
        OrbitRecipe("pair-2", lambda: jordan_orbit(2, -1, 0, label="pair-2"), {"size": 2, "weight": -1},
                    {"validates": True, "pure_graded": True, "r_split": True}),
        OrbitRecipe("random-7", lambda: random_split_orbit(7), {"seed": 7},
                    {"validates": True, "pure_graded": True, "r_split": True}),
    ]
}


def example_names() -> list[str]:
    return sorted(RECIPES)


def get_example(name: str) -> NilpotentOrbit:
    try:
        return RECIPES[name].build()
    except KeyError:
        raise KeyError(f"unknown example {name!r}; known: {', '.join(example_names())}") from None


def check_manifest(recipe: OrbitRecipe) -> dict[str, tuple[bool, bool]]:
    """property -> (expected, observed)."""
    orbit = recipe.build()
    observed = {"validates": validate_orbit(orbit).ok}
    try:
        build_limit_mhs(orbit)
        pure = True
    except PurityError:
        pure = False
    observed["pure_graded"] = pure
    observed["r_split"] = pure and is_r_split(orbit)
    return {k: (v, observed[k]) for k, v in recipe.manifest.items()}
