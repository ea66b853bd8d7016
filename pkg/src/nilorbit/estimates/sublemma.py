"""Checker for the triangular smallness inequalities.

Given positive C'_{i,j} (0 <= j < i <= m) and eps'', the system

    a_i <= eps'' sum_j a_j + sum_{j<i} C'_{i,j} a_j,   a >= 0,

reads a <= M a with M = eps'' J + C' (J all ones).  M is positive, so a
nonzero solution exists iff its Perron eigenvalue is >= 1.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from itertools import combinations

import numpy as np
from scipy.optimize import linprog

__all__ = [
    "parse_cmat",
    "system_matrix",
    "spectral_radius",
    "sublemma_check",
    "feasibility_search",
    "find_eps2",
    "SublemmaReport",
    "sublemma_report",
]


def parse_cmat(cmat) -> list[list[float]]:
    """Rows 0..m of C'; row i holds C'_{i,0..i-1}.  Accepts JSON text."""
    if isinstance(cmat, str):
        try:
            cmat = json.loads(cmat)
        except json.JSONDecodeError as exc:
            raise ValueError(f"Cmat is not valid JSON: {exc}") from None
    if not isinstance(cmat, list) or not cmat:
        raise ValueError("Cmat must be a nonempty list of rows")
    rows = []
    for i, row in enumerate(cmat):
        if not isinstance(row, list) or len(row) != i:
            raise ValueError(f"row {i} of Cmat must have exactly {i} entries")
        vals = []
        for x in row:
            if isinstance(x, bool) or not isinstance(x, (int, float)):
                raise ValueError(f"row {i} of Cmat has a non-numeric entry {x!r}")
            if not (np.isfinite(x) and x > 0):
                raise ValueError(f"Cmat entries must be positive and finite, got {x!r}")
            vals.append(float(x))
        rows.append(vals)
    return rows


def system_matrix(cmat, eps2: float) -> np.ndarray:
    rows = parse_cmat(cmat)
    m1 = len(rows)
    M = np.full((m1, m1), float(eps2))
    for i, row in enumerate(rows):
        M[i, :i] += row
    return M


def spectral_radius(M: np.ndarray) -> float:
    return float(np.max(np.abs(np.linalg.eigvals(M))))


def sublemma_check(cmat, eps2: float) -> bool:
    """True iff only a = 0 satisfies the inequalities."""
    if not 0 < eps2 < 1:
        raise ValueError("eps2 must lie in (0, 1)")
    return spectral_radius(system_matrix(cmat, eps2)) < 1


def _simplex_grid(dim: int, res: int):
    # stars and bars: compositions of res into dim parts
    for bars in combinations(range(res + dim - 1), dim - 1):
        prev = -1
        parts = []
        for b in bars:
            parts.append(b - prev - 1)
            prev = b
        parts.append(res + dim - 2 - prev)
        yield np.array(parts, dtype=float) / res


def feasibility_search(cmat, eps2: float, res: int | None = None) -> tuple[bool, np.ndarray, float]:
    """Direct search for a nonzero a >= 0 with a <= M a.

    Maximizes g(a) = min_i ((M a)_i - a_i) over the simplex: first on a grid,
    then exactly as a linear program.  Feasible iff the maximum is >= -1e-12.
    Returns (feasible, best a, max g).
    """
    M = system_matrix(cmat, eps2)
    dim = M.shape[0]
    if res is None:
        res = {1: 1, 2: 64, 3: 32, 4: 16, 5: 12}.get(dim, 8)
    K = M - np.eye(dim)
    best_g, best_a = -np.inf, None
    for a in _simplex_grid(dim, res):
        g = float(np.min(K @ a))
        if g > best_g:
            best_g, best_a = g, a
    # variables (a, s): maximize s with K a >= s, sum a = 1, a >= 0
    c = np.zeros(dim + 1)
    c[-1] = -1.0
    A_ub = np.hstack([-K, np.ones((dim, 1))])
    A_eq = np.hstack([np.ones((1, dim)), np.zeros((1, 1))])
    res_lp = linprog(c, A_ub=A_ub, b_ub=np.zeros(dim), A_eq=A_eq, b_eq=[1.0],
                     bounds=[(0, None)] * dim + [(None, None)], method="highs")
    if res_lp.status == 0 and -res_lp.fun > best_g:
        best_a = res_lp.x[:dim]
        best_g = float(np.min(K @ best_a))
    return bool(best_g >= -1e-12), best_a, best_g


def find_eps2(cmat, bits: int = 20) -> float | None:
    """Largest k / 2^bits < 1/2 for which the check passes, or None."""
    parse_cmat(cmat)
    lo, hi = 0, 2 ** (bits - 1)       # passes at lo (vacuously), candidates < hi
    if not sublemma_check(cmat, 1 / 2 ** bits):
        return None
    lo = 1
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if sublemma_check(cmat, mid / 2 ** bits):
            lo = mid
        else:
            hi = mid
    return lo / 2 ** bits


@dataclass(frozen=True)
class SublemmaReport:
    cmat: list
    eps2: float
    spectral_radius: float
    only_zero: bool
    search_feasible: bool
    search_max: float
    witness: list
    agree: bool
    eps2_max: float | None

    def as_dict(self) -> dict:
        return {
            "cmat": self.cmat,
            "eps2": self.eps2,
            "spectral_radius": self.spectral_radius,
            "only_zero_solution": self.only_zero,
            "search_feasible": self.search_feasible,
            "search_max_g": self.search_max,
            "search_witness": self.witness,
            "criteria_agree": self.agree,
            "largest_dyadic_eps2": self.eps2_max,
        }


def sublemma_report(cmat, eps2: float) -> SublemmaReport:
    rows = parse_cmat(cmat)
    rho = spectral_radius(system_matrix(rows, eps2))
    only_zero = sublemma_check(rows, eps2)
    feas, a, g = feasibility_search(rows, eps2)
    return SublemmaReport(rows, float(eps2), rho, only_zero, feas, g, [float(x) for x in a],
                          only_zero != feas, find_eps2(rows))
