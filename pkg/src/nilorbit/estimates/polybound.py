"""Randomized harness for the polynomial boundedness lemma.

For f in C[z] of degree <= n and z0 with y0 = Im z0 > r,

    A(f, z0) = sum_k |f^(k)(0)| y0^k.

The lemma bounds A(f, z0) by a constant whenever the first n1 derivatives
of f - a and the first n2 derivatives of fbar - a' at z0 are small relative
to A(f, z0) / y0^k, provided n1 + n2 > n.  Here fbar(z) = conj(f(conj z)).

All computations use the scaled unknowns w_k = f^(k)(0) y0^k, so A is the
l1 norm of w and the conditions become

    |sum_j w_{k+j} zeta^j / j! - a [k = 0]| <= eps |w|_1,   zeta = z0 / y0,

and the same with conj(w) in place of w and a' in place of a.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import comb, factorial

import numpy as np
from scipy.optimize import minimize

__all__ = [
    "binomial_constant",
    "lemma_A",
    "conditions_hold",
    "homogeneous_threshold",
    "PolyBoundReport",
    "polybound_harness",
    "fit_constant",
]


def binomial_constant(k: int) -> int:
    """Exact C(k) with A((z - z0)^k, z0) <= C(k) y0^k whenever |z0| <= 2 y0.

    The j-th derivative of (z - z0)^k at 0 is k!/(k-j)! (-z0)^(k-j), so
    C(k) = sum_j j! binom(k, j) 2^(k-j).
    """
    if k < 0:
        raise ValueError("k must be nonnegative")
    return sum(factorial(j) * comb(k, j) * 2 ** (k - j) for j in range(k + 1))


def lemma_A(coeffs, z0: complex) -> float:
    """A(f, z0) for f = sum_k coeffs[k] z^k."""
    y0 = complex(z0).imag
    return float(sum(factorial(k) * abs(c) * y0 ** k for k, c in enumerate(coeffs)))


def _system(n: int, n1: int, n2: int, zeta: complex) -> tuple[np.ndarray, np.ndarray]:
    """Matrices L1 (n1 x n+1) and L2 (n2 x n+1) with (L1 w)_k = y0^k f^(k)(z0)
    and (L2 conj(w))_k = y0^k fbar^(k)(z0)."""
    def block(rows, zt):
        L = np.zeros((rows, n + 1), dtype=complex)
        for k in range(rows):
            for j in range(n + 1 - k):
                L[k, k + j] = zt ** j / factorial(j)
        return L

    # fbar^(k)(z0) = conj(f^(k)(conj z0)), so conj(w) meets the same zeta
    return block(n1, zeta), block(n2, zeta)


def _residuals(w: np.ndarray, L1, L2, a: complex, a2: complex) -> np.ndarray:
    r1 = L1 @ w
    r2 = L2 @ np.conj(w)
    if len(r1):
        r1[0] -= a
    if len(r2):
        r2[0] -= a2
    return np.abs(np.concatenate([r1, r2]))


def conditions_hold(coeffs, z0: complex, n1: int, n2: int, a: complex, a2: complex,
                    eps: float) -> bool:
    """Whether f satisfies both derivative smallness conditions at z0."""
    n = len(coeffs) - 1
    y0 = complex(z0).imag
    w = np.array([factorial(k) * c * y0 ** k for k, c in enumerate(coeffs)], dtype=complex)
    L1, L2 = _system(n, n1, n2, complex(z0) / y0)
    return bool(np.all(_residuals(w, L1, L2, a, a2) <= eps * np.abs(w).sum()))


def _pack(w: np.ndarray) -> np.ndarray:
    return np.concatenate([w.real, w.imag])


def _unpack(x: np.ndarray) -> np.ndarray:
    m = len(x) // 2
    return x[:m] + 1j * x[m:]


def homogeneous_threshold(n: int, n1: int, n2: int, zeta: complex, restarts: int = 20,
                          seed: int = 0) -> float:
    """Estimate of min over |w|_1 = 1 of the largest condition residual with a = a' = 0.

    For eps below this value only f = 0 satisfies the homogeneous conditions,
    which is what makes the lemma's constant finite.
    """
    L1, L2 = _system(n, n1, n2, zeta)
    rng = np.random.default_rng(seed)

    def obj(x):
        w = _unpack(x)
        s = np.abs(w).sum()
        if s == 0:
            return np.inf
        return float(_residuals(w / s, L1, L2, 0, 0).max())

    best = np.inf
    for _ in range(restarts):
        x0 = rng.normal(size=2 * (n + 1))
        res = minimize(obj, x0, method="Nelder-Mead", options={"xatol": 1e-10, "fatol": 1e-12,
                                                               "maxiter": 4000})
        best = min(best, float(res.fun))
    return best


def _optimize_max(n, n1, n2, zeta, a, a2, eps, starts) -> tuple[float, np.ndarray | None]:
    """Largest A among condition-satisfying w found by SLSQP from ``starts``."""
    L1, L2 = _system(n, n1, n2, zeta)

    def cons(x):
        w = _unpack(x)
        return eps * np.abs(w).sum() - _residuals(w, L1, L2, a, a2)

    best, arg = 0.0, None
    for x0 in starts:
        res = minimize(lambda x: -np.abs(_unpack(x)).sum(), x0, method="SLSQP",
                       constraints=[{"type": "ineq", "fun": cons}],
                       options={"maxiter": 300, "ftol": 1e-13})
        w = _unpack(res.x)
        if np.all(cons(res.x) >= -1e-12):
            val = float(np.abs(w).sum())
            if val > best:
                best, arg = val, w
    return best, arg


@dataclass(frozen=True)
class PolyBoundReport:
    n: int
    n1: int
    n2: int
    a: complex
    a2: complex
    eps: float
    r: float
    y_max: float
    trials: int
    seed: int
    satisfying: int
    max_A: float
    argmax: dict | None
    optimizer_max: float
    fitted_C: float
    C: float | None
    violations: int
    binomial_constants: tuple
    notes: tuple = field(default=())

    def as_dict(self) -> dict:
        return {
            "n": self.n, "n1": self.n1, "n2": self.n2,
            "a": [self.a.real, self.a.imag], "a_prime": [self.a2.real, self.a2.imag],
            "eps": self.eps, "r": self.r, "y_max": self.y_max,
            "trials": self.trials, "seed": self.seed,
            "satisfying_samples": self.satisfying,
            "max_A": self.max_A,
            "argmax": self.argmax,
            "optimizer_max_A": self.optimizer_max,
            "fitted_C": self.fitted_C,
            "C_tested": self.C,
            "violations": self.violations,
            "binomial_constants": list(self.binomial_constants),
            "notes": list(self.notes),
        }


def _sample_z0(rng, r: float, y_max: float) -> complex:
    x = rng.random()
    y = r * (y_max / r) ** rng.random()
    if y <= r:
        y = np.nextafter(r, np.inf)
    return complex(x, y)


def polybound_harness(n: int, n1: int, n2: int, a: complex = 1.0, a2: complex = 1.0,
                    eps: float = 0.02, r: float = 2.0, trials: int = 10_000, seed: int = 0,
                    C: float | None = None, y_max: float = 1e4, box: float = 2.0,
                    optimizer_starts: int = 4) -> PolyBoundReport:
    """Seeded random search for polynomials meeting the conditions with large A.

    Each trial draws z0 in the strip and a candidate w: half the trials take
    w uniformly from the coefficient box, the others perturb the least
    squares solution of the exact conditions by a random vector of l1 size
    up to 2 eps times its norm.  The maximum A over condition-satisfying
    samples, refined by SLSQP from the best samples, is the fitted constant.
    With ``C`` given, samples with A > C (relative 1e-9) are violations.
    """
    if n1 + n2 <= n:
        raise ValueError(f"need n1 + n2 > n, got n1={n1}, n2={n2}, n={n}")
    if not r > 1:
        raise ValueError("r must exceed 1")
    if trials < 1:
        raise ValueError("trials must be at least 1")
    if n < 0 or n1 < 0 or n2 < 0:
        raise ValueError("degrees must be nonnegative")
    a, a2 = complex(a), complex(a2)
    rng = np.random.default_rng(seed)
    satisfying = 0
    max_A, arg = 0.0, None
    top = []           # (A, z0, w) of the best samples, for refinement
    violations = 0
    for _ in range(trials):
        z0 = _sample_z0(rng, r, y_max)
        zeta = z0 / z0.imag
        L1, L2 = _system(n, n1, n2, zeta)
        if rng.random() < 0.5:
            w = (rng.uniform(-box, box, n + 1) + 1j * rng.uniform(-box, box, n + 1))
        else:
            # real least squares for L1 w = a e0, L2 conj(w) = a' e0
            R = np.vstack([np.hstack([L1.real, -L1.imag]), np.hstack([L1.imag, L1.real]),
                           np.hstack([L2.real, L2.imag]), np.hstack([L2.imag, -L2.real])])
            rhs = np.zeros(R.shape[0])
            if n1:
                rhs[0], rhs[n1] = a.real, a.imag
            if n2:
                rhs[2 * n1], rhs[2 * n1 + n2] = a2.real, a2.imag
            w0 = _unpack(np.linalg.lstsq(R, rhs, rcond=None)[0])
            d = rng.normal(size=n + 1) + 1j * rng.normal(size=n + 1)
            d *= 2 * eps * rng.random() * max(np.abs(w0).sum(), 1.0) / np.abs(d).sum()
            w = w0 + d
        A = float(np.abs(w).sum())
        if not np.all(_residuals(w, L1, L2, a, a2) <= eps * A):
            continue
        satisfying += 1
        if C is not None and A > C * (1 + 1e-9):
            violations += 1
        if A > max_A:
            max_A = A
            coeffs = w / np.array([factorial(k) * z0.imag ** k for k in range(n + 1)])
            arg = {"z0": [z0.real, z0.imag], "coeffs": [[c.real, c.imag] for c in coeffs]}
        top.append((A, z0, w))
        if len(top) > 4 * optimizer_starts:
            top.sort(key=lambda e: -e[0])
            del top[optimizer_starts:]
    top.sort(key=lambda e: -e[0])
    opt = 0.0
    for A, z0, w in top[:optimizer_starts]:
        val, _ = _optimize_max(n, n1, n2, z0 / z0.imag, a, a2, eps, [_pack(w)])
        opt = max(opt, val)
    fitted = max(max_A, opt)
    notes = []
    if satisfying == 0:
        notes.append("no sample met the conditions")
    consts = tuple(binomial_constant(k) for k in range(n + 1))
    return PolyBoundReport(n, n1, n2, a, a2, eps, r, y_max, trials, seed, satisfying, max_A, arg, opt,
                         fitted, C, violations, consts, tuple(notes))


def fit_constant(n: int, n1: int, n2: int, seeds=(0, 1, 2), **kwargs) -> dict:
    """Fit C on the first seed, test it on all seeds, and report the drift of
    the fitted constant across seeds (max / min - 1)."""
    first = polybound_harness(n, n1, n2, seed=seeds[0], **kwargs)
    C = first.fitted_C
    runs = [first] + [polybound_harness(n, n1, n2, seed=s, C=C, **kwargs) for s in seeds[1:]]
    fits = [run.fitted_C for run in runs]
    drift = max(fits) / min(fits) - 1 if min(fits) > 0 else float("inf")
    return {"C": C, "fits": fits, "drift": drift, "violations": sum(run.violations for run in runs),
            "satisfying": [run.satisfying for run in runs]}
