"""Accumulation searches and separation certificates for lattice sections.

A lattice vector h gives the section z -> phi(h; z).  Over the strip region
we look for sections entering a ball around a target point.  The box of
lattice vectors is first pruned with a certified lower bound on the
distance (see :mod:`._pykernels`), then each survivor is resolved exactly
when its section is affine in z, and by branch and bound otherwise.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import minimize

from ..exact import GScalar, GVector, as_gscalar, parse_gaussian
from . import kernels
from ._pykernels import poly_lower_bound
from .model import SectionModel
from .strip import StripRegion

__all__ = [
    "WitnessEntry",
    "AccumulationWitness",
    "SeparationReport",
    "find_accumulation",
    "certify_separation",
    "verify_witness",
    "min_distance",
    "parse_point",
]


def parse_point(point, dim: int) -> tuple:
    """Target point as a tuple of GScalar.  Accepts "(1, 1/2+1/4i)" or a sequence."""
    if isinstance(point, str):
        body = point.strip()
        if body.startswith("(") and body.endswith(")"):
            body = body[1:-1]
        parts = [p for p in body.split(",") if p.strip()] if body.strip() else []
        vals = tuple(parse_gaussian(p) for p in parts)
    else:
        vals = tuple(as_gscalar(complex(x)) if isinstance(x, complex) else as_gscalar(x) for x in point)
    if len(vals) != dim:
        raise ValueError(f"point has {len(vals)} coordinates, expected {dim}")
    return vals


# -- distance over a rectangle --------------------------------------------------

def _eval(coef: np.ndarray, z: complex) -> np.ndarray:
    out = np.zeros(coef.shape[0], dtype=complex)
    for d in range(coef.shape[1] - 1, -1, -1):
        out = out * z + coef[:, d]
    return out


def _taylor_bound(coef: np.ndarray, rect) -> float:
    """Lower bound of sum_c |Q_c| on a rectangle from the expansion at its centre."""
    x0, x1, y0, y1 = rect
    zc = complex((x0 + x1) / 2, (y0 + y1) / 2)
    delta = abs(complex(x1 - x0, y1 - y0)) / 2
    m1 = coef.shape[1]
    total = 0.0
    for c in range(coef.shape[0]):
        q = coef[c]
        # derivatives at zc divided by factorials = shifted coefficients
        shifted = np.zeros(m1, dtype=complex)
        for d in range(m1):
            acc = 0
            for e in range(d, m1):
                acc += q[e] * _binom(e, d) * zc ** (e - d)
            shifted[d] = acc
        rest = sum(abs(shifted[d]) * delta ** d for d in range(1, m1))
        total += max(abs(shifted[0]) - rest, 0.0)
    return total


def _binom(n: int, k: int) -> int:
    from math import comb

    return comb(n, k)


def _rect_bound(coef: np.ndarray, rect) -> float:
    roots = float(np.sum(poly_lower_bound(coef, rect)))
    return max(roots, _taylor_bound(coef, rect))


def min_distance(coef: np.ndarray, rect, threshold: float, max_nodes: int = 4000):
    """Decide whether min over rect of sum_c |Q_c(z)| is below ``threshold``.

    ``coef[c, d]`` is the z^d coefficient of coordinate c with the target
    already subtracted.  Returns (status, value, z) with status "below",
    "above" (proved by bounds) or "unresolved".
    """
    x0, x1, y0, y1 = rect

    def f(p):
        return float(np.abs(_eval(coef, complex(p[0], p[1]))).sum())

    starts = [complex((x0 + x1) / 2, y0), complex(x0, y0), complex(x1, y0)]
    for c in range(coef.shape[0]):
        q = coef[c]
        nz = np.nonzero(q)[0]
        if len(nz) and nz[-1] >= 1:
            for root in np.roots(q[: nz[-1] + 1][::-1]):
                starts.append(complex(min(max(root.real, x0), x1), min(max(root.imag, y0), y1)))
    best_v, best_z = np.inf, None
    for s in starts:
        v = f((s.real, s.imag))
        if v < best_v:
            best_v, best_z = v, s
    if best_v >= threshold:
        res = minimize(f, [best_z.real, best_z.imag], method="L-BFGS-B",
                       bounds=[(x0, x1), (y0, y1)])
        if res.fun < best_v:
            best_v, best_z = float(res.fun), complex(res.x[0], res.x[1])
    if best_v < threshold:
        return "below", best_v, best_z

    heap = [(-0.0, rect)]
    nodes = 0
    while heap:
        _, R = heapq.heappop(heap)
        nodes += 1
        if nodes > max_nodes:
            return "unresolved", best_v, best_z
        lb = _rect_bound(coef, R)
        if lb >= threshold:
            continue
        a0, a1, b0, b1 = R
        zc = complex((a0 + a1) / 2, (b0 + b1) / 2)
        v = f((zc.real, zc.imag))
        if v < best_v:
            best_v, best_z = v, zc
        if v < threshold:
            return "below", v, zc
        # split the longer side; y is split geometrically when the box is tall
        if (b1 - b0) > (a1 - a0):
            mid = (b0 * b1) ** 0.5 if b0 > 0 and b1 > 4 * b0 else (b0 + b1) / 2
            parts = [(a0, a1, b0, mid), (a0, a1, mid, b1)]
        else:
            mid = (a0 + a1) / 2
            parts = [(a0, mid, b0, b1), (mid, a1, b0, b1)]
        for P in parts:
            heapq.heappush(heap, (-lb, P))
    return "above", best_v, best_z


# -- exact helpers -------------------------------------------------------------

def _exact_coefficients(model: SectionModel, h) -> list[GVector]:
    hv = GVector(int(x) for x in h)
    return [m @ hv for m in model.phi_exact]


def _exact_affine_root(coeffs: list[GVector], target: tuple) -> GScalar | None:
    """z solving one coordinate that is exactly affine in z, if any."""
    for c in range(len(target)):
        higher = [coeffs[d][c] for d in range(2, len(coeffs))]
        if len(coeffs) > 1 and coeffs[1][c] and not any(higher):
            return (target[c] - coeffs[0][c]) / coeffs[1][c]
    return None


def _exact_values(coeffs: list[GVector], z: GScalar) -> GVector:
    out = GVector.zero(len(coeffs[0]))
    zp = GScalar(1)
    for cv in coeffs:
        out = out + cv.scale(zp)
        zp = zp * z
    return out


def _in_region_exact(z: GScalar, region: StripRegion) -> bool:
    return 0 <= z.re < 1 and region.r < z.im <= region.y_max


def _is_constant(coeffs: list[GVector]) -> bool:
    return all(cv.is_zero() for cv in coeffs[1:])


# -- reports -------------------------------------------------------------------

@dataclass(frozen=True)
class WitnessEntry:
    h: tuple
    z: complex
    distance: float
    exact_z: str | None = None     # Gaussian rational when z was solved exactly
    exact_zero: bool = False

    def as_dict(self) -> dict:
        return {"h": list(self.h), "z": [self.z.real, self.z.imag], "distance": self.distance,
                "exact_z": self.exact_z, "exact_zero": self.exact_zero}


@dataclass(frozen=True)
class AccumulationWitness:
    target: tuple
    entries: tuple
    notes: tuple = ()

    def as_dict(self) -> dict:
        return {"target": [str(t) for t in self.target],
                "entries": [e.as_dict() for e in self.entries],
                "notes": list(self.notes)}


@dataclass(frozen=True)
class SeparationReport:
    point: tuple
    in_invariant_part: bool
    radius: float
    bound: int
    region: dict
    intruders: tuple
    unresolved: tuple
    through_point: tuple
    certified: bool
    scanned: int
    candidates: int
    overflow: bool
    heuristic_tail: dict | None = None
    notes: tuple = field(default=("certification is relative to the declared lattice bound and region",))

    def as_dict(self) -> dict:
        return {
            "point": [str(p) for p in self.point],
            "in_invariant_part": self.in_invariant_part,
            "radius": self.radius,
            "bound": self.bound,
            "region": self.region,
            "intruders": [e.as_dict() for e in self.intruders],
            "unresolved": [list(h) for h in self.unresolved],
            "sections_through_point": [list(h) for h in self.through_point],
            "certified": self.certified,
            "scanned": self.scanned,
            "candidates": self.candidates,
            "candidate_overflow": self.overflow,
            "heuristic_tail": self.heuristic_tail,
            "notes": list(self.notes),
        }


def _candidates(model: SectionModel, target: tuple, bound: int, region: StripRegion, threshold: float):
    t = np.array([complex(x) for x in target], dtype=complex)
    return kernels.prune_box(model.phi_num.real.astype(np.int64), model.phi_num.imag.astype(np.int64),
                             model.denominator, t, bound, region.rect, threshold)


def _resolve(model: SectionModel, h, target: tuple, region: StripRegion, threshold: float):
    """Closest approach of the section through h to target over the region.

    Returns (status, WitnessEntry or None) with status in
    {"through", "below", "above", "unresolved"}.
    """
    coeffs = _exact_coefficients(model, h)
    tv = GVector(target)
    if _is_constant(coeffs):
        diff = coeffs[0] - tv
        if diff.is_zero():
            return "through", WitnessEntry(tuple(h), complex(0.0, region.r), 0.0, None, True)
        dist = float(sum(abs(a) for a in diff))
        z = complex(0.0, min(region.y_max, 2 * region.r))
        if dist < threshold:
            return "below", WitnessEntry(tuple(h), z, dist)
        return "above", None
    root = _exact_affine_root(coeffs, target)
    if root is not None and _in_region_exact(root, region):
        diff = _exact_values(coeffs, root) - tv
        if diff.is_zero():
            return "below", WitnessEntry(tuple(h), complex(root), 0.0, str(root), True)
    coef = np.array([[complex(cv[c]) for cv in coeffs] for c in range(len(target))], dtype=complex)
    coef[:, 0] -= np.array([complex(x) for x in target])
    status, val, z = min_distance(coef, region.rect, threshold)
    if status == "below":
        return "below", WitnessEntry(tuple(h), z, float(val))
    return status, None


def find_accumulation(model: SectionModel, target, tol: float = 1e-9, bound: int = 20,
                      r: float = 2.0, y_max: float = 4096.0) -> AccumulationWitness | None:
    """Lattice sections approaching ``target`` with Im z increasing.

    Keeps the hits (h, z) with distance below tol * 2^-n for the n-th
    retained term, ordered by Im z; None when nothing comes within ``tol``.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    region = StripRegion(r, y_max)
    tgt = parse_point(target, model.out_dim)
    cand, scanned, overflow = _candidates(model, tgt, bound, region, tol)
    hits = []
    constant = []
    for h in cand:
        status, entry = _resolve(model, [int(x) for x in h], tgt, region, tol)
        if status == "through":
            constant.append(entry)
        elif status == "below":
            hits.append(entry)
    notes = [f"scanned {scanned} lattice vectors in the box |h_c| <= {bound}"]
    if overflow:
        notes.append("candidate list truncated")
    if constant:
        notes.append("target lies on a constant lattice section; that section is the witness")
        return AccumulationWitness(tgt, tuple(constant[:1]), tuple(notes))
    if not hits:
        return None
    hits.sort(key=lambda e: (e.z.imag, e.distance, e.h))
    seq = []
    last_y = -np.inf
    for e in hits:
        if e.z.imag <= last_y:
            continue
        if e.distance < tol * 2.0 ** -(len(seq) + 1) or e.exact_zero:
            seq.append(e)
            last_y = e.z.imag
    if not seq:
        return None
    return AccumulationWitness(tgt, tuple(seq), tuple(notes))


def verify_witness(model: SectionModel, witness: AccumulationWitness, rtol: float = 1e-12) -> bool:
    """Recompute every distance from scratch; exact where z is exact."""
    tv = GVector(witness.target)
    last = -np.inf
    for e in witness.entries:
        if e.exact_z is not None:
            z = parse_gaussian(e.exact_z)
            d = _exact_values(_exact_coefficients(model, e.h), z) - tv
            if e.exact_zero and not d.is_zero():
                return False
            if complex(z) != e.z:
                return False
        else:
            val = model.evaluate(e.h, e.z) - np.array([complex(x) for x in witness.target])
            if abs(float(np.abs(val).sum()) - e.distance) > rtol * max(1.0, e.distance) + 1e-15:
                return False
        if len(witness.entries) > 1 and e.z.imag <= last:
            return False
        last = e.z.imag
    return True


def certify_separation(model: SectionModel, point, radius: float, bound: int = 50,
                       r: float = 2.0, y_max: float = 1e6, epsilon: float | None = None,
                       lattice_norm: float | None = None) -> SeparationReport:
    """Certify that no lattice section other than one through ``point``
    enters the ball of ``radius`` (l1 distance) around it over the region."""
    if not radius > 0:
        raise ValueError("radius must be positive")
    region = StripRegion(r, y_max)
    p = parse_point(point, model.out_dim)
    in_inv = model.invariant.contains(GVector(p))
    cand, scanned, overflow = _candidates(model, p, bound, region, radius)
    intruders, unresolved, through = [], [], []
    for h in cand:
        hl = [int(x) for x in h]
        status, entry = _resolve(model, hl, p, region, radius)
        if status == "through":
            through.append(tuple(hl))
        elif status == "below":
            intruders.append(entry)
        elif status == "unresolved":
            unresolved.append(tuple(hl))
    heuristic = None
    if epsilon is not None and lattice_norm is not None:
        heuristic = {
            "flag": "heuristic",
            "epsilon": epsilon,
            "E": lattice_norm,
            "excludes_tail": bool(radius <= epsilon * lattice_norm),
        }
    certified = not intruders and not unresolved and not overflow
    return SeparationReport(p, bool(in_inv), radius, bound, region.describe(), tuple(intruders),
                            tuple(unresolved), tuple(through), certified, scanned, len(cand), overflow,
                            heuristic)
