"""Numpy implementations of the lattice-box kernels.

Both kernels walk the box |h_c| <= B in lexicographic order (first
coordinate slowest), the same order as the compiled versions, so minima are
resolved to the same lattice vector.
"""

from __future__ import annotations

import numpy as np

CHUNK = 1 << 14


def box_chunks(n: int, B: int, chunk: int = CHUNK):
    """Yield int64 arrays of consecutive box points in lexicographic order."""
    side = 2 * B + 1
    total = side ** n
    for start in range(0, total, chunk):
        idx = np.arange(start, min(start + chunk, total), dtype=np.int64)
        out = np.empty((len(idx), n), dtype=np.int64)
        for c in range(n - 1, -1, -1):
            out[:, c] = idx % side - B
            idx = idx // side
        yield out


def _level_sum(values: np.ndarray, levels: np.ndarray, nlev: int) -> np.ndarray:
    """Sum |values| over the last-but-one axis grouped by level -> (..., nlev, ...)."""
    shape = values.shape[:1] + (nlev,) + values.shape[2:]
    out = np.zeros(shape)
    for k in range(nlev):
        sel = levels == k
        if np.any(sel):
            out[:, k] = np.abs(values[:, sel]).sum(axis=1)
    return out


def scan_epsilon(phi_re, phi_im, D, levels_out, T_num, DT, levels_in, v, N, B, zs):
    """Minimum over h in the box with N h != 0 and z in ``zs`` of
    max_k |phi(h; z) - v|_k y^k / A(h, z).

    Returns (best, best_h, best_zi, best_k, scanned, kpos, violations).
    ``violations`` counts pairs whose maximizing level k > 0 has no nonzero
    bigraded component at levels >= k.
    """
    phi = (np.asarray(phi_re, dtype=float) + 1j * np.asarray(phi_im, dtype=float)) / D
    T = np.asarray(T_num, dtype=float) / DT
    levels_out = np.asarray(levels_out)
    levels_in = np.asarray(levels_in)
    v = np.asarray(v, dtype=complex)
    N = np.asarray(N, dtype=np.int64)
    zs = np.asarray(zs, dtype=complex)
    ys = zs.imag
    n = phi.shape[2]
    nlev = int(max(levels_out.max(initial=0), levels_in.max(initial=0))) + 1
    ypow = ys[None, :] ** np.arange(nlev)[:, None]          # (nlev, Z)

    best = np.inf
    best_h = np.zeros(n, dtype=np.int64)
    best_zi = -1
    best_k = -1
    scanned = kpos = violations = 0
    for H in box_chunks(n, B):
        keep = np.any(H @ N.T != 0, axis=1)
        H = H[keep]
        if not len(H):
            continue
        coef = np.einsum("dcn,kn->kdc", phi, H.astype(float))        # (K, m+1, d_out)
        vals = np.zeros((len(H), phi.shape[1], len(zs)), dtype=complex)
        for d in range(phi.shape[0] - 1, -1, -1):
            vals = vals * zs[None, None, :] + coef[:, d, :, None]
        vals -= v[None, :, None]
        num = _level_sum(vals, levels_out, nlev) * ypow[None]     # (K, nlev, Z)
        U = H.astype(float) @ T.T                                   # (K, n_in)
        a = _level_sum(U, levels_in, nlev)                          # (K, nlev)
        A = a @ ypow                                                # (K, Z)
        ratio_k = num / A[:, None, :]
        kmax = np.argmax(ratio_k, axis=1)                           # first max
        ratio = np.take_along_axis(ratio_k, kmax[:, None, :], axis=1)[:, 0, :]
        scanned += ratio.size
        # exact test for vanishing of the bigraded components above kmax
        Ui = H @ np.asarray(T_num, dtype=np.int64).T
        nz = np.zeros((len(H), nlev), dtype=bool)
        for k in range(nlev):
            sel = levels_in == k
            if np.any(sel):
                nz[:, k] = np.any(Ui[:, sel] != 0, axis=1)
        above = np.flip(np.logical_or.accumulate(np.flip(nz, axis=1), axis=1), axis=1)
        pos = kmax > 0
        kpos += int(pos.sum())
        supported = np.take_along_axis(above, kmax, axis=1)
        violations += int((pos & ~supported).sum())
        flat = int(np.argmin(ratio))
        val = ratio.flat[flat]
        if val < best:
            hi, zi = divmod(flat, len(zs))
            best = float(val)
            best_h = H[hi].copy()
            best_zi = zi
            best_k = int(kmax[hi, zi])
    return best, best_h, best_zi, best_k, scanned, kpos, violations


def rect_distance(w: np.ndarray, x0: float, x1: float, y0: float, y1: float) -> np.ndarray:
    dx = np.maximum(np.maximum(x0 - w.real, w.real - x1), 0.0)
    dy = np.maximum(np.maximum(y0 - w.imag, w.imag - y1), 0.0)
    return np.hypot(dx, dy)


def poly_lower_bound(coef: np.ndarray, rect) -> np.ndarray:
    """Lower bound of |sum_d coef[..., d] z^d| over a rectangle.

    coef has shape (K, m+1) with the target already subtracted from the
    constant term.  Exact for degree <= 2 via the roots; 0 for higher degree.
    """
    x0, x1, y0, y1 = rect
    K, m1 = coef.shape
    out = np.zeros(K)
    nz = coef != 0
    deg = np.where(nz.any(axis=1), m1 - 1 - np.argmax(nz[:, ::-1], axis=1), -1)
    s0 = deg <= 0
    out[s0] = np.abs(coef[s0, 0])
    s1 = deg == 1
    if np.any(s1):
        c0, c1 = coef[s1, 0], coef[s1, 1]
        out[s1] = np.abs(c1) * rect_distance(-c0 / c1, x0, x1, y0, y1)
    s2 = deg == 2
    if np.any(s2):
        c0, c1, c2 = coef[s2, 0], coef[s2, 1], coef[s2, 2]
        disc = np.sqrt(c1 * c1 - 4 * c2 * c0)
        r1 = (-c1 + disc) / (2 * c2)
        r2 = (-c1 - disc) / (2 * c2)
        out[s2] = np.abs(c2) * rect_distance(r1, x0, x1, y0, y1) * rect_distance(r2, x0, x1, y0, y1)
    return out


def prune_box(phi_re, phi_im, D, target, B, rect, threshold, max_candidates=200_000):
    """Lattice vectors in the box whose section may come within ``threshold``
    (l1 distance) of ``target`` somewhere over ``rect``.

    Returns (candidates as int64 array, scanned, overflow flag).
    """
    phi_re = np.asarray(phi_re, dtype=np.int64)
    phi_im = np.asarray(phi_im, dtype=np.int64)
    target = np.asarray(target, dtype=complex)
    m1, d_out, n = phi_re.shape
    safe = threshold * (1 + 1e-9) + 1e-300
    found = []
    count = 0
    scanned = 0
    for H in box_chunks(n, B):
        scanned += len(H)
        cre = np.einsum("dcn,kn->kcd", phi_re, H)
        cim = np.einsum("dcn,kn->kcd", phi_im, H)
        coef = (cre + 1j * cim) / D                                 # (K, d_out, m+1)
        lb = np.zeros(len(H))
        for c in range(d_out):
            cc = coef[:, c, :].copy()
            cc[:, 0] -= target[c]
            lb += poly_lower_bound(cc, rect)
        sel = lb < safe
        if np.any(sel):
            found.append(H[sel])
            count += int(sel.sum())
            if count > max_candidates:
                return np.concatenate(found)[:max_candidates], scanned, True
    if found:
        return np.concatenate(found), scanned, False
    return np.zeros((0, n), dtype=np.int64), scanned, False
