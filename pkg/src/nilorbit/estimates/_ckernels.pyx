# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled lattice-box kernels; same contracts as the numpy versions."""

import numpy as np
cimport numpy as cnp
from libc.math cimport fabs, hypot, INFINITY

cnp.import_array()

cdef extern from "complex.h":
    double complex csqrt(double complex) nogil
    double cabs(double complex) nogil


cdef inline double _rect_dist(double complex w, double x0, double x1, double y0, double y1) nogil:
    cdef double dx = 0.0, dy = 0.0
    if w.real < x0:
        dx = x0 - w.real
    elif w.real > x1:
        dx = w.real - x1
    if w.imag < y0:
        dy = y0 - w.imag
    elif w.imag > y1:
        dy = w.imag - y1
    return hypot(dx, dy)


def scan_epsilon(phi_re, phi_im, long D, levels_out, T_num, long DT, levels_in, v, N, long B, zs):
    cdef long[:, :, ::1] pre = np.ascontiguousarray(phi_re, dtype=np.int64)
    cdef long[:, :, ::1] pim = np.ascontiguousarray(phi_im, dtype=np.int64)
    cdef long[::1] lout = np.ascontiguousarray(levels_out, dtype=np.int64)
    cdef long[:, ::1] tn = np.ascontiguousarray(T_num, dtype=np.int64)
    cdef long[::1] lin = np.ascontiguousarray(levels_in, dtype=np.int64)
    cdef double complex[::1] vv = np.ascontiguousarray(v, dtype=np.complex128)
    cdef long[:, ::1] nm = np.ascontiguousarray(N, dtype=np.int64)
    cdef double complex[::1] zz = np.ascontiguousarray(zs, dtype=np.complex128)

    cdef Py_ssize_t m1 = pre.shape[0], dout = pre.shape[1], n = pre.shape[2]
    cdef Py_ssize_t nin = tn.shape[0], Z = zz.shape[0]
    cdef Py_ssize_t nlev = 1, i, j, c, d, k, zi
    for c in range(dout):
        if lout[c] + 1 > nlev:
            nlev = lout[c] + 1
    for c in range(nin):
        if lin[c] + 1 > nlev:
            nlev = lin[c] + 1

    h_arr = np.full(n, -B, dtype=np.int64)
    cdef long[::1] h = h_arr
    cre_arr = np.zeros((m1, dout), dtype=np.int64)
    cim_arr = np.zeros((m1, dout), dtype=np.int64)
    cdef long[:, ::1] cre = cre_arr
    cdef long[:, ::1] cim = cim_arr
    u_arr = np.zeros(nin, dtype=np.int64)
    cdef long[::1] u = u_arr
    nh_arr = np.zeros(nm.shape[0], dtype=np.int64)
    cdef long[::1] nh = nh_arr
    ypow_arr = np.zeros((Z, nlev))
    cdef double[:, ::1] ypow = ypow_arr
    a_arr = np.zeros(nlev)
    cdef double[::1] a = a_arr
    nz_arr = np.zeros(nlev, dtype=np.int64)
    cdef long[::1] nzl = nz_arr
    lev_arr = np.zeros(nlev)
    cdef double[::1] lev = lev_arr
    best_h_arr = np.zeros(n, dtype=np.int64)
    cdef long[::1] best_h = best_h_arr

    cdef double invD = 1.0 / D, invDT = 1.0 / DT
    cdef double best = INFINITY, A, rk, rmax
    cdef long best_zi = -1, best_k = -1, kmax
    cdef long long scanned = 0, kpos = 0, violations = 0
    cdef double complex acc, z
    cdef bint inker, supported
    cdef long side = 2 * B + 1
    cdef long long total = 1, idx

    for zi in range(Z):
        for k in range(nlev):
            ypow[zi, k] = zz[zi].imag ** k
    for i in range(n):
        total *= side

    # initial sums at h = (-B, ..., -B)
    for d in range(m1):
        for c in range(dout):
            cre[d, c] = 0
            cim[d, c] = 0
            for j in range(n):
                cre[d, c] += pre[d, c, j] * h[j]
                cim[d, c] += pim[d, c, j] * h[j]
    for c in range(nin):
        u[c] = 0
        for j in range(n):
            u[c] += tn[c, j] * h[j]
    for c in range(nm.shape[0]):
        nh[c] = 0
        for j in range(n):
            nh[c] += nm[c, j] * h[j]

    with nogil:
        for idx in range(total):
            inker = True
            for c in range(nm.shape[0]):
                if nh[c] != 0:
                    inker = False
                    break
            if not inker:
                for k in range(nlev):
                    a[k] = 0.0
                    nzl[k] = 0
                for c in range(nin):
                    a[lin[c]] += fabs(<double>u[c]) * invDT
                    if u[c] != 0:
                        nzl[lin[c]] = 1
                for zi in range(Z):
                    z = zz[zi]
                    for k in range(nlev):
                        lev[k] = 0.0
                    for c in range(dout):
                        acc = 0
                        for d in range(m1 - 1, -1, -1):
                            acc = acc * z + (cre[d, c] + 1j * cim[d, c]) * invD
                        acc = acc - vv[c]
                        lev[lout[c]] += cabs(acc)
                    A = 0.0
                    for k in range(nlev):
                        A += a[k] * ypow[zi, k]
                    rmax = -1.0
                    kmax = 0
                    for k in range(nlev):
                        rk = lev[k] * ypow[zi, k] / A
                        if rk > rmax:
                            rmax = rk
                            kmax = k
                    scanned += 1
                    if kmax > 0:
                        kpos += 1
                        supported = False
                        for k in range(kmax, nlev):
                            if nzl[k]:
                                supported = True
                        if not supported:
                            violations += 1
                    if rmax < best:
                        best = rmax
                        best_zi = zi
                        best_k = kmax
                        for j in range(n):
                            best_h[j] = h[j]
            # odometer step: last coordinate fastest
            j = n - 1
            while j >= 0:
                if h[j] < B:
                    h[j] += 1
                    for d in range(m1):
                        for c in range(dout):
                            cre[d, c] += pre[d, c, j]
                            cim[d, c] += pim[d, c, j]
                    for c in range(nin):
                        u[c] += tn[c, j]
                    for c in range(nm.shape[0]):
                        nh[c] += nm[c, j]
                    break
                h[j] = -B
                for d in range(m1):
                    for c in range(dout):
                        cre[d, c] -= 2 * B * pre[d, c, j]
                        cim[d, c] -= 2 * B * pim[d, c, j]
                for c in range(nin):
                    u[c] -= 2 * B * tn[c, j]
                for c in range(nm.shape[0]):
                    nh[c] -= 2 * B * nm[c, j]
                j -= 1
    return float(best), best_h_arr, int(best_zi), int(best_k), int(scanned), int(kpos), int(violations)


cdef inline double _coord_bound(long[:, ::1] cre, long[:, ::1] cim, Py_ssize_t c, Py_ssize_t m1,
                                double invD, double complex t,
                                double x0, double x1, double y0, double y1) nogil:
    cdef Py_ssize_t d, deg = -1
    for d in range(m1 - 1, 0, -1):
        if cre[d, c] != 0 or cim[d, c] != 0:
            deg = d
            break
    cdef double complex c0 = (cre[0, c] + 1j * cim[0, c]) * invD - t
    cdef double complex c1, c2, disc
    if deg <= 0:
        return cabs(c0)
    if deg == 1:
        c1 = (cre[1, c] + 1j * cim[1, c]) * invD
        return cabs(c1) * _rect_dist(-c0 / c1, x0, x1, y0, y1)
    if deg == 2:
        c1 = (cre[1, c] + 1j * cim[1, c]) * invD
        c2 = (cre[2, c] + 1j * cim[2, c]) * invD
        disc = csqrt(c1 * c1 - 4 * c2 * c0)
        return cabs(c2) * _rect_dist((-c1 + disc) / (2 * c2), x0, x1, y0, y1) \
            * _rect_dist((-c1 - disc) / (2 * c2), x0, x1, y0, y1)
    return 0.0


def prune_box(phi_re, phi_im, long D, target, long B, rect, double threshold, long max_candidates=200000):
    cdef long[:, :, ::1] pre = np.ascontiguousarray(phi_re, dtype=np.int64)
    cdef long[:, :, ::1] pim = np.ascontiguousarray(phi_im, dtype=np.int64)
    cdef double complex[::1] tg = np.ascontiguousarray(target, dtype=np.complex128)
    cdef Py_ssize_t m1 = pre.shape[0], dout = pre.shape[1], n = pre.shape[2]
    cdef double x0 = rect[0], x1 = rect[1], y0 = rect[2], y1 = rect[3]
    cdef double safe = threshold * (1 + 1e-9) + 1e-300
    cdef double invD = 1.0 / D, lb
    cdef Py_ssize_t j, c, d
    cdef long side = 2 * B + 1
    cdef long long total = 1, idx, scanned = 0, count = 0
    cdef bint overflow = False

    h_arr = np.full(n, -B, dtype=np.int64)
    cdef long[::1] h = h_arr
    cre_arr = np.zeros((m1, dout), dtype=np.int64)
    cim_arr = np.zeros((m1, dout), dtype=np.int64)
    cdef long[:, ::1] cre = cre_arr
    cdef long[:, ::1] cim = cim_arr
    out_arr = np.zeros((max_candidates, n), dtype=np.int64)
    cdef long[:, ::1] out = out_arr

    for j in range(n):
        total *= side
    for d in range(m1):
        for c in range(dout):
            for j in range(n):
                cre[d, c] += pre[d, c, j] * h[j]
                cim[d, c] += pim[d, c, j] * h[j]

    with nogil:
        for idx in range(total):
            scanned += 1
            lb = 0.0
            for c in range(dout):
                lb += _coord_bound(cre, cim, c, m1, invD, tg[c], x0, x1, y0, y1)
                if lb >= safe:
                    break
            if lb < safe:
                if count >= max_candidates:
                    overflow = True
                    break
                for j in range(n):
                    out[count, j] = h[j]
                count += 1
            j = n - 1
            while j >= 0:
                if h[j] < B:
                    h[j] += 1
                    for d in range(m1):
                        for c in range(dout):
                            cre[d, c] += pre[d, c, j]
                            cim[d, c] += pim[d, c, j]
                    break
                h[j] = -B
                for d in range(m1):
                    for c in range(dout):
                        cre[d, c] -= 2 * B * pre[d, c, j]
                        cim[d, c] -= 2 * B * pim[d, c, j]
                j -= 1
    return out_arr[:count].copy(), int(scanned), bool(overflow)
