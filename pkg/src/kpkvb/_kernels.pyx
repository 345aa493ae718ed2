# distutils: language = c++
"""Compiled edge-construction and triangle-counting kernels."""

import numpy as np
cimport numpy as cnp
from libc.math cimport cos, fabs, fmod, M_PI
from libc.stdint cimport int64_t
from libcpp.vector cimport vector
from libcpp.algorithm cimport sort

cnp.import_array()

cdef double TWO_PI = 2.0 * M_PI


cdef inline Py_ssize_t lower_bound(const double[::1] a, Py_ssize_t lo, Py_ssize_t hi, double v) noexcept nogil:
    cdef Py_ssize_t mid
    while lo < hi:
        mid = (lo + hi) >> 1
        if a[mid] < v:
            lo = mid + 1
        else:
            hi = mid
    return lo


cdef inline Py_ssize_t upper_bound(const double[::1] a, Py_ssize_t lo, Py_ssize_t hi, double v) noexcept nogil:
    cdef Py_ssize_t mid
    while lo < hi:
        mid = (lo + hi) >> 1
        if a[mid] <= v:
            lo = mid + 1
        else:
            hi = mid
    return lo


cdef inline double circ_dist(double a, double b, double c) noexcept nogil:
    cdef double d = fmod(fabs(a - b), c)
    return d if d <= c - d else c - d


cdef object to_csr(vector[int64_t]& ptr, vector[int64_t]& idx):
    cdef Py_ssize_t i
    indptr = np.empty(ptr.size(), dtype=np.int64)
    indices = np.empty(idx.size(), dtype=np.int64)
    cdef int64_t[::1] p = indptr
    cdef int64_t[::1] q = indices
    for i in range(<Py_ssize_t>ptr.size()):
        p[i] = ptr[i]
    for i in range(<Py_ssize_t>idx.size()):
        q[i] = idx[i]
    return indptr, indices


def polar_edges(const double[::1] theta, const double[::1] ch, const double[::1] sh,
                double cosh_R, const int64_t[::1] band_ptr, const double[::1] band_theta,
                const int64_t[::1] band_idx, const double[:, ::1] window):
    """Adjacency of the disk model; ``window[i, b]`` bounds the angular search in band b."""
    cdef Py_ssize_t n = theta.shape[0]
    cdef Py_ssize_t nb = band_ptr.shape[0] - 1
    cdef Py_ssize_t i, b, s, e, k, lo, hi, j
    cdef double w, t, lhs
    cdef vector[int64_t] ptr
    cdef vector[int64_t] idx
    cdef Py_ssize_t row_start
    ptr.reserve(n + 1)
    ptr.push_back(0)
    with nogil:
        for i in range(n):
            row_start = idx.size()
            t = theta[i]
            for b in range(nb):
                s = band_ptr[b]
                e = band_ptr[b + 1]
                if s == e:
                    continue
                w = window[i, b]
                if w < 0.0:
                    continue
                if w >= M_PI:
                    for k in range(s, e):
                        j = band_idx[k]
                        if j != i:
                            lhs = ch[i] * ch[j] - sh[i] * sh[j] * cos(circ_dist(t, theta[j], TWO_PI))
                            if lhs <= cosh_R:
                                idx.push_back(j)
                    continue
                lo = lower_bound(band_theta, s, e, t - w)
                hi = upper_bound(band_theta, s, e, t + w)
                for k in range(lo, hi):
                    j = band_idx[k]
                    if j != i:
                        lhs = ch[i] * ch[j] - sh[i] * sh[j] * cos(circ_dist(t, theta[j], TWO_PI))
                        if lhs <= cosh_R:
                            idx.push_back(j)
                if t - w < -M_PI:
                    lo = lower_bound(band_theta, s, e, t - w + TWO_PI)
                    lo = max(lo, hi)
                    for k in range(lo, e):
                        j = band_idx[k]
                        if j != i:
                            lhs = ch[i] * ch[j] - sh[i] * sh[j] * cos(circ_dist(t, theta[j], TWO_PI))
                            if lhs <= cosh_R:
                                idx.push_back(j)
                if t + w > M_PI:
                    lo = lower_bound(band_theta, s, e, t - w)
                    hi = upper_bound(band_theta, s, e, t + w - TWO_PI)
                    hi = min(hi, lo)
                    for k in range(s, hi):
                        j = band_idx[k]
                        if j != i:
                            lhs = ch[i] * ch[j] - sh[i] * sh[j] * cos(circ_dist(t, theta[j], TWO_PI))
                            if lhs <= cosh_R:
                                idx.push_back(j)
            sort(idx.begin() + row_start, idx.end())
            ptr.push_back(idx.size())
    return to_csr(ptr, idx)


def box_edges(const double[::1] x, const double[::1] ehalf, double width,
              const int64_t[::1] band_ptr, const double[::1] band_x,
              const int64_t[::1] band_idx, const double[:, ::1] window):
    """Adjacency of the box model: torus distance at most ``ehalf[i] * ehalf[j]``."""
    cdef Py_ssize_t n = x.shape[0]
    cdef Py_ssize_t nb = band_ptr.shape[0] - 1
    cdef Py_ssize_t i, b, s, e, k, lo, hi, j
    cdef double w, t, half = 0.5 * width
    cdef vector[int64_t] ptr
    cdef vector[int64_t] idx
    cdef Py_ssize_t row_start
    ptr.reserve(n + 1)
    ptr.push_back(0)
    with nogil:
        for i in range(n):
            row_start = idx.size()
            t = x[i]
            for b in range(nb):
                s = band_ptr[b]
                e = band_ptr[b + 1]
                if s == e:
                    continue
                w = window[i, b]
                if w >= half:
                    for k in range(s, e):
                        j = band_idx[k]
                        if j != i and circ_dist(t, x[j], width) <= ehalf[i] * ehalf[j]:
                            idx.push_back(j)
                    continue
                lo = lower_bound(band_x, s, e, t - w)
                hi = upper_bound(band_x, s, e, t + w)
                for k in range(lo, hi):
                    j = band_idx[k]
                    if j != i and circ_dist(t, x[j], width) <= ehalf[i] * ehalf[j]:
                        idx.push_back(j)
                if t - w < -half:
                    lo = lower_bound(band_x, s, e, t - w + width)
                    lo = max(lo, hi)
                    for k in range(lo, e):
                        j = band_idx[k]
                        if j != i and circ_dist(t, x[j], width) <= ehalf[i] * ehalf[j]:
                            idx.push_back(j)
                if t + w > half:
                    lo = lower_bound(band_x, s, e, t - w)
                    hi = upper_bound(band_x, s, e, t + w - width)
                    hi = min(hi, lo)
                    for k in range(s, hi):
                        j = band_idx[k]
                        if j != i and circ_dist(t, x[j], width) <= ehalf[i] * ehalf[j]:
                            idx.push_back(j)
            sort(idx.begin() + row_start, idx.end())
            ptr.push_back(idx.size())
    return to_csr(ptr, idx)


def triangle_counts(const int64_t[::1] indptr, const int64_t[::1] indices):
    """Per-vertex triangle counts by merging sorted neighbour lists."""
    cdef Py_ssize_t n = indptr.shape[0] - 1
    out = np.zeros(n, dtype=np.int64)
    cdef int64_t[::1] t = out
    cdef Py_ssize_t u, v, a, b, ae, be, k
    with nogil:
        for u in range(n):
            for k in range(indptr[u], indptr[u + 1]):
                v = indices[k]
                if v <= u:
                    continue
                # common neighbours w > v of u and v
                a = k + 1
                ae = indptr[u + 1]
                b = indptr[v]
                be = indptr[v + 1]
                while b < be and indices[b] <= v:
                    b += 1
                while a < ae and b < be:
                    if indices[a] < indices[b]:
                        a += 1
                    elif indices[a] > indices[b]:
                        b += 1
                    else:
                        t[u] += 1
                        t[v] += 1
                        t[indices[a]] += 1
                        a += 1
                        b += 1
    return out
