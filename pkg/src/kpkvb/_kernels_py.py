"""Vectorised numpy/scipy versions of the compiled kernels.

Same signatures and results as ``_kernels``; used when the extension is
not built or ``KPKVB_PURE_PYTHON`` is set.
"""

from __future__ import annotations

import numpy as np
from scipy import sparse

TWO_PI = 2.0 * np.pi


def _circ_dist(a, b, c):
    d = np.fmod(np.abs(a - b), c)
    return np.minimum(d, c - d)


def _expand(lo: np.ndarray, hi: np.ndarray):
    """Rows and flat positions for the half-open ranges ``[lo, hi)``."""
    cnt = np.maximum(hi - lo, 0)
    rows = np.repeat(np.arange(lo.size), cnt)
    starts = np.repeat(lo - np.concatenate([[0], np.cumsum(cnt)[:-1]]), cnt)
    return rows, starts + np.arange(cnt.sum())


def _windowed_pairs(pos, band_ptr, band_pos, band_idx, window, period):
    """Candidate (i, j) pairs: j in band b with circular distance <= window[i, b]."""
    n = pos.size
    half = 0.5 * period
    out_i = []
    out_j = []
    for b in range(band_ptr.size - 1):
        s, e = band_ptr[b], band_ptr[b + 1]
        if s == e:
            continue
        members = band_idx[s:e]
        bp = band_pos[s:e]
        w = window[:, b]
        full = np.flatnonzero(w >= half)
        if full.size:
            out_i.append(np.repeat(full, members.size))
            out_j.append(np.tile(members, full.size))
        part = np.flatnonzero((w >= 0) & (w < half))
        if part.size == 0:
            continue
        ext_pos = np.concatenate([bp - period, bp, bp + period])
        ext_idx = np.concatenate([members, members, members])
        lo = np.searchsorted(ext_pos, pos[part] - w[part], side="left")
        hi = np.searchsorted(ext_pos, pos[part] + w[part], side="right")
        rows, flat = _expand(lo, hi)
        out_i.append(part[rows])
        out_j.append(ext_idx[flat])
    if not out_i:
        return np.empty(0, np.int64), np.empty(0, np.int64)
    i = np.concatenate(out_i).astype(np.int64)
    j = np.concatenate(out_j).astype(np.int64)
    keep = i != j
    return i[keep], j[keep]


def _csr(n, i, j):
    order = np.lexsort((j, i))
    i = i[order]
    j = j[order]
    indptr = np.zeros(n + 1, dtype=np.int64)
    np.cumsum(np.bincount(i, minlength=n), out=indptr[1:])
    return indptr, j


def polar_edges(theta, ch, sh, cosh_R, band_ptr, band_theta, band_idx, window):
    theta = np.asarray(theta)
    i, j = _windowed_pairs(theta, np.asarray(band_ptr), np.asarray(band_theta),
                           np.asarray(band_idx), np.asarray(window), TWO_PI)
    lhs = ch[i] * ch[j] - sh[i] * sh[j] * np.cos(_circ_dist(theta[i], theta[j], TWO_PI))
    keep = lhs <= cosh_R
    return _csr(theta.size, i[keep], j[keep])


def box_edges(x, ehalf, width, band_ptr, band_x, band_idx, window):
    x = np.asarray(x)
    i, j = _windowed_pairs(x, np.asarray(band_ptr), np.asarray(band_x),
                           np.asarray(band_idx), np.asarray(window), width)
    keep = _circ_dist(x[i], x[j], width) <= ehalf[i] * ehalf[j]
    return _csr(x.size, i[keep], j[keep])


def triangle_counts(indptr, indices):
    """Per-vertex triangle counts as the row sums of ``(A @ A) * A / 2``."""
    n = len(indptr) - 1
    a = sparse.csr_matrix((np.ones(len(indices), dtype=np.int64), indices, indptr), shape=(n, n))
    paths = (a @ a).multiply(a)
    return np.asarray(paths.sum(axis=1)).ravel().astype(np.int64) // 2
