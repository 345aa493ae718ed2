"""Edge construction and triangle counting, compiled when available.

The backend is chosen at import: the Cython extension ``_kernels`` if it
imports and ``KPKVB_PURE_PYTHON`` is unset, else the numpy fallback.
Both backends apply the same exact connection test, so they return the
same adjacency.
"""

from __future__ import annotations

import math
import os

import numpy as np

from . import _kernels_py

if os.environ.get("KPKVB_PURE_PYTHON"):
    _impl = _kernels_py
else:
    try:
        from . import _kernels as _impl
    except ImportError:
        _impl = _kernels_py

BACKEND = "python" if _impl is _kernels_py else "cython"

BAND_WIDTH = 0.5
# relative and absolute widening of every search window; the exact test decides
_SLACK_REL = 1e-9
_SLACK_ABS = 1e-12


def backend(name: str | None = None):
    """Return the kernel module for ``name`` ("cython", "python") or the default."""
    if name is None:
        return _impl
    if name == "python":
        return _kernels_py
    if name == "cython":
        from . import _kernels
        return _kernels
    raise ValueError(f"unknown backend {name!r}")


def _bands(height: np.ndarray, pos: np.ndarray, top: float):
    """Group vertices into height bands, each sorted by position."""
    nb = max(1, int(math.ceil(top / BAND_WIDTH)))
    band = np.minimum((height / BAND_WIDTH).astype(np.int64), nb - 1)
    band = np.maximum(band, 0)
    order = np.lexsort((pos, band))
    band_ptr = np.zeros(nb + 1, dtype=np.int64)
    np.cumsum(np.bincount(band, minlength=nb), out=band_ptr[1:])
    edges_hi = BAND_WIDTH * np.arange(1, nb + 1, dtype=float)
    edges_hi[-1] = max(edges_hi[-1], float(height.max(initial=0.0)))
    return band_ptr, np.ascontiguousarray(pos[order]), order.astype(np.int64), edges_hi


def polar_adjacency(r: np.ndarray, theta: np.ndarray, R: float, impl=None):
    """CSR adjacency of points ``(r, theta)`` under the distance-at-most-R rule."""
    impl = impl or _impl
    r = np.ascontiguousarray(r, dtype=float)
    theta = np.ascontiguousarray(theta, dtype=float)
    if r.size == 0:
        return np.zeros(1, dtype=np.int64), np.zeros(0, dtype=np.int64)
    Rp = max(R, 0.0)
    height = Rp - r
    band_ptr, band_theta, band_idx, hmax = _bands(height, theta, Rp)
    rmin = np.maximum(Rp - hmax, 0.0)
    ch = np.cosh(r)
    sh = np.sinh(r)
    cosh_R = math.cosh(R)
    # largest angle at which a band point at radius >= rmin can still connect
    with np.errstate(divide="ignore", invalid="ignore"):
        c = (ch[:, None] * np.cosh(rmin)[None, :] - cosh_R) / (sh[:, None] * np.sinh(rmin)[None, :])
    always = (r[:, None] + rmin[None, :] <= Rp) | ~np.isfinite(c) | (c <= -1.0)
    win = np.arccos(np.clip(c, -1.0, 1.0)) * (1.0 + _SLACK_REL) + _SLACK_ABS
    win = np.where(always, math.pi, np.where(c > 1.0 + 1e-12, -1.0, win))
    return impl.polar_edges(theta, ch, sh, cosh_R, band_ptr, band_theta, band_idx,
                            np.ascontiguousarray(win))


def box_adjacency(x: np.ndarray, y: np.ndarray, width: float, impl=None):
    """CSR adjacency on the cylinder of circumference ``width``."""
    impl = impl or _impl
    x = np.ascontiguousarray(x, dtype=float)
    y = np.ascontiguousarray(y, dtype=float)
    if x.size == 0:
        return np.zeros(1, dtype=np.int64), np.zeros(0, dtype=np.int64)
    band_ptr, band_x, band_idx, hmax = _bands(y, x, float(y.max(initial=0.0)))
    ehalf = np.exp(0.5 * y)
    win = ehalf[:, None] * np.exp(0.5 * hmax)[None, :] * (1.0 + _SLACK_REL) + _SLACK_ABS
    return impl.box_edges(x, ehalf, float(width), band_ptr, band_x, band_idx,
                          np.ascontiguousarray(win))


def triangle_counts(indptr: np.ndarray, indices: np.ndarray, impl=None) -> np.ndarray:
    impl = impl or _impl
    return impl.triangle_counts(np.ascontiguousarray(indptr, dtype=np.int64),
                                np.ascontiguousarray(indices, dtype=np.int64))
