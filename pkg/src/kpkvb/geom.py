"""Hyperbolic-plane geometry in native polar and box (upper half-plane) charts.

All functions accept scalars or numpy arrays and broadcast.
"""

from __future__ import annotations

import math
from typing import NamedTuple

import numpy as np


class PolarPoint(NamedTuple):
    r: float
    theta: float


class PlanePoint(NamedTuple):
    x: float
    y: float


def normalize_angle(theta):
    """Map angles into (-pi, pi]."""
    t = np.asarray(theta, dtype=float)
    out = np.pi - np.mod(np.pi - t, 2.0 * np.pi)
    return out if out.ndim else float(out)


def polar_point(r: float, theta: float) -> PolarPoint:
    if not r >= 0.0:
        raise ValueError(f"radius must be >= 0, got {r!r}")
    return PolarPoint(float(r), normalize_angle(theta))


def plane_point(x: float, y: float) -> PlanePoint:
    if not y >= 0.0:
        raise ValueError(f"height must be >= 0, got {y!r}")
    return PlanePoint(float(x), float(y))


def sample_radius(alpha: float, R: float, u):
    """Invert the radial CDF ``(cosh(alpha r) - 1) / (cosh(alpha R) - 1)``."""
    u = np.asarray(u, dtype=float)
    if np.any((u < 0.0) | (u > 1.0)) or np.any(np.isnan(u)):
        raise ValueError("u must lie in [0, 1]")
    if R <= 0.0:
        out = np.zeros_like(u)
    else:
        # cosh(aR) - 1 = 2 sinh(aR/2)^2, exact near R = 0
        span = 2.0 * math.sinh(0.5 * alpha * R) ** 2
        out = np.arccosh(1.0 + u * span) / alpha
        out = np.minimum(out, R)
    return out if out.ndim else float(out)


def angular_distance(t1, t2):
    """``|t1 - t2|`` on the circle of circumference ``2 pi``; result in [0, pi]."""
    return torus_distance(t1, t2, 2.0 * np.pi)


def torus_distance(x1, x2, circumference: float):
    if not circumference > 0.0:
        raise ValueError("circumference must be > 0")
    d = np.mod(np.abs(np.asarray(x1, dtype=float) - np.asarray(x2, dtype=float)), circumference)
    out = np.minimum(d, circumference - d)
    return out if out.ndim else float(out)


def cosh_distance(r1, t1, r2, t2):
    """``cosh`` of the hyperbolic distance, from the law of cosines."""
    dt = angular_distance(t1, t2)
    return np.cosh(r1) * np.cosh(r2) - np.sinh(r1) * np.sinh(r2) * np.cos(dt)


def is_connected_polar(p1: PolarPoint, p2: PolarPoint, R: float):
    return cosh_distance(p1[0], p1[1], p2[0], p2[1]) <= math.cosh(R)


def hyperbolic_distance(p1: PolarPoint, p2: PolarPoint):
    return np.arccosh(np.maximum(cosh_distance(p1[0], p1[1], p2[0], p2[1]), 1.0))


def psi(p: PolarPoint, R: float) -> PlanePoint:
    """Polar point to box coordinates ``(theta e^{R/2} / 2, R - r)``."""
    r, theta = p
    return PlanePoint(theta * math.exp(0.5 * R) / 2.0, R - r)


def psi_inverse(q: PlanePoint, R: float) -> PolarPoint:
    x, y = q
    return PolarPoint(R - y, 2.0 * x * math.exp(-0.5 * R))


def phi(y, y2, R: float):
    """Half-width in x of the hyperbolic ball of radius R, in box coordinates.

    A point at height ``y2`` is adjacent to one at height ``y`` iff their
    x-distance on the torus is at most this value. Requires ``y + y2 < R``;
    above that threshold the two points are always adjacent.
    """
    y = np.asarray(y, dtype=float)
    y2 = np.asarray(y2, dtype=float)
    if np.any(y < 0) or np.any(y2 < 0):
        raise ValueError("heights must be >= 0")
    if np.any(y + y2 >= R):
        raise ValueError("phi requires y + y2 < R")
    a = R - y
    b = R - y2
    # 1 - Q = (cosh R - cosh(a-b)) / (sinh a sinh b); arccos(1-e) = 2 asin(sqrt(e/2))
    e = (math.cosh(R) - np.cosh(a - b)) / (np.sinh(a) * np.sinh(b))
    out = math.exp(0.5 * R) * np.arcsin(np.sqrt(np.clip(0.5 * e, 0.0, 1.0)))
    return out if out.ndim else float(out)
