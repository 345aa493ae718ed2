"""Special functions on the real line and an adaptive Gauss-Kronrod integrator.

Everything here is double precision. Functions that take an array argument
are vectorised over it; shape parameters are scalars.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np
from scipy import special as sc

EULER_GAMMA = 0.57721566490153286061
_EPS = np.finfo(float).eps
_TINY = 1e-300
_MAXIT = 20000


class ConvergenceError(ArithmeticError):
    """An iteration did not reach tolerance within its budget."""


class QuadratureError(ConvergenceError):
    """Adaptive quadrature ran out of subdivisions.

    ``estimate`` and ``error`` hold the best result reached.
    """

    def __init__(self, message: str, estimate: float, error: float):
        super().__init__(f"{message} (estimate={estimate!r}, error={error!r})")
        self.estimate = estimate
        self.error = error


@dataclass(frozen=True)
class QuadSpec:
    abs_tol: float = 1e-12
    rel_tol: float = 1e-10
    max_subdivisions: int = 2000

    def __post_init__(self):
        if not (self.abs_tol > 0 and self.rel_tol > 0):
            raise ValueError("quadrature tolerances must be positive")
        if self.max_subdivisions < 1:
            raise ValueError("max_subdivisions must be >= 1")


DEFAULT_QUAD = QuadSpec()

# --------------------------------------------------------------------------
# Gauss-Kronrod 10/21 rule

_XG = np.array([
    0.973906528517171720077964012084452,
    0.865063366688984510732096688423493,
    0.679409568299024406234327365114874,
    0.433395394129247190799265943165784,
    0.148874338981631210884826001129720,
])
_WG = np.array([
    0.066671344308688137593568809893332,
    0.149451349150580593145776339657697,
    0.219086362515982043995534934228163,
    0.269266719309996355091226921569469,
    0.295524224714752870173892994651338,
])
_XK = np.array([
    0.995657163025808080735527280689003,
    0.930157491355708226001207180059508,
    0.780817726586416897063717578345042,
    0.562757134668604683339000099272694,
    0.294392862701460198131126603103866,
])
_WKG = np.array([
    0.032558162307964727478818972459390,
    0.075039674810919952767043140916190,
    0.109387158802297641899210590325805,
    0.134709217311473325928054001771707,
    0.147739104901338491374841515972068,
])
_WKK = np.array([
    0.011694638867371874278064396062192,
    0.054755896574351996031381300244580,
    0.093125454583697605535065465083366,
    0.123491976262065851077958109831074,
    0.142775938577060080797094273138717,
])
_WK0 = 0.149445554002916905664936468389821

GK_NODES = np.concatenate([-_XG, _XG, -_XK, _XK, [0.0]])
GK_KRONROD_WEIGHTS = np.concatenate([_WKG, _WKG, _WKK, _WKK, [_WK0]])
GK_GAUSS_WEIGHTS = np.concatenate([_WG, _WG, np.zeros(11)])


def _gk21(g: Callable, a: np.ndarray, b: np.ndarray):
    c = 0.5 * (a + b)
    h = 0.5 * (b - a)
    x = c[:, None] + h[:, None] * GK_NODES[None, :]
    fx = np.asarray(g(x.ravel()), dtype=float).reshape(x.shape)
    if not np.all(np.isfinite(fx)):
        raise QuadratureError("integrand returned a non-finite value", math.nan, math.inf)
    k = fx @ GK_KRONROD_WEIGHTS
    gs = fx @ GK_GAUSS_WEIGHTS
    resabs = np.abs(fx) @ GK_KRONROD_WEIGHTS
    resasc = np.abs(fx - 0.5 * k[:, None]) @ GK_KRONROD_WEIGHTS
    err = np.abs(k - gs)
    with np.errstate(divide="ignore", invalid="ignore"):
        scaled = resasc * np.minimum(1.0, (200.0 * err / resasc) ** 1.5)
    err = np.where((resasc > 0) & (err > 0), scaled, err)
    err = np.maximum(err, 50.0 * _EPS * resabs)
    return k * h, err * np.abs(h)


def _segment_map(f, lo, hi, lo_exp, hi_exp, scale):
    """Map one segment onto u in [0, 1]; return g(u) = f(x(u)) x'(u)."""
    if math.isinf(hi):
        def g(u):
            x = lo + scale * u / (1.0 - u)
            return f(x) * (scale / (1.0 - u) ** 2)
        return g
    w = hi - lo
    if lo_exp is not None:
        m = 1.0 / (1.0 + lo_exp)

        def g(u):
            um = u ** (m - 1.0)
            return f(lo + w * u * um) * (w * m * um)
        return g
    if hi_exp is not None:
        m = 1.0 / (1.0 + hi_exp)

        def g(u):
            v = 1.0 - u
            vm = v ** (m - 1.0)
            return f(hi - w * v * vm) * (w * m * vm)
        return g
    return lambda u: f(lo + w * u) * w


def quad_adaptive(
    f: Callable[[np.ndarray], np.ndarray],
    lo: float,
    hi: float,
    spec: QuadSpec | None = None,
    *,
    points: Sequence[float] = (),
    lo_exponent: float | None = None,
    hi_exponent: float | None = None,
    scale: float = 1.0,
) -> float:
    """Integrate a vectorised ``f`` over ``[lo, hi]``; ``hi`` may be ``inf``.

    ``lo_exponent``/``hi_exponent`` declare integrand behaviour
    ``|x - endpoint|**p`` with ``p > -1`` and trigger a power substitution
    that removes the endpoint singularity; the map assumes the integrand
    vanishes like that power, so a nonzero endpoint value plus a root term
    needs its own substitution. ``points`` are interior
    breakpoints. ``scale`` sets the length scale of the map used on an
    infinite tail.
    """
    spec = spec or DEFAULT_QUAD
    lo = float(lo)
    hi = float(hi)
    if math.isinf(lo) or math.isnan(lo) or math.isnan(hi):
        raise ValueError("lower limit must be finite")
    if hi < lo:
        return -quad_adaptive(f, hi, lo, spec, points=points, lo_exponent=hi_exponent,
                              hi_exponent=lo_exponent, scale=scale)
    if hi == lo:
        return 0.0
    for p in (lo_exponent, hi_exponent):
        if p is not None and not p > -1.0:
            raise ValueError("endpoint exponents must exceed -1")
    cuts = sorted({float(p) for p in points if lo < p < hi})
    if math.isinf(hi) and (lo_exponent is not None) and not cuts:
        cuts = [lo + scale]
    if (lo_exponent is not None) and (hi_exponent is not None) and not cuts:
        cuts = [0.5 * (lo + hi)]
    edges = [lo, *cuts, hi]
    segs = []
    for i in range(len(edges) - 1):
        le = lo_exponent if i == 0 else None
        he = hi_exponent if i == len(edges) - 2 else None
        segs.append(_segment_map(f, edges[i], edges[i + 1], le, he, scale))

    def evaluate(a, b):
        vals = np.empty_like(a)
        errs = np.empty_like(a)
        seg = np.floor(a).astype(int)
        for s in np.unique(seg):
            m = seg == s
            vals[m], errs[m] = _gk21(segs[s], a[m] - s, b[m] - s)
        return vals, errs

    a = np.arange(len(segs), dtype=float)
    b = a + 1.0
    vals, errs = evaluate(a, b)
    splits = 0
    while True:
        total = float(vals.sum())
        err = float(errs.sum())
        tol = max(spec.abs_tol, spec.rel_tol * abs(total))
        if err <= tol:
            return total
        if splits >= spec.max_subdivisions:
            raise QuadratureError("subdivision budget exhausted", total, err)
        order = np.argsort(-errs)
        cum = np.cumsum(errs[order])
        take = int(np.searchsorted(cum, err - 0.5 * tol)) + 1
        take = min(take, len(order), spec.max_subdivisions - splits)
        idx = order[:take]
        splittable = (b[idx] - a[idx]) > 1e-13
        idx = idx[splittable]
        if idx.size == 0:
            raise QuadratureError("intervals too small to subdivide", total, err)
        mid = 0.5 * (a[idx] + b[idx])
        na = np.concatenate([a[idx], mid])
        nb = np.concatenate([mid, b[idx]])
        nv, ne = evaluate(na, nb)
        keep = np.ones(a.size, dtype=bool)
        keep[idx] = False
        a = np.concatenate([a[keep], na])
        b = np.concatenate([b[keep], nb])
        vals = np.concatenate([vals[keep], nv])
        errs = np.concatenate([errs[keep], ne])
        splits += idx.size


# --------------------------------------------------------------------------
# Gamma-type helpers

_ZETA = sc.zeta(np.arange(2, 40), 1.0)


def lgamma1p(a: float) -> float:
    """``ln Gamma(1 + a)``, accurate for small ``|a|``."""
    if abs(a) < 0.2:
        k = np.arange(2, 40)
        return float(-EULER_GAMMA * a + np.sum((-1.0) ** k * _ZETA * a ** k / k))
    return float(sc.gammaln(1.0 + a))


def _gm1_over_a(a: float) -> float:
    """``(Gamma(1 + a) - 1) / a`` with its limit ``-gamma_E`` at 0."""
    if a == 0.0:
        return -EULER_GAMMA
    return math.expm1(lgamma1p(a)) / a


def _stirling_corr(z: float) -> float:
    z2 = z * z
    return (1.0 / 12.0 - (1.0 / 360.0 - (1.0 / 1260.0 - 1.0 / (1680.0 * z2)) / z2) / z2) / z


def log_gamma_ratio(a: float, b: float) -> float:
    """``ln Gamma(a) - ln Gamma(b)`` without cancellation for large arguments."""
    if min(a, b) > 30.0:
        d = a - b
        return ((b - 0.5) * math.log1p(d / b) + d * (math.log(a) - 1.0)
                + _stirling_corr(a) - _stirling_corr(b))
    return float(sc.gammaln(a) - sc.gammaln(b))


def _cf_factor(a: float, x: np.ndarray) -> np.ndarray:
    """Continued fraction h with Gamma+(a, x) = h x^a e^-x (modified Lentz)."""
    b = x + 1.0 - a
    c = np.full_like(x, 1.0 / _TINY)
    d = 1.0 / b
    h = d.copy()
    for i in range(1, _MAXIT):
        an = -i * (i - a)
        b = b + 2.0
        d = an * d + b
        d = np.where(np.abs(d) < _TINY, _TINY, d)
        c = b + an / c
        c = np.where(np.abs(c) < _TINY, _TINY, c)
        d = 1.0 / d
        delta = d * c
        h = h * delta
        if np.all(np.abs(delta - 1.0) <= _EPS):
            return h
    raise ConvergenceError(f"incomplete gamma continued fraction, a={a}")


def _lower_series(a: float, x: np.ndarray) -> np.ndarray:
    """S with gamma(a, x) = S x^a e^-x, valid for a > 0."""
    ap = a
    term = np.full_like(x, 1.0 / a)
    total = term.copy()
    for _ in range(_MAXIT):
        ap += 1.0
        term = term * x / ap
        total = total + term
        if np.all(np.abs(term) <= np.abs(total) * _EPS):
            return total
    raise ConvergenceError(f"incomplete gamma series, a={a}")


def _upper_small_a(a: float, x: np.ndarray) -> np.ndarray:
    """Gamma+(a, x) for -1 < a < 1 and 0 < x < 1."""
    lx = np.log(x)
    if a == 0.0:
        pw = lx
    else:
        pw = np.expm1(a * lx) / a
    s = np.zeros_like(x)
    term = np.ones_like(x)
    for k in range(1, 200):
        term = term * (-x) / k
        inc = term / (a + k)
        s = s + inc
        if np.all(np.abs(inc) <= _EPS * np.abs(s)):
            break
    return _gm1_over_a(a) - pw - np.exp(a * lx) * s


def _upper_linear(a: float, x: np.ndarray) -> np.ndarray:
    out = np.empty_like(x)
    cf = x >= (1.0 if a < 1.0 else a + 1.0)
    if np.any(cf):
        xc = x[cf]
        out[cf] = _cf_factor(a, xc) * np.exp(a * np.log(xc) - xc)
    rest = ~cf
    if not np.any(rest):
        return out
    xr = x[rest]
    if a >= 1.0:
        p = _lower_series(a, xr) * np.exp(a * np.log(xr) - xr - sc.gammaln(a))
        out[rest] = sc.gamma(a) * (1.0 - p)
    elif a >= 0.0:
        out[rest] = _upper_small_a(a, xr)
    else:
        # start from a0 in [-1/2, 1/2]: a + ceil(-a) can round to 1 for tiny |a|,
        # and the small-order series cancels badly as a0 -> -1
        m = round(-a)
        a0 = a + m
        val = _upper_small_a(a0, xr)
        lx = np.log(xr)
        s = a0
        for _ in range(m):
            s -= 1.0
            val = (val - np.exp(s * lx - xr)) / s
        out[rest] = val
    return out


def _as_array(x):
    arr = np.asarray(x, dtype=float)
    return arr, arr.ndim == 0


def upper_inc_gamma(a: float, x):
    """Upper incomplete gamma ``int_x^inf t^(a-1) e^-t dt`` for real ``a``, ``x > 0``."""
    a = float(a)
    arr, scalar = _as_array(x)
    flat = np.atleast_1d(arr).ravel()
    if np.any(~(flat > 0.0)):
        raise ValueError("upper_inc_gamma requires x > 0")
    if a > 150.0:
        out = np.exp(_log_upper_large(a, flat))
    else:
        out = _upper_linear(a, flat)
    out = out.reshape(np.atleast_1d(arr).shape)
    return float(out[0]) if scalar else out.reshape(arr.shape)


def _log_upper_large(a: float, x: np.ndarray) -> np.ndarray:
    out = np.empty_like(x)
    cf = x >= a + 1.0
    if np.any(cf):
        xc = x[cf]
        out[cf] = np.log(_cf_factor(a, xc)) + a * np.log(xc) - xc
    rest = ~cf
    if np.any(rest):
        xr = x[rest]
        p = _lower_series(a, xr) * np.exp(a * np.log(xr) - xr - sc.gammaln(a))
        out[rest] = sc.gammaln(a) + np.log1p(-p)
    return out


def log_upper_inc_gamma(a: float, x):
    """``ln Gamma+(a, x)``; usable where the value itself overflows."""
    a = float(a)
    arr, scalar = _as_array(x)
    flat = np.atleast_1d(arr).ravel()
    if np.any(~(flat > 0.0)):
        raise ValueError("log_upper_inc_gamma requires x > 0")
    if a > 150.0:
        out = _log_upper_large(a, flat)
    else:
        out = np.empty_like(flat)
        cf = flat >= (1.0 if a < 1.0 else a + 1.0)
        xc = flat[cf]
        out[cf] = np.log(_cf_factor(a, xc)) + a * np.log(xc) - xc
        out[~cf] = np.log(_upper_linear(a, flat[~cf]))
    return float(out[0]) if scalar else out.reshape(arr.shape)


def log_reg_upper_inc_gamma(a: float, x: float) -> float:
    """``ln(Gamma+(a, x) / Gamma(a))`` for ``a > 0``."""
    if a <= 0:
        raise ValueError("regularised form requires a > 0")
    xa = np.array([float(x)])
    if xa[0] >= a + 1.0:
        return float(np.log(_cf_factor(a, xa))[0] + a * math.log(x) - x - sc.gammaln(a))
    p = _lower_series(a, xa) * np.exp(a * np.log(xa) - xa - sc.gammaln(a))
    return float(np.log1p(-p)[0])


def upper_inc_gamma_ratio(a1: float, a2: float, x: float) -> float:
    """``Gamma+(a1, x) / Gamma+(a2, x)`` stable for very large orders."""
    if min(a1, a2) > 30.0:
        return math.exp(log_gamma_ratio(a1, a2)
                        + log_reg_upper_inc_gamma(a1, x) - log_reg_upper_inc_gamma(a2, x))
    return math.exp(log_upper_inc_gamma(a1, x) - log_upper_inc_gamma(a2, x))


def gamma_star(q: float, x):
    """``Gamma+(q + 1, x) + Gamma+(q, x)``."""
    return upper_inc_gamma(q + 1.0, x) + upper_inc_gamma(q, x)


# --------------------------------------------------------------------------
# Beta family

def beta(a: float, b: float) -> float:
    if not (a > 0 and b > 0):
        raise ValueError(f"beta requires a, b > 0, got a={a}, b={b}")
    return float(sc.beta(a, b))


def _beta_head(x: np.ndarray, a: float, b: float) -> np.ndarray:
    """B-(x; a, b) for 0 <= x <= 1/2 by the hypergeometric series."""
    coef = np.ones_like(x)
    total = np.full_like(x, 1.0 / a)
    prev = np.full_like(x, np.inf)
    for j in range(_MAXIT):
        coef = coef * (j + 1.0 - b) / (j + 1.0) * x
        term = coef / (a + j + 1.0)
        total = total + term
        mag = np.abs(term)
        if np.all((mag <= _EPS * 0.1 * np.abs(total)) & (mag <= prev)):
            break
        prev = mag
    else:
        raise ConvergenceError("incomplete beta series")
    with np.errstate(divide="ignore"):
        return np.where(x > 0, np.exp(a * np.log(np.where(x > 0, x, 1.0))) * total, 0.0)


def _beta_tail(w: np.ndarray, a: float, b: float, p: float = 0.0) -> np.ndarray:
    """``w^p`` times the integral of u^(a-1)(1-u)^(b-1) over [1/2, 1-w]."""
    lw = np.log(2.0 * w)
    ln_w = np.log(w)
    wp = np.exp(p * ln_w)
    total = np.zeros_like(w)
    coef = 1.0
    for j in range(_MAXIT):
        s = b + j
        if s == 0.0:
            piece = -lw * wp
        else:
            big = s * lw > 50.0
            safe = np.where(big, 0.0, s * lw)
            piece = np.where(big, (0.5 ** s * wp - np.exp((p + s) * ln_w)) / s,
                             -(0.5 ** s) * wp * np.expm1(safe) / s)
        term = coef * piece
        total = total + term
        coef = coef * (j + 1.0 - a) / (j + 1.0)
        if coef == 0.0:
            return total
        if s > 0 and np.all(np.abs(term) <= 0.1 * _EPS * np.abs(total)):
            return total
    raise ConvergenceError("incomplete beta reflection series")


def lower_inc_beta_1m(w, a: float, b: float, scale_power: float = 0.0):
    """``w^scale_power * B-(1 - w; a, b)`` taking the distance ``w`` from 1 directly.

    The prefactor is applied inside the reflection sum, so the product stays
    finite as ``w -> 0`` whenever ``scale_power + b > 0``.
    """
    if not a > 0:
        raise ValueError("lower_inc_beta requires a > 0")
    arr, scalar = _as_array(w)
    flat = np.atleast_1d(arr).ravel()
    if np.any((flat < 0.0) | (flat > 1.0)) or np.any(np.isnan(flat)):
        raise ValueError("argument must lie in [0, 1]")
    if b <= 0 and scale_power + b <= 0 and np.any(flat == 0.0):
        raise ValueError("B-(1; a, b) diverges for b <= 0")
    out = np.empty_like(flat)
    head = flat >= 0.5
    if np.any(head):
        out[head] = _beta_head(1.0 - flat[head], a, b) * flat[head] ** scale_power
    zero = flat == 0.0
    tail = ~head & ~zero
    if np.any(tail):
        half = float(_beta_head(np.array([0.5]), a, b)[0])
        wt = flat[tail]
        out[tail] = half * wt ** scale_power + _beta_tail(wt, a, b, scale_power)
    if np.any(zero):
        if scale_power > 0.0:
            out[zero] = 0.0
        elif scale_power == 0.0:
            out[zero] = beta(a, b)
        else:
            out[zero] = math.inf
    return float(out[0]) if scalar else out.reshape(arr.shape)


def lower_inc_beta(x, a: float, b: float):
    """Lower incomplete beta ``int_0^x u^(a-1) (1-u)^(b-1) du``; ``b`` may be <= 0 if ``x < 1``."""
    arr, scalar = _as_array(x)
    if np.any((arr < 0.0) | (arr > 1.0)) or np.any(np.isnan(arr)):
        raise ValueError("x must lie in [0, 1]")
    flat = np.atleast_1d(arr).ravel()
    out = np.empty_like(flat)
    low = flat <= 0.5
    if np.any(low):
        if not a > 0:
            raise ValueError("lower_inc_beta requires a > 0")
        out[low] = _beta_head(flat[low], a, b)
    if np.any(~low):
        out[~low] = lower_inc_beta_1m(1.0 - flat[~low], a, b)
    return float(out[0]) if scalar else out.reshape(arr.shape)


# --------------------------------------------------------------------------
# Gamma-weighted integrals: U and Meijer G

TIGHT_QUAD = QuadSpec(abs_tol=1e-300, rel_tol=1e-13, max_subdivisions=4000)


def gamma_weighted_integral(h: Callable, p: float, x0: float, spec: QuadSpec | None = None,
                            *, lo_exponent: float | None = None):
    """Return ``(value, log_scale)`` with ``int_x0^inf t^(p-1) e^-t h(t) dt = value * e^log_scale``.

    ``h`` must be vectorised and non-negative; ``x0 > 0``.
    """
    spec = spec or DEFAULT_QUAD
    if not x0 > 0:
        raise ValueError("lower limit must be positive")
    mode = max(p - 1.0, x0)
    log_scale = (p - 1.0) * math.log(mode) - mode
    width = math.sqrt(max(p - 1.0, 1.0))

    def f(t):
        # exponent relative to the mode, free of the O(p log p) cancellation
        u = (t - mode) / mode
        w = np.exp((p - 1.0) * (np.log1p(u) - u) + (p - 1.0 - mode) * u)
        out = np.zeros_like(t)
        live = w > 0.0
        out[live] = w[live] * h(t[live])
        return out

    if mode > x0:
        lower = quad_adaptive(f, x0, mode, spec, lo_exponent=lo_exponent)
        upper = quad_adaptive(f, mode, math.inf, spec, scale=width)
        return lower + upper, log_scale
    return quad_adaptive(f, x0, math.inf, spec, lo_exponent=lo_exponent, scale=width), log_scale


def log_tricomi_u(a: float, b: float, z: float, spec: QuadSpec | None = None) -> float:
    """``ln U(a, b, z)`` for ``a > 0``, ``z > 0``."""
    if not (a > 0 and z > 0):
        raise ValueError("tricomi_u requires a > 0 and z > 0")
    spec = spec or TIGHT_QUAD
    # s = z (1 + t): U = e^z z^(1-b) / Gamma(a) * int_z^inf s^(b-2) e^-s (1 - z/s)^(a-1) ds
    if a == 1.0:
        h = np.ones_like
    else:
        def h(s):
            return np.exp((a - 1.0) * np.log1p(-z / s))
    val, ls = gamma_weighted_integral(h, b - 1.0, z, spec,
                                      lo_exponent=(a - 1.0) if a < 1.0 else None)
    return z + (1.0 - b) * math.log(z) - float(sc.gammaln(a)) + ls + math.log(val)


def tricomi_u(a: float, b: float, z: float, spec: QuadSpec | None = None) -> float:
    """Tricomi confluent hypergeometric ``U(a, b, z)``."""
    return math.exp(log_tricomi_u(a, b, z, spec))


def log_meijer_g_3023(alpha: float, q: float, xi: float, spec: QuadSpec | None = None,
                      route: str = "beta") -> float:
    """``ln G^{3,0}_{2,3}(xi | 1, 3-2alpha ; 3-4alpha, q, 0)``.

    ``route="beta"`` integrates the incomplete beta against a gamma weight;
    ``route="gamma"`` integrates the incomplete gamma against a beta weight.
    """
    if not (alpha > 0.5 and xi > 0):
        raise ValueError("meijer_g_3023 requires alpha > 1/2 and xi > 0")
    spec = spec or TIGHT_QUAD
    a2 = 2.0 * alpha
    c = 3.0 - 4.0 * alpha
    lg = float(sc.gammaln(a2))
    if route == "beta":
        def h(t):
            return lower_inc_beta_1m(xi / t, a2, c)
        val, ls = gamma_weighted_integral(h, q, xi, spec)
        return ls + math.log(val) - lg
    if route == "gamma":
        def f(s):
            return np.exp(log_upper_inc_gamma(q, xi / s) + (c - 1.0) * np.log(s)
                          + (a2 - 1.0) * np.log1p(-s))
        hi_exp = a2 - 1.0 if a2 < 2.0 else None
        val = quad_adaptive(f, 0.0, 1.0, spec, hi_exponent=hi_exp)
        return math.log(val) - lg
    raise ValueError(f"unknown route {route!r}")


def meijer_g_3023(alpha: float, q: float, xi: float, spec: QuadSpec | None = None,
                  route: str = "beta") -> float:
    return math.exp(log_meijer_g_3023(alpha, q, xi, spec, route))


# --------------------------------------------------------------------------
# Dilogarithm

def _li2_series(z: np.ndarray) -> np.ndarray:
    total = np.zeros_like(z)
    pw = np.ones_like(z)
    for t in range(1, 200):
        pw = pw * z
        inc = pw / (t * t)
        total = total + inc
        if np.all(inc <= _EPS * 0.1 * total):
            break
    return total


def dilog(z):
    """``Li2(z) = sum_t z^t / t^2`` on ``[0, 1]``."""
    arr, scalar = _as_array(z)
    if np.any((arr < 0.0) | (arr > 1.0)) or np.any(np.isnan(arr)):
        raise ValueError("dilog is implemented on [0, 1]")
    flat = np.atleast_1d(arr).ravel()
    out = np.empty_like(flat)
    low = flat <= 0.5
    out[low] = _li2_series(flat[low])
    hi = ~low & (flat < 1.0)
    if np.any(hi):
        w = 1.0 - flat[hi]
        out[hi] = math.pi ** 2 / 6.0 - np.log(flat[hi]) * np.log(w) - _li2_series(w)
    out[flat == 1.0] = math.pi ** 2 / 6.0
    return float(out[0]) if scalar else out.reshape(arr.shape)
