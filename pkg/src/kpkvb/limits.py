"""Limiting clustering and degree quantities of the hyperbolic random graph.

Closed forms (``p_y``, ``gamma_k``, ``gamma_cc``, ``degree_pmf``) sit next to
quadrature oracles (``p_y_oracle``, ``gamma_k_oracle``, ``gamma_cc_oracle``)
that integrate the defining expressions directly and share no algebra with
the closed forms beyond the triangle probability.

Heights ``y`` live in the limit model; ``z = exp(-y/2)`` is used wherever
it simplifies an integrand.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np
from scipy import special as sc

from . import geom
from .params import ModelParams, check_alpha, check_nu, eta_of, xi_of
from .specfun import (
    DEFAULT_QUAD,
    TIGHT_QUAD,
    QuadSpec,
    beta,
    dilog,
    gamma_star,
    gamma_weighted_integral,
    log_meijer_g_3023,
    log_tricomi_u,
    log_upper_inc_gamma,
    lower_inc_beta,
    lower_inc_beta_1m,
    quad_adaptive,
    upper_inc_gamma,
    upper_inc_gamma_ratio,
)

ALPHA_ONE_BAND = 1e-6
K_MAX = 10**6
# above this k the U and Gamma+ terms of gamma(k) are combined into one integral
K_DIRECT = 100
PY_ORACLE_QUAD = QuadSpec(abs_tol=1e-11, rel_tol=1e-11, max_subdivisions=4000)
ORACLE_QUAD = QuadSpec(abs_tol=1e-15, rel_tol=1e-12, max_subdivisions=4000)
TAIL_MASS = 1e-14
# averages of slowly varying functions against a sharp gamma weight hit a 1e-12 floor
WEIGHTED_QUAD = QuadSpec(abs_tol=1e-300, rel_tol=1e-11, max_subdivisions=4000)


@dataclass(frozen=True)
class LimitContext:
    alpha: float
    nu: float
    quad: QuadSpec = DEFAULT_QUAD
    xi: float = field(init=False)
    eta: float = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "alpha", check_alpha(self.alpha))
        object.__setattr__(self, "nu", check_nu(self.nu))
        object.__setattr__(self, "xi", xi_of(self.alpha, self.nu))
        object.__setattr__(self, "eta", eta_of(self.nu))

    @classmethod
    def from_params(cls, params: ModelParams, quad: QuadSpec = DEFAULT_QUAD) -> "LimitContext":
        return cls(params.alpha, params.nu, quad)

    @property
    def alpha_is_one(self) -> bool:
        return abs(self.alpha - 1.0) < ALPHA_ONE_BAND


@dataclass(frozen=True)
class AsymptoticRegime:
    regime: str
    c_alpha_nu: float
    scale: str

    def s(self, k: float) -> float:
        if self.regime == "subcritical":
            return k ** self.exponent
        if self.regime == "critical":
            return math.log(k) / k
        return 1.0 / k

    exponent: float = -1.0


def _out(v):
    return float(v) if np.ndim(v) == 0 else v


# --------------------------------------------------------------------------
# Degrees

def mu_ball(ctx: LimitContext, y):
    """Expected degree of a point at height ``y`` in the limit model."""
    return _out(ctx.xi * np.exp(0.5 * np.asarray(y, dtype=float)))


def log_rho(ctx: LimitContext, y, k: int):
    mu = ctx.xi * np.exp(0.5 * np.asarray(y, dtype=float))
    return _out(k * np.log(mu) - mu - sc.gammaln(k + 1.0))


def rho(ctx: LimitContext, y, k: int):
    """Poisson probability of degree ``k`` at height ``y``."""
    if k < 0:
        raise ValueError("k must be >= 0")
    return _out(np.exp(log_rho(ctx, y, k)))


def log_degree_pmf(ctx: LimitContext, k: int) -> float:
    a = ctx.alpha
    return (math.log(2.0 * a) + 2.0 * a * math.log(ctx.xi)
            + log_upper_inc_gamma(k - 2.0 * a, ctx.xi) - float(sc.gammaln(k + 1.0)))


def degree_pmf(ctx: LimitContext, k: int) -> float:
    """Limiting probability that a vertex has degree ``k``."""
    if k < 0:
        raise ValueError("k must be >= 0")
    return math.exp(log_degree_pmf(ctx, k))


def degree_pmf_oracle(ctx: LimitContext, k: int, spec: QuadSpec = ORACLE_QUAD) -> float:
    """``int rho(y, k) alpha e^{-alpha y} dy`` by quadrature."""
    a = ctx.alpha

    def f(y):
        return np.exp(log_rho(ctx, y, k) + math.log(a) - a * y)

    lo, hi = height_window(ctx, k)
    mode = 2.0 * math.log(max(k, 1) / ctx.xi)
    return quad_adaptive(f, lo, hi, spec, points=[mode] if lo < mode < hi else ())


# --------------------------------------------------------------------------
# Triangle probability

def _g(a, b, c):
    return 0.25 * (c / b + b / c + a * a / (b * c) + 2.0 - 2.0 * a / b - 2.0 * a / c)


def triangle_prob_z(z0, z1, z2):
    """Adjacency probability of two neighbours of a point, in ``z = e^{-y/2}``."""
    z0, z1, z2 = np.broadcast_arrays(*(np.asarray(v, dtype=float) for v in (z0, z1, z2)))
    hi = np.maximum(z1, z2)
    lo = np.minimum(z1, z2)
    with np.errstate(divide="ignore", invalid="ignore"):
        top = np.where(z0 >= hi + lo, 1.0, 1.0 - _g(z0, hi, lo))
        side = np.where(hi >= z0 + lo, z0 / hi, (z0 / hi) * (1.0 - _g(hi, z0, lo)))
    out = np.where(z0 >= hi, top, side)
    return _out(np.clip(out, 0.0, 1.0))


def triangle_prob(y0, y1, y2):
    """Probability that two neighbours at heights ``y1, y2`` of a point at ``y0`` are adjacent."""
    y0, y1, y2 = (np.asarray(v, dtype=float) for v in (y0, y1, y2))
    if np.any(y0 < 0) or np.any(y1 < 0) or np.any(y2 < 0):
        raise ValueError("heights must be >= 0")
    return triangle_prob_z(np.exp(-0.5 * y0), np.exp(-0.5 * y1), np.exp(-0.5 * y2))


# --------------------------------------------------------------------------
# P(y)

@lru_cache(maxsize=256)
def _beta_half(alpha: float) -> float:
    return lower_inc_beta(0.5, 1.0 + 2.0 * alpha, 2.0 * alpha - 2.0)


def _p_general(a: float, z: np.ndarray) -> np.ndarray:
    am = a - 1.0
    h = a - 0.5
    zp = z ** (4.0 * a - 2.0)
    with np.errstate(divide="ignore"):
        out = np.expm1(2.0 * a * np.log1p(-z)) / (8.0 * am * a)
    out = out + h * z / am - h * h * z * z / (4.0 * am * am)
    out = out + zp * (2.0 ** (-4.0 * a - 1.0) * (3.0 * a - 1.0) / (a * am * am)
                      + h * _beta_half(a) / (2.0 * am * a))
    out = out - lower_inc_beta_1m(z, 2.0 * a, 3.0 - 4.0 * a, 4.0 * a - 2.0) / (4.0 * am)
    return out


def _p_alpha_one(z: np.ndarray) -> np.ndarray:
    return (2.25 * z + 0.25 * (1.0 - 3.0 * z) * sc.xlog1py(1.0 - z, -z)
            - (7.0 + math.pi ** 2) / 8.0 * z * z + 0.5 * z * z * dilog(z))


def p_of_z(ctx: LimitContext, z):
    z = np.asarray(z, dtype=float)
    flat = np.atleast_1d(z).ravel()
    vals = np.zeros_like(flat)
    # P vanishes at infinite height; the beta term is singular there when alpha = 3/4
    live = flat > 0.0
    f = flat[live]
    vals[live] = _p_alpha_one(f) if ctx.alpha_is_one else _p_general(ctx.alpha, f)
    vals = np.clip(vals, 0.0, 1.0).reshape(np.atleast_1d(z).shape)
    return float(vals.ravel()[0]) if z.ndim == 0 else vals.reshape(z.shape)


def p_y(ctx: LimitContext, y):
    """Probability that two random neighbours of a point at height ``y`` are adjacent."""
    y = np.asarray(y, dtype=float)
    if np.any(y < 0):
        raise ValueError("y must be >= 0")
    return p_of_z(ctx, np.exp(-0.5 * y))


def p_y_oracle(ctx: LimitContext, y: float, spec: QuadSpec = PY_ORACLE_QUAD) -> float:
    """Double quadrature of the triangle probability over the two neighbour heights.

    Neighbour heights are independent Exp(alpha - 1/2). The integral is taken
    in ``t = e^{-(alpha-1/2) y}`` (uniform weight) when alpha < 1 and in
    ``z = e^{-y/2}`` (weight ``(2alpha-1) z^{2alpha-2}``) otherwise, so the
    integrand is bounded and smooth between breakpoints.
    """
    if y < 0:
        raise ValueError("y must be >= 0")
    b = ctx.alpha - 0.5
    z0 = math.exp(-0.5 * y)
    if ctx.alpha < 1.0:
        def to_z(s):
            return s ** (0.5 / b)

        def weight(s):
            return np.ones_like(s)

        def from_z(z):
            return z ** (2.0 * b)
    else:
        def to_z(s):
            return s

        def weight(s):
            return 2.0 * b * s ** (2.0 * b - 1.0)

        def from_z(z):
            return z

    def breaks(zs):
        return [from_z(z) for z in zs if 0.0 < z < 1.0]

    def inner(s1):
        z1 = float(to_z(s1))
        pts = breaks([z1, z0, abs(z0 - z1), z0 + z1])

        def f(s2):
            return triangle_prob_z(z0, z1, to_z(s2)) * weight(s2)

        return quad_adaptive(f, 0.0, 1.0, spec, points=pts)

    def outer(s1):
        vals = np.array([inner(s) for s in np.atleast_1d(s1)])
        return vals * weight(s1)

    pts = breaks([z0, 0.5 * z0, 2.0 * z0, 1.0 - z0])
    return min(max(quad_adaptive(outer, 0.0, 1.0, spec, points=pts), 0.0), 1.0)


# --------------------------------------------------------------------------
# gamma(k) and gamma

def _k_shift_terms(a: float, xi: float, k: int) -> float:
    """The Gamma+ ratio terms of the gamma(k) bracket, normalised by Gamma+(k - 2a, xi)."""
    h = a - 0.5
    am = a - 1.0
    a0 = k - 2.0 * a
    r1 = upper_inc_gamma_ratio(a0 - 1.0, a0, xi)
    r2 = upper_inc_gamma_ratio(a0 - 2.0, a0, xi)
    r4 = upper_inc_gamma_ratio(k - 6.0 * a + 2.0, a0, xi)
    t2 = -2.0 * a * h * h * xi * xi * r2 / am
    t3 = 8.0 * a * h * xi * r1
    t4 = 4.0 * xi ** (4.0 * a - 2.0) * r4 * (2.0 ** (-4.0 * a) * (3.0 * a - 1.0) / am
                                              + h * _beta_half(a))
    return t2 + t3 + t4


def _u_minus_one(a: float, xi: float, k: int) -> float:
    """``xi^(k-2a) Gamma(2a+1) e^-xi U(2a+1, 1+k-2a, xi) / Gamma+(k-2a, xi) - 1``."""
    a0 = k - 2.0 * a
    if k <= K_DIRECT:
        log_u = log_tricomi_u(2.0 * a + 1.0, 1.0 + a0, xi)
        log_t5 = (a0 * math.log(xi) + float(sc.gammaln(2.0 * a + 1.0)) - xi + log_u
                  - log_upper_inc_gamma(a0, xi))
        return math.expm1(log_t5)
    # same quantity as a single gamma-weighted average of (1 - xi/t)^(2a) - 1
    num, ls1 = gamma_weighted_integral(
        lambda t: -np.expm1(2.0 * a * np.log1p(-xi / t)), a0, xi, WEIGHTED_QUAD)
    den, ls2 = gamma_weighted_integral(np.ones_like, a0, xi, WEIGHTED_QUAD)
    return -num / den * math.exp(ls1 - ls2)


def _meijer_term(a: float, xi: float, k: int) -> float:
    """``xi^(4a-2) Gamma(2a+1) G(...) / Gamma+(k-2a, xi)``."""
    lg = log_meijer_g_3023(a, k + 2.0 - 6.0 * a, xi, TIGHT_QUAD if k <= K_DIRECT else WEIGHTED_QUAD)
    return math.exp((4.0 * a - 2.0) * math.log(xi) + float(sc.gammaln(2.0 * a + 1.0)) + lg
                    - log_upper_inc_gamma(k - 2.0 * a, xi))


def gamma_k_bracket(alpha: float, xi: float, k: int) -> float:
    """The closed-form clustering function for alpha != 1; defined for any k >= 0."""
    bracket = (_u_minus_one(alpha, xi, k) + _k_shift_terms(alpha, xi, k)
               - _meijer_term(alpha, xi, k))
    return bracket / (8.0 * alpha * (alpha - 1.0))


def _check_k(k: int, low: int = 2) -> int:
    if int(k) != k or k < low:
        raise ValueError(f"k must be an integer >= {low}")
    if k > K_MAX:
        raise ValueError(f"k is capped at {K_MAX}")
    return int(k)


def gamma_k(ctx: LimitContext, k: int) -> float:
    """Limiting clustering function: mean local clustering of degree-k vertices."""
    k = _check_k(k)
    if ctx.alpha_is_one:
        return _gamma_k_alpha_one(ctx.eta, k)
    return gamma_k_bracket(ctx.alpha, ctx.xi, k)


def _alpha_one_log_term(z):
    return 0.25 * (1.0 - 3.0 * z) * sc.xlog1py(1.0 - z, -z)


def _gamma_k_alpha_one(eta: float, k: int) -> float:
    """Clustering function at alpha = 1 via t = eta / z averages against t^(k-3) e^-t."""
    p = k - 2.0

    def logs(t):
        z = eta / t
        return (1.0 - 4.0 * z + 3.0 * z * z) * np.log1p(-z)

    def dilogs(t):
        z = eta / t
        return z * z * dilog(z)

    den, ls = gamma_weighted_integral(np.ones_like, p, eta, WEIGHTED_QUAD)
    el, ls_l = gamma_weighted_integral(logs, p, eta, WEIGHTED_QUAD)
    ed, ls_d = gamma_weighted_integral(dilogs, p, eta, WEIGHTED_QUAD)
    el *= math.exp(ls_l - ls) / den
    ed *= math.exp(ls_d - ls) / den
    r3 = upper_inc_gamma_ratio(k - 3.0, p, eta)
    r4 = upper_inc_gamma_ratio(k - 4.0, p, eta)
    return (2.25 * eta * r3 - eta * eta * (7.0 + math.pi ** 2) / 8.0 * r4
            + 0.25 * el + 0.5 * ed)


def j_integral(ctx: LimitContext) -> float:
    """``2 alpha int_0^1 P(z) z^(2alpha-1) dz``, the mean of P over the height law."""
    a = ctx.alpha
    if ctx.alpha_is_one:
        return (575.0 - 12.0 * math.pi ** 2) / 576.0
    am = a - 1.0
    poly = 2 + 4 * a + 13 * a ** 2 - 34 * a ** 3 - 12 * a ** 4 + 24 * a ** 5
    return (poly / (16.0 * am * am * a * (a + 1.0) * (2.0 * a + 1.0))
            + 2.0 ** (-1.0 - 4.0 * a) / (am * am)
            + (a - 0.5) * (beta(2.0 * a, 2.0 * a + 1.0) + _beta_half(a))
            / (2.0 * am * (3.0 * a - 1.0)))


def gamma_cc(ctx: LimitContext) -> float:
    """Limiting average local clustering coefficient."""
    if ctx.alpha_is_one:
        return _gamma_cc_alpha_one(ctx.eta)
    a = ctx.alpha
    xi = ctx.xi
    am = a - 1.0
    h = a - 0.5
    lx = math.log(xi)
    g21 = float(sc.gamma(2.0 * a + 1.0))
    s6 = gamma_star(-6.0 * a + 2.0, xi)
    out = j_integral(ctx)
    out += xi ** (2 * a) * gamma_star(-2.0 * a, xi) / (4.0 * am)
    out += xi ** (2 * a + 2) * a * h * h * gamma_star(-2.0 * a - 2.0, xi) / (2.0 * am * am)
    out -= xi ** (2 * a + 1) * a * (2.0 * a - 1.0) * gamma_star(-2.0 * a - 1.0, xi) / am
    out -= math.exp((6 * a - 2) * lx) * 2.0 ** (-4.0 * a) * (3.0 * a - 1.0) * s6 / (am * am)
    out -= math.exp((6 * a - 2) * lx) * h * _beta_half(a) * s6 / am
    # the degree-one U term carries xi^1 like every other degree-k term
    u = (math.exp(log_tricomi_u(2 * a + 1, 1 - 2 * a, xi) - xi)
         + math.exp(log_tricomi_u(2 * a + 1, 2 - 2 * a, xi) - xi + lx))
    out -= g21 * u / (4.0 * am)
    g = (math.exp(log_meijer_g_3023(a, -6.0 * a + 2.0, xi) + (6 * a - 2) * lx)
         + math.exp(log_meijer_g_3023(a, -6.0 * a + 3.0, xi) + (6 * a - 2) * lx))
    out += g21 * g / (4.0 * am)
    return out


def i_integral(ctx: LimitContext, k: int) -> float:
    """``pi(k) gamma(k)``: the P-weighted mass of degree-k heights, any k >= 0."""
    k = _check_k(k, 0)
    if ctx.alpha_is_one:
        return degree_pmf(ctx, k) * _gamma_k_alpha_one(ctx.eta, k)
    return degree_pmf(ctx, k) * gamma_k_bracket(ctx.alpha, ctx.xi, k)


def _gamma_cc_alpha_one(eta: float) -> float:
    def f(z):
        return (0.5 * (1.0 - 4.0 * z + 3.0 * z * z) * np.log1p(-z) * (z + eta)
                + dilog(z) * (z ** 3 + eta * z * z)) * np.exp(-eta / z)

    rest = quad_adaptive(f, 0.0, 1.0, TIGHT_QUAD)
    return ((575.0 - 12.0 * math.pi ** 2) / 576.0
            - 4.5 * eta ** 3 * gamma_star(-3.0, eta)
            + (7.0 + math.pi ** 2) * eta ** 4 * gamma_star(-4.0, eta) / 4.0
            - rest)


# --------------------------------------------------------------------------
# Oracles

def height_window(ctx: LimitContext, k: int, C: float = 10.0) -> tuple[float, float]:
    """Heights carrying all but ``TAIL_MASS`` of the degree-k Poisson weight.

    Starts from ``2 log((k +- C sqrt(k log k)) / xi)`` and widens each side
    until the discarded mass bound falls below ``TAIL_MASS``.
    """
    xi = ctx.xi
    spread = math.sqrt(k * math.log(k)) if k > 1 else 1.0

    def y_at(m):
        return 2.0 * math.log(m / xi) if m > xi else 0.0

    c_hi = C
    hi = y_at(k + c_hi * spread)
    while log_rho(ctx, hi, k) - ctx.alpha * hi > math.log(TAIL_MASS):
        c_hi *= 1.5
        hi = y_at(k + c_hi * spread)
    c_lo = C
    lo = y_at(k - c_lo * spread)
    while lo > 0.0 and log_rho(ctx, lo, k) > math.log(TAIL_MASS):
        c_lo *= 1.5
        lo = y_at(k - c_lo * spread)
    return lo, hi


def gamma_k_oracle(ctx: LimitContext, k: int, spec: QuadSpec = ORACLE_QUAD,
                   C: float = 10.0) -> float:
    """Ratio of two height quadratures: P-weighted and plain degree-k mass."""
    k = _check_k(k)
    a = ctx.alpha
    lo, hi = height_window(ctx, k, C)
    mode = 2.0 * math.log(k / ctx.xi)
    pts = [mode] if lo < mode < hi else ()

    def w(y):
        return np.exp(log_rho(ctx, y, k) + math.log(a) - a * y)

    num = quad_adaptive(lambda y: p_y(ctx, y) * w(y), lo, hi, spec, points=pts)
    den = quad_adaptive(w, lo, hi, spec, points=pts)
    return min(max(num / den, 0.0), 1.0)


def gamma_cc_oracle(ctx: LimitContext, spec: QuadSpec = ORACLE_QUAD) -> float:
    """Height quadrature of P over vertices of degree at least two."""
    a = ctx.alpha

    def f(y):
        with np.errstate(over="ignore"):
            mu = ctx.xi * np.exp(0.5 * y)
        return p_y(ctx, y) * sc.gammainc(2.0, mu) * a * np.exp(-a * y)

    return min(max(quad_adaptive(f, 0.0, math.inf, spec, scale=1.0 / a), 0.0), 1.0)


# --------------------------------------------------------------------------
# Asymptotics

def asymptotic_regime(ctx: LimitContext) -> AsymptoticRegime:
    """Leading behaviour ``gamma(k) ~ c * s(k)`` as k grows."""
    a = ctx.alpha
    if abs(a - 0.75) < 1e-12:
        return AsymptoticRegime("critical", 6.0 * ctx.nu / math.pi, "log(k)/k")
    if a > 0.75:
        return AsymptoticRegime("supercritical", 8.0 * a * ctx.nu / (math.pi * (4.0 * a - 3.0)), "1/k")
    am = a - 1.0
    bracket = ((3.0 * a - 1.0) / (2.0 ** (4.0 * a + 1.0) * a * am * am)
               + (a - 0.5) * _beta_half(a) / (2.0 * am * a)
               - beta(2.0 * a, 3.0 - 4.0 * a) / (4.0 * am))
    return AsymptoticRegime("subcritical", bracket * ctx.xi ** (4.0 * a - 2.0),
                            f"k^{2.0 - 4.0 * a:g}", exponent=2.0 - 4.0 * a)


def gamma_k_asymptote(ctx: LimitContext, k: float) -> float:
    reg = asymptotic_regime(ctx)
    return reg.c_alpha_nu * reg.s(k)


def p_y_asymptote(ctx: LimitContext, y: float) -> float:
    """Leading large-y behaviour of ``p_y``."""
    a = ctx.alpha
    z = math.exp(-0.5 * y)
    if abs(a - 0.75) < 1e-12:
        return 0.5 * y * z
    if a > 0.75:
        return (a - 0.5) / (a - 0.75) * z
    reg = asymptotic_regime(ctx)
    return reg.c_alpha_nu / ctx.xi ** (4.0 * a - 2.0) * z ** (4.0 * a - 2.0)


# --------------------------------------------------------------------------
# Finite-n expected degrees

def mu_box(ctx: LimitContext, n: int, y: float) -> float:
    """Expected degree of a point at height ``y`` in the finite box model."""
    a = ctx.alpha
    R = 2.0 * math.log(n / ctx.nu)
    if not 0.0 <= y <= R:
        raise ValueError("y must lie in [0, R]")
    mu = ctx.xi * math.exp(0.5 * y)
    if y <= 2.0 * math.log(math.pi / 2.0):
        return mu * -math.expm1(-(a - 0.5) * R)
    tail = math.exp(-(a - 0.5) * (R - y))
    # rows above the crossing height are fully connected; signs follow the integral
    phi_n = ((math.pi / 2.0) ** (1.0 - 2.0 * a) * tail
             - ctx.nu / ctx.xi * (math.pi / 2.0) ** (-2.0 * a) * tail
             + ctx.nu / ctx.xi * math.exp(-(a - 0.5) * R - 0.5 * y))
    return mu * (1.0 - phi_n)


def mu_po(ctx: LimitContext, n: int, y: float, spec: QuadSpec = DEFAULT_QUAD) -> float:
    """Expected degree of a point at height ``y`` in the Poissonized disk model."""
    a = ctx.alpha
    nu = ctx.nu
    R = 2.0 * math.log(n / nu)
    if not 0.0 <= y < R:
        raise ValueError("y must lie in [0, R)")

    full = 0.5 * math.pi * math.exp(0.5 * R)
    top = R - y

    def f(v):
        # y2 = top (1 - v^2): the half-width tends to ``full`` plus a square-root
        # term at y2 = top, and both are smooth in v
        y2 = top * (1.0 - v * v)
        inside = y + y2 < R
        width = np.full_like(y2, full)
        width[inside] = geom.phi(y, y2[inside], R)
        return 2.0 * width * (a * nu / math.pi) * np.exp(-a * y2) * 2.0 * top * v

    near = quad_adaptive(f, 0.0, 1.0, spec)
    far = n ** (1.0 - 2.0 * a) * nu ** (2.0 * a) * math.expm1(a * y)
    return near + far


# --------------------------------------------------------------------------
# Tabulation

def tabulate(ctx: LimitContext, kmin: int, kmax: int, with_oracle: bool = True):
    """Rows ``(k, gamma_k, gamma_k_oracle, degree_pmf)``."""
    rows = []
    for k in range(kmin, kmax + 1):
        rows.append((k, gamma_k(ctx, k), gamma_k_oracle(ctx, k) if with_oracle else math.nan,
                     degree_pmf(ctx, k)))
    return rows
