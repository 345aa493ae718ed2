import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from kpkvb import limits as lm
from kpkvb.gengraph import planted_degree, sample_neighbor_pair_adjacency, sample_typical_clustering
from kpkvb.params import ModelParams

ALPHAS = [0.6, 0.75, 0.8, 1.0, 1.5, 2.5]


def ctx(alpha, nu=1.0):
    return lm.LimitContext(alpha, nu)


# ---- degrees ---------------------------------------------------------------

def test_mu_ball_examples():
    c = ctx(0.8)
    assert lm.mu_ball(c, 0.0) == c.xi
    assert lm.mu_ball(c, 2.0 * math.log(7.0 / c.xi)) == pytest.approx(7.0, rel=1e-14)
    assert lm.mu_ball(c, 4.0) == pytest.approx(12.545, abs=1e-3)


def test_rho_is_a_pmf():
    c = ctx(0.8)
    assert lm.rho(c, 1.3, 0) == pytest.approx(math.exp(-lm.mu_ball(c, 1.3)), rel=1e-14)
    partial = np.cumsum([lm.rho(c, 1.3, k) for k in range(60)])
    assert np.all(partial <= 1.0 + 1e-14)
    assert partial[-1] == pytest.approx(1.0, abs=1e-14)


@pytest.mark.parametrize("alpha", [1.5, 2.5])
def test_degree_pmf_sums_to_one(alpha):
    c = ctx(alpha)
    total = math.fsum(lm.degree_pmf(c, k) for k in range(4000))
    assert total == pytest.approx(1.0, abs=1e-9)


@pytest.mark.parametrize("alpha", ALPHAS)
def test_degree_pmf_power_law_tail(alpha):
    c = ctx(alpha)
    k = 10**4
    ratio = lm.degree_pmf(c, k) * k ** (2 * alpha + 1) / (2 * alpha * c.xi ** (2 * alpha))
    assert ratio == pytest.approx(1.0, rel=1e-2)


@pytest.mark.parametrize("alpha", ALPHAS)
@pytest.mark.parametrize("k", [0, 1, 3, 17, 60])
def test_degree_pmf_vs_quadrature(alpha, k):
    c = ctx(alpha, 0.5)
    assert lm.degree_pmf(c, k) == pytest.approx(lm.degree_pmf_oracle(c, k), rel=1e-9)


def test_degree_pmf_golden(golden):
    assert lm.degree_pmf(ctx(0.8), 3) == pytest.approx(golden["degree_pmf(0.8,1,3)"], rel=1e-12)


# ---- triangle probability --------------------------------------------------

def test_triangle_prob_certain_case():
    # z0 >= z1 + z2 with z0 > z1 > z2
    assert lm.triangle_prob_z(0.9, 0.5, 0.3) == 1.0
    assert lm.triangle_prob(0.0, 2.0, 3.0) == 1.0


@given(st.floats(0, 12), st.floats(0, 12), st.floats(0, 12))
def test_triangle_prob_symmetric_and_bounded(y0, y1, y2):
    p = lm.triangle_prob(y0, y1, y2)
    assert 0.0 <= p <= 1.0
    assert p == pytest.approx(lm.triangle_prob(y0, y2, y1), abs=1e-13)


@given(st.floats(0, 12), st.floats(0, 12), st.floats(0, 12))
def test_triangle_prob_rescaling(y0, y1, y2):
    # both sides measure the same region of (x1, x2); only the normalising widths differ
    lhs = lm.triangle_prob(y0, y1, y2)
    rhs = math.exp(0.5 * (y1 - y0)) * lm.triangle_prob(y1, y0, y2)
    assert lhs == pytest.approx(rhs, rel=1e-10, abs=1e-13)


def test_triangle_prob_monte_carlo():
    y0, y1, y2 = 0.5, 1.0, 2.0
    rng = np.random.default_rng(20240501)
    w1, w2, w12 = (math.exp(0.5 * (a + b)) for a, b in [(y0, y1), (y0, y2), (y1, y2)])
    hits = 0
    total = 10**7
    for _ in range(10):
        x1 = rng.uniform(-w1, w1, total // 10)
        x2 = rng.uniform(-w2, w2, total // 10)
        hits += int(np.count_nonzero(np.abs(x1 - x2) <= w12))
    p_hat = hits / total
    se = math.sqrt(p_hat * (1 - p_hat) / total)
    assert abs(p_hat - lm.triangle_prob(y0, y1, y2)) <= 3 * se


# ---- P(y) ------------------------------------------------------------------

def test_p_y_golden(golden):
    assert lm.p_y(ctx(0.8), 2.0) == pytest.approx(golden["p_y(0.8,2)"], rel=1e-12)
    assert lm.p_y(ctx(2.5), 5.0) == pytest.approx(golden["p_y(2.5,5)"], rel=1e-12)


def test_p_y_vs_oracle_reference_point():
    c = ctx(0.8)
    assert lm.p_y(c, 2.0) == pytest.approx(lm.p_y_oracle(c, 2.0), abs=1e-8)


@pytest.mark.parametrize("y", [0.5, 2.0, 5.0])
def test_p_y_alpha_one_continuity(y):
    one = lm.p_y(ctx(1.0), y)
    for a in (1.0 - 1e-4, 1.0 + 1e-4):
        assert abs(lm.p_y(ctx(a), y) - one) <= 1e-3


def test_p_y_asymptote():
    c = ctx(1.2)
    assert math.exp(15.0) * lm.p_y(c, 30.0) == pytest.approx(0.7 / 0.45, rel=2e-2)
    assert lm.p_y(c, 30.0) == pytest.approx(lm.p_y_asymptote(c, 30.0), rel=2e-2)


@settings(max_examples=50, deadline=None)
@given(st.sampled_from(ALPHAS + [0.51, 0.7, 1.2, 4.0]), st.floats(0.0, 40.0))
def test_p_y_is_probability(alpha, y):
    assert 0.0 <= lm.p_y(ctx(alpha), y) <= 1.0


def test_p_y_oracle_vs_typical_point():
    alpha, y0 = 0.8, 2.0
    hits = sample_neighbor_pair_adjacency(alpha, y0, 10**6, seed=99)
    p_hat = hits.mean()
    se = math.sqrt(p_hat * (1 - p_hat) / hits.size)
    assert abs(p_hat - lm.p_y_oracle(ctx(alpha), y0)) <= 3 * se


# ---- gamma(k) --------------------------------------------------------------

def test_gamma_k_golden(golden):
    assert lm.gamma_k(ctx(0.8), 5) == pytest.approx(golden["gamma_k(0.8,1,5)"], rel=1e-10)
    assert lm.gamma_k(ctx(1.5, 0.5), 3) == pytest.approx(golden["gamma_k(1.5,0.5,3)"], rel=1e-10)


def test_gamma_k_vs_oracle_reference_point():
    c = ctx(0.8)
    assert lm.gamma_k(c, 5) == pytest.approx(lm.gamma_k_oracle(c, 5), rel=1e-7)


@pytest.mark.parametrize("alpha", ALPHAS)
def test_gamma_k_is_probability(alpha):
    c = ctx(alpha)
    for k in range(2, 51):
        assert 0.0 <= lm.gamma_k(c, k) <= 1.0


def test_gamma_k_rejects_small_k():
    with pytest.raises(ValueError):
        lm.gamma_k(ctx(0.8), 1)


def test_gamma_k_alpha_one_continuity():
    one = lm.gamma_k(ctx(1.0), 3)
    for a in (1.0 - 1e-4, 1.0 + 1e-4):
        assert abs(lm.gamma_k(ctx(a), 3) - one) <= 1e-3


def test_gamma_k_oracle_truncation_insensitive():
    c = ctx(0.8)
    for k in (2, 10, 25):
        assert lm.gamma_k_oracle(c, k, C=8.0) == pytest.approx(lm.gamma_k_oracle(c, k, C=12.0), abs=1e-9)


def test_gamma_k_supercritical_scaling():
    c = ctx(1.5)
    k = 10**6
    assert lm.gamma_k(c, k) * k / (8 * 1.5 / (math.pi * 3.0)) == pytest.approx(1.0, rel=2e-2)


def test_asymptotic_constants():
    assert lm.asymptotic_regime(ctx(0.75)).c_alpha_nu == pytest.approx(6 / math.pi)
    assert lm.asymptotic_regime(ctx(1.0)).c_alpha_nu == pytest.approx(8 / math.pi)


def test_subcritical_constant_vs_large_k():
    c = ctx(0.6)
    k = 10**5
    reg = lm.asymptotic_regime(c)
    assert reg.regime == "subcritical"
    assert k ** (4 * 0.6 - 2) * lm.gamma_k(c, k) == pytest.approx(reg.c_alpha_nu, rel=2e-2)


def test_gamma_k_vs_typical_point_monte_carlo():
    alpha, nu, k = 0.8, 1.0, 5
    samples = sample_typical_clustering(alpha, nu, k, 20_000, seed=5)
    se = samples.std(ddof=1) / math.sqrt(samples.size)
    assert abs(samples.mean() - lm.gamma_k(ctx(alpha, nu), k)) <= 3 * se


# ---- gamma -----------------------------------------------------------------

def test_gamma_cc_golden(golden):
    c = ctx(2.0, 0.5)
    assert lm.gamma_cc_oracle(c) == pytest.approx(golden["gamma_cc_oracle(2,0.5)"], rel=1e-10)
    assert lm.gamma_cc(c) == pytest.approx(golden["gamma_cc_oracle(2,0.5)"], rel=1e-10)


def test_gamma_cc_vs_oracle_reference_point():
    c = ctx(0.8)
    assert lm.gamma_cc(c) == pytest.approx(lm.gamma_cc_oracle(c), abs=1e-7)


@pytest.mark.parametrize("alpha", [1.5, 2.5])
def test_gamma_cc_is_degree_average_of_gamma_k(alpha):
    c = ctx(alpha)
    terms = []
    k = 2
    # pi(k) ~ k^{-2 alpha - 1}; stop once the power-law tail bound is below 1e-9
    while True:
        terms.append(lm.gamma_k(c, k) * lm.degree_pmf(c, k))
        tail = lm.degree_pmf(c, k) * k / (2 * alpha) * 2
        if tail < 1e-9 and k > 20:
            break
        k += 1
    assert math.fsum(terms) == pytest.approx(lm.gamma_cc(c), abs=1e-9)


def test_gamma_cc_alpha_one_continuity():
    one = lm.gamma_cc(ctx(1.0))
    for a in (1.0 - 1e-4, 1.0 + 1e-4):
        assert abs(lm.gamma_cc(ctx(a)) - one) <= 1e-3


# ---- finite-n expected degrees ---------------------------------------------

def test_mu_box_and_mu_po_converge():
    c = ctx(0.8)
    n = 10**6
    R = 2.0 * math.log(n)
    y = R / 2
    assert lm.mu_box(c, n, y) / lm.mu_ball(c, y) == pytest.approx(1.0, rel=1e-2)
    assert lm.mu_po(c, n, y) / lm.mu_ball(c, y) == pytest.approx(1.0, rel=1e-2)


def test_mu_box_at_zero():
    c = ctx(0.8)
    R = 2.0 * math.log(1000)
    assert lm.mu_box(c, 1000, 0.0) == pytest.approx(c.xi * -math.expm1(-0.3 * R), rel=1e-14)


def test_mu_po_finite_near_top():
    c = ctx(0.8)
    R = 2.0 * math.log(1000)
    assert math.isfinite(lm.mu_po(c, 1000, R * (1 - 1e-9)))


@pytest.mark.parametrize("model,mu", [("poissonized", lm.mu_po), ("box", lm.mu_box)])
def test_planted_vertex_degree(model, mu):
    params = ModelParams(0.8, 1.0, 2000)
    y = 2.0
    degs = np.array([planted_degree(params, y, seed, model) for seed in range(300)])
    target = mu(ctx(0.8), 2000, y)
    se = degs.std(ddof=1) / math.sqrt(degs.size)
    assert abs(degs.mean() - target) <= 3 * se
    assert degs.mean() == pytest.approx(target, rel=5e-2)


def test_mu_po_whole_height_range():
    # the upper half of [0, R) used to exhaust the quadrature budget
    c = ctx(0.8)
    n = 10_000
    R = 2.0 * math.log(n)
    vals = [lm.mu_po(c, n, y) for y in np.linspace(0.0, R * (1 - 1e-9), 200)]
    assert np.all(np.isfinite(vals)) and np.all(np.diff(vals) > 0)
