import io
import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from kpkvb import gengraph as gg, geom, kernels, limits
from kpkvb.params import ModelParams, ParameterError


def same_graph(a, b):
    return (np.array_equal(a.first, b.first) and np.array_equal(a.second, b.second)
            and np.array_equal(a.indptr, b.indptr) and np.array_equal(a.indices, b.indices))


@pytest.mark.parametrize("model", gg.MODELS)
def test_deterministic(model):
    p = ModelParams(0.8, 1.0, 500)
    assert same_graph(gg.generate(model, p, 42), gg.generate(model, p, 42))
    assert not same_graph(gg.generate(model, p, 42), gg.generate(model, p, 43))


@pytest.mark.parametrize("model", gg.MODELS)
def test_backends_agree(model):
    p = ModelParams(0.7, 0.5, 800)
    g_py = gg.generate(model, p, 7, impl=kernels.backend("python"))
    g_default = gg.generate(model, p, 7)
    assert same_graph(g_py, g_default)


def test_single_vertex_is_edgeless():
    g = gg.generate_kpkvb(ModelParams(0.8, 1.0, 1), 3)
    assert g.n == 1 and g.num_edges == 0


def test_two_vertices_follow_the_rule():
    p = ModelParams(0.8, 1.0, 2)
    for seed in range(40):
        g = gg.generate_kpkvb(p, seed)
        expected = bool(geom.is_connected_polar(g.coords(0), g.coords(1), p.R))
        assert (g.num_edges == 1) == expected


def test_empty_poisson_draw():
    p = ModelParams(0.8, 1.0, 1)
    seed = next(s for s in range(100) if gg.stream(s, gg.STREAM_COUNT).poisson(1) == 0)
    g = gg.generate_poissonized(p, seed)
    assert g.n == 0 and g.num_edges == 0 and g.edges().shape == (0, 2)


def test_poisson_vertex_counts():
    p = ModelParams(0.8, 1.0, 300)
    counts = np.array([gg.generate_poissonized(p, s).n for s in range(200)])
    assert abs(counts.mean() - 300) <= 3 * math.sqrt(300 / 200)
    boxes = np.array([gg.generate_box(p, s).n for s in range(200)])
    mass = gg.box_mass(p)
    assert mass == pytest.approx(300 * (1 - math.exp(-0.8 * p.R)))
    assert abs(boxes.mean() - mass) <= 3 * math.sqrt(mass / 200)


def test_box_needs_positive_radius():
    with pytest.raises(ParameterError):
        gg.generate_box(ModelParams(0.8, 5.0, 5), 0)


def test_box_geometry():
    p = ModelParams(0.8, 1.0, 400)
    g = gg.generate_box(p, 1)
    w = gg.box_width(p.R)
    assert np.all(np.abs(g.first) <= w / 2) and np.all((g.second > 0) & (g.second <= p.R))
    # torus distance 0 always connects
    u, v = g.edges()[0]
    assert geom.torus_distance(g.first[u], g.first[v], w) <= math.exp(0.5 * (g.second[u] + g.second[v]))


@settings(max_examples=30, deadline=None)
@given(st.sampled_from(gg.MODELS), st.floats(0.55, 3.0), st.floats(0.2, 3.0),
       st.integers(10, 2000), st.integers(0, 2**64 - 1))
def test_pruning_matches_naive_scan(model, alpha, nu, n, seed):
    p = ModelParams(alpha, nu, n)
    if model == "box" and p.R <= 0:
        return
    g = gg.generate(model, p, seed)
    indptr, indices = gg.naive_adjacency(g)
    assert np.array_equal(indptr, g.indptr) and np.array_equal(indices, g.indices)


def test_graph_is_immutable_and_sorted():
    g = gg.generate_kpkvb(ModelParams(0.8, 1.0, 300), 0)
    with pytest.raises(ValueError):
        g.indices[0] = 5
    for v in range(g.n):
        assert np.all(np.diff(g.neighbors(v)) > 0)
    with pytest.raises(IndexError):
        g.neighbors(g.n)
    e = g.edges()
    assert np.all(e[:, 0] < e[:, 1])
    assert np.array_equal(e, e[np.lexsort((e[:, 1], e[:, 0]))])


def test_edge_list_roundtrip():
    g = gg.generate_box(ModelParams(0.8, 1.0, 200), 9)
    buf = io.StringIO()
    gg.write_edge_list(g, buf)
    text = buf.getvalue()
    assert text.startswith("# model alpha nu n R seed\n# box 0.8 1.0 200 ")
    header, edges = gg.read_edge_list(io.StringIO(text))
    assert header["model"] == "box" and int(header["seed"]) == 9
    assert np.array_equal(edges, g.edges())


def test_coords_csv():
    g = gg.generate_kpkvb(ModelParams(0.8, 1.0, 5), 2)
    buf = io.StringIO()
    gg.write_coords(g, buf)
    lines = buf.getvalue().splitlines()
    assert lines[0] == "vertex,r_or_x,theta_or_y" and len(lines) == 6
    assert float(lines[1].split(",")[1]) == g.first[0]


def test_seed_validation():
    for bad in (-1, 2**64, 1.5, True):
        with pytest.raises(ParameterError):
            gg.check_seed(bad)


def test_resource_budget(monkeypatch):
    monkeypatch.setattr(gg, "MAX_VERTICES", 10)
    with pytest.raises(gg.ResourceLimitError):
        gg.generate_kpkvb(ModelParams(0.8, 1.0, 11), 0)


def test_rep_seeds_distinct():
    seeds = {gg.rep_seed(2024, r) for r in range(1000)}
    assert len(seeds) == 1000


def test_typical_neighborhood_ball():
    nb = gg.sample_typical_neighborhood(0.8, 1.0, 0.0, 17)
    assert np.all(np.abs(nb.x) <= np.exp(0.5 * nb.y))
    assert 0.0 <= nb.clustering() <= 1.0


def test_typical_degree_is_poisson():
    alpha, nu, y0 = 0.8, 1.0, 1.5
    degs = np.array([gg.sample_typical_neighborhood(alpha, nu, y0, s).degree for s in range(2000)])
    mu = limits.mu_ball(limits.LimitContext(alpha, nu), y0)
    assert abs(degs.mean() - mu) <= 3 * math.sqrt(mu / degs.size)


def test_conditional_degree_in_box():
    p = ModelParams(0.8, 1.0, 5000)
    degs = [gg.planted_degree(p, 2.0, s, "box") for s in range(2000)]
    target = limits.mu_box(limits.LimitContext(0.8, 1.0), 5000, 2.0)
    assert np.mean(degs) == pytest.approx(target, rel=5e-2)
