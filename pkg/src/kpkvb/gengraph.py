"""Samplers for the disk, Poissonized, box and typical-point models.

Randomness comes from counter-based Philox streams keyed by
``(seed, stream)``: vertex ``i`` always takes draw ``i`` of the angle and
radius streams, so a graph is a pure function of ``(params, seed)``.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass
from typing import Iterator

import numpy as np

from . import kernels
from .geom import PlanePoint, PolarPoint, sample_radius
from .params import ModelParams, ParameterError, check_alpha, check_nu, xi_of

MODELS = ("kpkvb", "poissonized", "box")
POLAR_MODELS = ("kpkvb", "poissonized")

# vertex budget; a graph at the limit holds ~O(limit * mean degree) int64 entries
MAX_VERTICES = int(os.environ.get("KPKVB_MAX_VERTICES", 20_000_000))

STREAM_COUNT = 0
STREAM_ANGLE = 1
STREAM_RADIUS = 2
STREAM_PAIRS = 3


class ResourceLimitError(RuntimeError):
    pass


def check_seed(seed) -> int:
    if isinstance(seed, bool) or int(seed) != seed or not 0 <= int(seed) < 2**64:
        raise ParameterError("seed", seed, "must be an integer in [0, 2^64)")
    return int(seed)


def stream(seed: int, tag: int) -> np.random.Generator:
    """Independent generator for one purpose (count, angle, radius, ...) of one seed."""
    return np.random.Generator(np.random.Philox(np.random.SeedSequence([check_seed(seed), tag])))


def rep_seed(seed: int, rep: int) -> int:
    """64-bit seed of replication ``rep`` derived from a master seed."""
    ss = np.random.SeedSequence([check_seed(seed), int(rep)])
    return int(ss.generate_state(1, dtype=np.uint64)[0])


def _check_budget(n: int) -> None:
    if n > MAX_VERTICES:
        raise ResourceLimitError(f"{n} vertices exceed the budget of {MAX_VERTICES}")


def box_width(R: float) -> float:
    return math.pi * math.exp(0.5 * R)


@dataclass(frozen=True, eq=False)
class Graph:
    """Immutable graph with CSR adjacency and per-vertex coordinates.

    Polar models store ``(r, theta)``, the box model ``(x, y)``. Neighbour
    lists are strictly increasing.
    """

    model: str
    params: ModelParams
    seed: int
    first: np.ndarray
    second: np.ndarray
    indptr: np.ndarray
    indices: np.ndarray

    def __post_init__(self):
        for name in ("first", "second", "indptr", "indices"):
            arr = np.ascontiguousarray(getattr(self, name))
            arr.setflags(write=False)
            object.__setattr__(self, name, arr)

    @property
    def n(self) -> int:
        return int(self.first.size)

    @property
    def num_edges(self) -> int:
        return int(self.indices.size) // 2

    @property
    def is_polar(self) -> bool:
        return self.model in POLAR_MODELS

    def coords(self, v: int) -> PolarPoint | PlanePoint:
        cls = PolarPoint if self.is_polar else PlanePoint
        return cls(float(self.first[v]), float(self.second[v]))

    def neighbors(self, v: int) -> np.ndarray:
        if not 0 <= v < self.n:
            raise IndexError(f"vertex {v} out of range")
        return self.indices[self.indptr[v]:self.indptr[v + 1]]

    def degrees(self) -> np.ndarray:
        return np.diff(self.indptr)

    def edges(self) -> np.ndarray:
        """``(m, 2)`` array of pairs ``u < v`` in lexicographic order."""
        rows = np.repeat(np.arange(self.n, dtype=np.int64), self.degrees())
        keep = rows < self.indices
        return np.column_stack([rows[keep], self.indices[keep]])

    def iter_edges(self) -> Iterator[tuple[int, int]]:
        for u, v in self.edges():
            yield int(u), int(v)


def _polar_coords(params: ModelParams, seed: int, count: int):
    u = stream(seed, STREAM_ANGLE).random(count)
    theta = np.pi - 2.0 * np.pi * u
    r = sample_radius(params.alpha, params.R, stream(seed, STREAM_RADIUS).random(count))
    return np.atleast_1d(r).astype(float), theta


def _polar_graph(model: str, params: ModelParams, seed: int, count: int, impl) -> Graph:
    _check_budget(count)
    r, theta = _polar_coords(params, seed, count)
    indptr, indices = kernels.polar_adjacency(r, theta, params.R, impl)
    return Graph(model, params, seed, r, theta, indptr, indices)


def generate_kpkvb(params: ModelParams, seed: int, *, impl=None) -> Graph:
    """``n`` quasi-uniform points in the disk of radius R, joined at distance <= R."""
    seed = check_seed(seed)
    return _polar_graph("kpkvb", params, seed, params.n, impl)


def generate_poissonized(params: ModelParams, seed: int, *, impl=None) -> Graph:
    """As ``generate_kpkvb`` with a Poisson(n) number of points; zero points give the empty graph."""
    seed = check_seed(seed)
    count = int(stream(seed, STREAM_COUNT).poisson(params.n))
    return _polar_graph("poissonized", params, seed, count, impl)


def box_mass(params: ModelParams) -> float:
    """Expected number of points in the box, ``n (1 - e^{-alpha R})``."""
    return params.n * -math.expm1(-params.alpha * params.R)


def _box_coords(params: ModelParams, seed: int, count: int):
    a = params.alpha
    width = box_width(params.R)
    x = 0.5 * width - width * stream(seed, STREAM_ANGLE).random(count)
    # 1 - u lies in (0, 1], so heights land in (0, R]
    v = 1.0 - stream(seed, STREAM_RADIUS).random(count)
    y = -np.log1p(v * np.expm1(-a * params.R)) / a
    return x, np.minimum(y, params.R)


def generate_box(params: ModelParams, seed: int, *, impl=None) -> Graph:
    """Poisson process of intensity ``(alpha nu / pi) e^{-alpha y}`` on the box, sides identified."""
    seed = check_seed(seed)
    if not params.R > 0:
        raise ParameterError("n", params.n, "box model needs n > nu so that R > 0")
    count = int(stream(seed, STREAM_COUNT).poisson(box_mass(params)))
    _check_budget(count)
    x, y = _box_coords(params, seed, count)
    indptr, indices = kernels.box_adjacency(x, y, box_width(params.R), impl)
    return Graph("box", params, seed, x, y, indptr, indices)


GENERATORS = {
    "kpkvb": generate_kpkvb,
    "poissonized": generate_poissonized,
    "box": generate_box,
}


def generate(model: str, params: ModelParams, seed: int, *, impl=None) -> Graph:
    try:
        gen = GENERATORS[model]
    except KeyError:
        raise ParameterError("model", model, f"must be one of {', '.join(MODELS)}") from None
    return gen(params, seed, impl=impl)


# --------------------------------------------------------------------------
# Brute-force edge construction (test oracle)

def _rows_to_csr(rows: list[np.ndarray]):
    indptr = np.zeros(len(rows) + 1, dtype=np.int64)
    np.cumsum([r.size for r in rows], out=indptr[1:])
    indices = np.concatenate(rows).astype(np.int64) if rows else np.zeros(0, np.int64)
    return indptr, indices


def naive_adjacency(g: Graph):
    """Re-scan every pair with the model's connection rule; O(n^2)."""
    if g.is_polar:
        ch, sh = np.cosh(g.first), np.sinh(g.first)
        cosh_R = math.cosh(g.params.R)
        rows = []
        for i in range(g.n):
            d = np.abs(g.second[i] - g.second)
            d = np.minimum(np.fmod(d, 2 * np.pi), 2 * np.pi - np.fmod(d, 2 * np.pi))
            hit = ch[i] * ch - sh[i] * sh * np.cos(d) <= cosh_R
            hit[i] = False
            rows.append(np.flatnonzero(hit))
        return _rows_to_csr(rows)
    width = box_width(g.params.R)
    eh = np.exp(0.5 * g.second)
    rows = []
    for i in range(g.n):
        d = np.fmod(np.abs(g.first[i] - g.first), width)
        hit = np.minimum(d, width - d) <= eh[i] * eh
        hit[i] = False
        rows.append(np.flatnonzero(hit))
    return _rows_to_csr(rows)


# --------------------------------------------------------------------------
# Serialization

def write_edge_list(g: Graph, fh) -> None:
    p = g.params
    fh.write("# model alpha nu n R seed\n")
    fh.write(f"# {g.model} {p.alpha!r} {p.nu!r} {p.n} {p.R!r} {g.seed}\n")
    for u, v in g.edges():
        fh.write(f"{u} {v}\n")


def write_coords(g: Graph, fh) -> None:
    fh.write("vertex,r_or_x,theta_or_y\n")
    for i in range(g.n):
        fh.write(f"{i},{float(g.first[i])!r},{float(g.second[i])!r}\n")


def read_edge_list(fh):
    """Return ``(header, edges)`` where header maps the header keys to strings."""
    keys = fh.readline().lstrip("#").split()
    values = fh.readline().lstrip("#").split()
    if keys != ["model", "alpha", "nu", "n", "R", "seed"] or len(values) != len(keys):
        raise ValueError("missing edge-list header")
    edges = np.loadtxt(fh, dtype=np.int64, ndmin=2)
    return dict(zip(keys, values)), edges.reshape(-1, 2)


# --------------------------------------------------------------------------
# Typical point of the infinite model

@dataclass(frozen=True, eq=False)
class TypicalNeighborhood:
    """Neighbours of a point at ``(0, y0)`` in the infinite limit model."""

    y0: float
    x: np.ndarray
    y: np.ndarray

    @property
    def neighbors(self) -> list[PlanePoint]:
        return [PlanePoint(float(a), float(b)) for a, b in zip(self.x, self.y)]

    @property
    def degree(self) -> int:
        return int(self.x.size)

    def adjacency(self) -> np.ndarray:
        """Boolean matrix of neighbour-neighbour adjacency (no wraparound in the plane)."""
        eh = np.exp(0.5 * self.y)
        adj = np.abs(self.x[:, None] - self.x[None, :]) <= eh[:, None] * eh[None, :]
        np.fill_diagonal(adj, False)
        return adj

    def clustering(self) -> float:
        k = self.degree
        if k < 2:
            return 0.0
        return float(self.adjacency().sum()) / (k * (k - 1))


def _neighbor_draws(rng: np.random.Generator, alpha: float, y0, shape):
    y = rng.exponential(1.0 / (alpha - 0.5), size=shape)
    half = np.exp(0.5 * (np.asarray(y0)[..., None] + y)) if np.ndim(y0) else np.exp(0.5 * (y0 + y))
    x = half * (2.0 * rng.random(size=shape) - 1.0)
    return x, y


def sample_typical_neighborhood(alpha: float, nu: float, y0: float, seed: int) -> TypicalNeighborhood:
    alpha = check_alpha(alpha)
    nu = check_nu(nu)
    if not y0 >= 0:
        raise ParameterError("y0", y0, "must be >= 0")
    rng = stream(seed, STREAM_PAIRS)
    k = int(rng.poisson(xi_of(alpha, nu) * math.exp(0.5 * y0)))
    x, y = _neighbor_draws(rng, alpha, y0, k)
    return TypicalNeighborhood(float(y0), x, y)


def sample_neighbor_pair_adjacency(alpha: float, y0: float, pairs: int, seed: int) -> np.ndarray:
    """Adjacency indicators of ``pairs`` independent neighbour pairs of a point at height ``y0``."""
    alpha = check_alpha(alpha)
    rng = stream(seed, STREAM_PAIRS)
    x, y = _neighbor_draws(rng, alpha, y0, (2, pairs))
    return np.abs(x[0] - x[1]) <= np.exp(0.5 * (y[0] + y[1]))


def sample_typical_clustering(alpha: float, nu: float, k: int, samples: int, seed: int,
                              batch: int = 200_000) -> np.ndarray:
    """Local clustering of ``samples`` typical points conditioned on degree ``k``.

    Heights are drawn from Exp(alpha) and rejected unless the Poisson degree is ``k``.
    """
    alpha = check_alpha(alpha)
    xi = xi_of(alpha, check_nu(nu))
    if k < 2:
        raise ParameterError("k", k, "must be >= 2")
    rng = stream(seed, STREAM_PAIRS)
    out = []
    have = 0
    iu, ju = np.triu_indices(k, 1)
    while have < samples:
        y0 = rng.exponential(1.0 / alpha, size=batch)
        keep = y0[rng.poisson(xi * np.exp(0.5 * y0)) == k][: samples - have]
        if keep.size == 0:
            continue
        x, y = _neighbor_draws(rng, alpha, keep, (keep.size, k))
        eh = np.exp(0.5 * y)
        hits = np.abs(x[:, iu] - x[:, ju]) <= eh[:, iu] * eh[:, ju]
        out.append(hits.mean(axis=1))
        have += keep.size
    return np.concatenate(out)


def planted_degree(params: ModelParams, y: float, seed: int, model: str = "poissonized") -> int:
    """Degree of an extra vertex planted at height ``y`` (angle or x equal to 0)."""
    seed = check_seed(seed)
    R = params.R
    if not 0 <= y <= R:
        raise ParameterError("y", y, "must lie in [0, R]")
    if model == "poissonized":
        count = int(stream(seed, STREAM_COUNT).poisson(params.n))
        r, theta = _polar_coords(params, seed, count)
        r0 = R - y
        lhs = math.cosh(r0) * np.cosh(r) - math.sinh(r0) * np.sinh(r) * np.cos(theta)
        return int(np.count_nonzero(lhs <= math.cosh(R)))
    if model == "box":
        count = int(stream(seed, STREAM_COUNT).poisson(box_mass(params)))
        x, yy = _box_coords(params, seed, count)
        width = box_width(R)
        d = np.fmod(np.abs(x), width)
        return int(np.count_nonzero(np.minimum(d, width - d) <= np.exp(0.5 * (y + yy))))
    raise ParameterError("model", model, "must be poissonized or box")
