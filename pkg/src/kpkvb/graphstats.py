"""Degree counts, local clustering, c(G) and the clustering function c(k; G)."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import kernels


def triangles_per_vertex(g) -> np.ndarray:
    return kernels.triangle_counts(g.indptr, g.indices)


def local_clustering(g, v: int) -> float:
    """Fraction of neighbour pairs of ``v`` that are adjacent; 0 below degree two."""
    nb = g.neighbors(v)
    d = nb.size
    if d < 2:
        return 0.0
    links = sum(np.intersect1d(nb, g.neighbors(int(u)), assume_unique=True).size for u in nb)
    return links / (d * (d - 1))


def local_clustering_all(g, triangles: np.ndarray | None = None) -> np.ndarray:
    t = triangles_per_vertex(g) if triangles is None else triangles
    d = g.degrees().astype(float)
    pairs = 0.5 * d * (d - 1.0)
    out = np.zeros(d.size)
    np.divide(t, pairs, out=out, where=pairs > 0)
    return out


@dataclass(frozen=True)
class ClusteringReport:
    degree_counts: dict[int, int]
    c_global: float
    c_of_k: dict[int, float]
    triangles_per_vertex: np.ndarray

    @property
    def n(self) -> int:
        return sum(self.degree_counts.values())

    def count(self, k: int) -> int:
        return self.degree_counts.get(k, 0)

    def clustering_function(self, k: int) -> float:
        """c(k; G), zero when no vertex has degree ``k``."""
        return self.c_of_k.get(k, 0.0)


def clustering_report(g) -> ClusteringReport:
    t = triangles_per_vertex(g)
    c = local_clustering_all(g, t)
    deg = g.degrees()
    if deg.size == 0:
        return ClusteringReport({}, 0.0, {}, t)
    counts = {}
    c_of_k = {}
    order = np.argsort(deg, kind="stable")
    ks, starts = np.unique(deg[order], return_index=True)
    bounds = list(starts) + [deg.size]
    for i, k in enumerate(ks):
        members = c[order[bounds[i]:bounds[i + 1]]]
        counts[int(k)] = int(members.size)
        # compensated summation over up to 1e4 terms per degree class
        c_of_k[int(k)] = math.fsum(members) / members.size
    return ClusteringReport(counts, math.fsum(c) / c.size, c_of_k, t)


def write_report_csv(report: ClusteringReport, fh) -> None:
    fh.write("k,N_k,c_k_mean\n")
    for k in sorted(report.degree_counts):
        fh.write(f"{k},{report.degree_counts[k]},{report.c_of_k[k]!r}\n")
    fh.write(f"# c_global={report.c_global!r}\n")


def brute_force_local_clustering(adj: np.ndarray) -> np.ndarray:
    """Triple loop over a dense 0/1 matrix; the O(n^3) reference."""
    n = adj.shape[0]
    out = np.zeros(n)
    for v in range(n):
        nb = [u for u in range(n) if adj[v, u]]
        d = len(nb)
        if d < 2:
            continue
        links = 0
        for i in range(d):
            for j in range(i + 1, d):
                links += int(adj[nb[i], nb[j]])
        out[v] = links / (d * (d - 1) / 2)
    return out
