"""Seeded Monte-Carlo experiments over repeated graph samples.

Replication ``rep`` of a run with master seed ``s`` uses the graph seed
``rep_seed(s, rep)``, so results do not depend on how reps are scheduled
across workers. Per-rep rows are appended to a ``.reps.csv`` file as they
complete (in rep order) and the summary is folded in rep order.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Iterable, Sequence

import numpy as np

from . import graphstats, limits
from .gengraph import MODELS, generate, rep_seed
from .params import ModelParams, ParameterError


def default_threads() -> int:
    return os.cpu_count() or 1


@dataclass(frozen=True)
class ExperimentConfig:
    params: ModelParams
    reps: int = 1
    k_max: int = 25
    seed: int = 0
    model: str = "kpkvb"
    output_dir: Path = Path(".")
    threads: int = field(default_factory=default_threads)
    alphas: tuple[float, ...] = ()

    def __post_init__(self):
        if int(self.reps) != self.reps or self.reps < 1:
            raise ParameterError("reps", self.reps, "must be an integer >= 1")
        if int(self.k_max) != self.k_max or self.k_max < 2:
            raise ParameterError("kmax", self.k_max, "must be an integer >= 2")
        if self.model not in MODELS:
            raise ParameterError("model", self.model, f"must be one of {', '.join(MODELS)}")
        if int(self.threads) != self.threads or self.threads < 1:
            raise ParameterError("threads", self.threads, "must be an integer >= 1")
        object.__setattr__(self, "output_dir", Path(self.output_dir))

    def header(self) -> list[str]:
        p = self.params
        items = [("alpha", ",".join(repr(a) for a in self.alphas) if self.alphas else repr(p.alpha)),
                 ("nu", repr(p.nu)), ("n", p.n), ("reps", self.reps), ("kmax", self.k_max),
                 ("seed", self.seed), ("model", self.model)]
        return [f"# {k}={v}" for k, v in items]


@dataclass(frozen=True)
class RepResult:
    rep: int
    seed: int
    vertices: int
    mean_degree: float
    c_global: float
    c_of_k: np.ndarray
    degree_fraction: np.ndarray


def run_rep(model: str, alpha: float, nu: float, n: int, master_seed: int, rep: int,
            k_max: int) -> RepResult:
    """Generate one graph and reduce it to the per-k statistics used by every experiment."""
    seed = rep_seed(master_seed, rep)
    g = generate(model, ModelParams(alpha, nu, n), seed)
    report = graphstats.clustering_report(g)
    ks = np.arange(k_max + 1)
    c_of_k = np.array([report.clustering_function(int(k)) for k in ks])
    # fractions use N_n(k)/n with the nominal n, matching the degree-law statement
    frac = np.array([report.count(int(k)) for k in ks], dtype=float) / n
    mean_deg = 2.0 * g.num_edges / g.n if g.n else 0.0
    return RepResult(rep, seed, g.n, mean_deg, report.c_global, c_of_k, frac)


def _run_rep_args(args):
    return run_rep(*args)


def run_reps(config: ExperimentConfig, alpha: float | None = None,
             on_result: Callable[[RepResult], None] | None = None) -> list[RepResult]:
    p = config.params
    a = p.alpha if alpha is None else alpha
    jobs = [(config.model, a, p.nu, p.n, config.seed, rep, config.k_max) for rep in range(config.reps)]
    results = []
    if config.threads == 1 or config.reps == 1:
        mapped: Iterable[RepResult] = map(_run_rep_args, jobs)
        for res in mapped:
            results.append(res)
            if on_result:
                on_result(res)
        return results
    with ProcessPoolExecutor(max_workers=min(config.threads, config.reps)) as pool:
        # map yields in submission order, so the fold is schedule-independent
        for res in pool.map(_run_rep_args, jobs):
            results.append(res)
            if on_result:
                on_result(res)
    return results


def mean_se(values: Sequence[float]) -> tuple[float, float]:
    """Sample mean and its standard error; the error is NaN for one sample."""
    arr = np.asarray(values, dtype=float)
    m = math.fsum(arr) / arr.size
    if arr.size < 2:
        return m, math.nan
    var = math.fsum((arr - m) ** 2) / (arr.size - 1)
    return m, math.sqrt(var / arr.size)


def _fmt(v) -> str:
    return repr(float(v)) if isinstance(v, (float, np.floating)) else str(v)


class _RepLog:
    """Append-and-flush writer for per-rep rows."""

    def __init__(self, path: Path, header: list[str], columns: list[str], row: Callable):
        self.fh = open(path, "w", encoding="utf-8")
        self.row = row
        self.fh.write("\n".join(header) + "\n" + ",".join(columns) + "\n")
        self.fh.flush()

    def __call__(self, res: RepResult) -> None:
        self.fh.write(",".join(_fmt(v) for v in self.row(res)) + "\n")
        self.fh.flush()

    def close(self):
        self.fh.close()


def _write_csv(path: Path, header: list[str], columns: list[str], rows) -> Path:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("\n".join(header) + "\n")
        fh.write(",".join(columns) + "\n")
        for r in rows:
            fh.write(",".join(_fmt(v) for v in r) + "\n")
    return path


def _prepare(config: ExperimentConfig, name: str):
    out = config.output_dir
    out.mkdir(parents=True, exist_ok=True)
    return out / f"{name}.csv", out / f"{name}.reps.csv"


def fig_gammak(config: ExperimentConfig, name: str = "fig_gammak") -> Path:
    """Mean clustering function over reps against the limit ``gamma(k)``, k = 2..k_max.

    Per-rep values are zero when no vertex has degree ``k``; those zeros enter the mean.
    """
    path, rep_path = _prepare(config, name)
    ks = list(range(2, config.k_max + 1))
    log = _RepLog(rep_path, config.header(), ["rep", "seed", "vertices", "c_global"]
                  + [f"c_{k}" for k in ks],
                  lambda r: [r.rep, r.seed, r.vertices, r.c_global] + list(r.c_of_k[2:]))
    try:
        results = run_reps(config, on_result=log)
    finally:
        log.close()
    ctx = limits.LimitContext(config.params.alpha, config.params.nu)
    rows = []
    for k in ks:
        m, se = mean_se([r.c_of_k[k] for r in results])
        rows.append((k, m, se, limits.gamma_k(ctx, k), limits.gamma_k_asymptote(ctx, k)))
    return _write_csv(path, config.header(),
                      ["k", "c_mean", "c_se", "gamma_k", "gamma_k_asymptote"], rows)


def fig_gamma(config: ExperimentConfig, name: str = "fig_gamma") -> Path:
    """Mean clustering coefficient over reps against ``gamma`` for each alpha in the grid."""
    path, rep_path = _prepare(config, name)
    alphas = config.alphas or (config.params.alpha,)
    log = _RepLog(rep_path, config.header(), ["alpha", "rep", "seed", "vertices", "c_global"], None)
    rows = []
    try:
        for a in alphas:
            log.row = lambda r, a=a: [a, r.rep, r.seed, r.vertices, r.c_global]
            results = run_reps(config, alpha=a, on_result=log)
            m, se = mean_se([r.c_global for r in results])
            rows.append((a, m, se, limits.gamma_cc(limits.LimitContext(a, config.params.nu))))
    finally:
        log.close()
    return _write_csv(path, config.header(), ["alpha", "c_mean", "c_se", "gamma"], rows)


def degrees(config: ExperimentConfig, name: str = "degrees") -> Path:
    """Mean fraction ``N_n(k)/n`` over reps against ``pi(k)``, k = 0..k_max."""
    path, rep_path = _prepare(config, name)
    ks = list(range(0, config.k_max + 1))
    log = _RepLog(rep_path, config.header(), ["rep", "seed", "vertices", "mean_degree"]
                  + [f"frac_{k}" for k in ks],
                  lambda r: [r.rep, r.seed, r.vertices, r.mean_degree] + list(r.degree_fraction))
    try:
        results = run_reps(config, on_result=log)
    finally:
        log.close()
    ctx = limits.LimitContext(config.params.alpha, config.params.nu)
    rows = []
    for k in ks:
        m, se = mean_se([r.degree_fraction[k] for r in results])
        rows.append((k, m, se, limits.degree_pmf(ctx, k)))
    return _write_csv(path, config.header(), ["k", "frac_mean", "frac_se", "degree_pmf"], rows)


EXPERIMENTS = {"fig-gammak": fig_gammak, "fig-gamma": fig_gamma, "degrees": degrees}


def read_csv(path: Path) -> tuple[dict[str, str], list[str], list[list[float]]]:
    """Parse a report: ``#key=value`` metadata, the header row and numeric rows."""
    meta = {}
    columns: list[str] = []
    rows = []
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            if not line:
                continue
            if line.startswith("#"):
                key, _, val = line[1:].strip().partition("=")
                meta[key.strip()] = val.strip()
            elif not columns:
                columns = line.split(",")
            else:
                rows.append([float(v) for v in line.split(",")])
    return meta, columns, rows

