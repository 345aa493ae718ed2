"""Command-line front end.

Exit codes: 0 success, 1 invalid input, 2 numeric gate or convergence
failure, 3 I/O error.
"""

from __future__ import annotations

import argparse
import math
import sys
from pathlib import Path

from . import experiments, gengraph, limits
from .params import ModelParams, ParameterError
from .plot import emit_plot_script

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_NUMERIC = 2
EXIT_IO = 3

DEFAULTS = {
    "alpha": "0.8",
    "nu": "1.0",
    "n": "1000",
    "reps": "1",
    "kmax": "25",
    "seed": "0",
    "model": "kpkvb",
    "out": None,
    "threads": None,
    "tol": "1e-6",
}
CONFIG_KEYS = tuple(DEFAULTS)


class GateFailure(Exception):
    pass


def read_config(path: str) -> dict[str, str]:
    """Flat ``key=value`` file; ``#`` starts a comment."""
    out = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            key, sep, value = line.partition("=")
            key = key.strip().lstrip("-").replace("_", "-")
            key = "kmax" if key in ("k-max", "kmax") else key
            if not sep or key not in CONFIG_KEYS:
                raise ParameterError("config", f"{path}:{lineno}", f"unrecognised line {raw.strip()!r}")
            out[key] = value.strip()
    return out


def resolve(args: argparse.Namespace) -> dict[str, str | None]:
    """Merge built-in defaults, the config file, then explicit flags (flags win)."""
    merged = dict(DEFAULTS)
    if getattr(args, "config", None):
        merged.update(read_config(args.config))
    for key in CONFIG_KEYS:
        val = getattr(args, key, None)
        if val is not None:
            merged[key] = val
    return merged


def _num(opts, key, kind=float):
    raw = opts[key]
    try:
        val = kind(float(raw)) if kind is int else kind(raw)
    except (TypeError, ValueError):
        raise ParameterError(key, raw, "not a number") from None
    if kind is int and float(raw) != val:
        raise ParameterError(key, raw, "must be an integer")
    return val


def _alphas(opts) -> list[float]:
    try:
        vals = [float(a) for a in str(opts["alpha"]).split(",") if a.strip()]
    except ValueError:
        raise ParameterError("alpha", opts["alpha"], "not a number list") from None
    if not vals:
        raise ParameterError("alpha", opts["alpha"], "empty")
    return vals


def _single_alpha(opts) -> float:
    vals = _alphas(opts)
    if len(vals) != 1:
        raise ParameterError("alpha", opts["alpha"], "this command takes a single value")
    return vals[0]


def _params(opts) -> ModelParams:
    return ModelParams(_single_alpha(opts), _num(opts, "nu"), _num(opts, "n", int))


def _open_out(target: str | None):
    if target in (None, "-"):
        return sys.stdout, False
    path = Path(target)
    if path.parent and not path.parent.exists():
        path.parent.mkdir(parents=True, exist_ok=True)
    return open(path, "w", encoding="utf-8"), True


def cmd_generate(opts) -> int:
    params = _params(opts)
    seed = gengraph.check_seed(_num(opts, "seed", int))
    g = gengraph.generate(opts["model"], params, seed)
    out = Path(opts["out"] or ".")
    out.mkdir(parents=True, exist_ok=True)
    stem = out / f"{g.model}_seed{seed}"
    with open(f"{stem}.edges", "w", encoding="utf-8") as fh:
        gengraph.write_edge_list(g, fh)
    with open(f"{stem}.coords.csv", "w", encoding="utf-8") as fh:
        gengraph.write_coords(g, fh)
    print(f"{stem}.edges: {g.n} vertices, {g.num_edges} edges")
    return EXIT_OK


def _limit_ctx(opts) -> limits.LimitContext:
    return limits.LimitContext(_single_alpha(opts), _num(opts, "nu"))


def cmd_limits(opts) -> int:
    ctx = _limit_ctx(opts)
    kmax = _num(opts, "kmax", int)
    if kmax < 2:
        raise ParameterError("kmax", kmax, "must be >= 2")
    rows = limits.tabulate(ctx, 2, kmax)
    fh, close = _open_out(opts["out"])
    try:
        fh.write(f"# alpha={ctx.alpha!r}\n# nu={ctx.nu!r}\n# gamma={limits.gamma_cc(ctx)!r}\n")
        fh.write("k,gamma_k,gamma_k_oracle,degree_pmf\n")
        for k, g, o, p in rows:
            fh.write(f"{k},{g!r},{o!r},{p!r}\n")
    finally:
        if close:
            fh.close()
    return EXIT_OK


def gate_exceeded(closed: float, oracle: float, tol: float) -> bool:
    return abs(closed - oracle) > tol * max(abs(closed), 1e-3) or not math.isfinite(closed)


def cmd_oracle(opts) -> int:
    ctx = _limit_ctx(opts)
    kmax = _num(opts, "kmax", int)
    tol = _num(opts, "tol")
    if kmax < 2:
        raise ParameterError("kmax", kmax, "must be >= 2")
    if not tol >= 0:
        raise ParameterError("tol", tol, "must be >= 0")
    failed = []
    fh, close = _open_out(opts["out"])
    try:
        fh.write(f"# alpha={ctx.alpha!r}\n# nu={ctx.nu!r}\n# tol={tol!r}\n")
        fh.write("k,gamma_k,gamma_k_oracle,abs_diff\n")
        for k in range(2, kmax + 1):
            g = limits.gamma_k(ctx, k)
            o = limits.gamma_k_oracle(ctx, k)
            fh.write(f"{k},{g!r},{o!r},{abs(g - o)!r}\n")
            if gate_exceeded(g, o, tol):
                failed.append(k)
    finally:
        if close:
            fh.close()
    if failed:
        raise GateFailure(f"oracle gate exceeded at k={','.join(map(str, failed))}")
    return EXIT_OK


def cmd_experiment(opts, which: str) -> int:
    alphas = _alphas(opts)
    if which != "fig-gamma" and len(alphas) != 1:
        raise ParameterError("alpha", opts["alpha"], "this experiment takes a single value")
    params = ModelParams(alphas[0], _num(opts, "nu"), _num(opts, "n", int))
    threads = opts["threads"]
    config = experiments.ExperimentConfig(
        params=params,
        reps=_num(opts, "reps", int),
        k_max=_num(opts, "kmax", int),
        seed=gengraph.check_seed(_num(opts, "seed", int)),
        model=opts["model"],
        output_dir=Path(opts["out"] or "."),
        threads=experiments.default_threads() if threads is None else _num(opts, "threads", int),
        alphas=tuple(alphas) if which == "fig-gamma" else (),
    )
    path = experiments.EXPERIMENTS[which](config)
    print(path)
    return EXIT_OK


def cmd_plot(args, opts) -> int:
    report = Path(args.report)
    if not report.exists():
        raise FileNotFoundError(f"report not found: {report}")
    script = emit_plot_script(report, Path(opts["out"]) if opts["out"] else None)
    print(script)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="key=value file; explicit flags override it")
    common.add_argument("--alpha", help="power-law parameter (> 1/2); comma list for fig-gamma")
    common.add_argument("--nu", help="density parameter (> 0)")
    common.add_argument("--n", help="number of vertices")
    common.add_argument("--reps", help="replications")
    common.add_argument("--kmax", help="largest degree k reported")
    common.add_argument("--seed", help="master seed in [0, 2^64)")
    common.add_argument("--model", help="kpkvb, poissonized or box")
    common.add_argument("--out", help="output file or directory")
    common.add_argument("--threads", help="worker processes (default: all cores)")
    common.add_argument("--tol", help="relative gate for the oracle command")

    parser = argparse.ArgumentParser(prog="kpkvb", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("generate", parents=[common], help="sample a graph; write edges and coordinates")
    sub.add_parser("limits", parents=[common], help="tabulate gamma(k), its oracle and pi(k)")
    sub.add_parser("oracle", parents=[common], help="closed form vs quadrature, gated by --tol")
    exp = sub.add_parser("experiment", help="Monte-Carlo experiments")
    exp_sub = exp.add_subparsers(dest="experiment", required=True)
    for name in experiments.EXPERIMENTS:
        exp_sub.add_parser(name, parents=[common])
    plot = sub.add_parser("plot", parents=[common], help="emit a gnuplot script for a report")
    plot.add_argument("report")
    return parser


def run(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_INVALID
    try:
        opts = resolve(args)
        if args.command == "generate":
            return cmd_generate(opts)
        if args.command == "limits":
            return cmd_limits(opts)
        if args.command == "oracle":
            return cmd_oracle(opts)
        if args.command == "experiment":
            return cmd_experiment(opts, args.experiment)
        return cmd_plot(args, opts)
    except GateFailure as exc:
        print(f"kpkvb: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except ArithmeticError as exc:
        print(f"kpkvb: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except OSError as exc:
        print(f"kpkvb: {exc}", file=sys.stderr)
        return EXIT_IO
    except (ValueError, gengraph.ResourceLimitError) as exc:
        print(f"kpkvb: {exc}", file=sys.stderr)
        return EXIT_INVALID


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
