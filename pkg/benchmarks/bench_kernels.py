"""Compiled vs pure-Python kernels: edge construction and triangle counts.

Usage: python3 benchmarks/bench_kernels.py [--sizes 1000,10000,50000] [--repeat 3]
"""

import argparse
import time

import numpy as np

from kpkvb import kernels
from kpkvb.gengraph import _box_coords, _polar_coords, box_width, box_mass
from kpkvb.params import ModelParams


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t)
    return min(times), out


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", default="1000,10000,50000")
    ap.add_argument("--alpha", type=float, default=0.8)
    ap.add_argument("--nu", type=float, default=1.0)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()

    impls = {"python": kernels.backend("python")}
    try:
        impls["cython"] = kernels.backend("cython")
    except ImportError:
        print("compiled backend not built; timing the fallback only")

    print(f"{'n':>8} {'task':>10} " + " ".join(f"{name:>10}" for name in impls) + "   speedup")
    for n in (int(s) for s in args.sizes.split(",")):
        p = ModelParams(args.alpha, args.nu, n)
        r, theta = _polar_coords(p, 1, n)
        x, y = _box_coords(p, 1, int(round(box_mass(p))))
        tasks = {
            "polar": lambda impl: kernels.polar_adjacency(r, theta, p.R, impl),
            "box": lambda impl: kernels.box_adjacency(x, y, box_width(p.R), impl),
        }
        indptr, indices = kernels.polar_adjacency(r, theta, p.R)
        tasks["triangles"] = lambda impl: kernels.triangle_counts(indptr, indices, impl)
        for task, fn in tasks.items():
            timings, results = {}, {}
            for name, impl in impls.items():
                timings[name], results[name] = best_of(lambda: fn(impl), args.repeat)
            outs = [out if isinstance(out, tuple) else (out,) for out in results.values()]
            same = all(all(np.array_equal(u, v) for u, v in zip(o, outs[0])) for o in outs)
            speed = timings["python"] / timings["cython"] if "cython" in timings else float("nan")
            cols = " ".join(f"{timings[name]:10.4f}" for name in impls)
            print(f"{n:8d} {task:>10} {cols}   {speed:6.1f}x{'' if same else '  MISMATCH'}")


if __name__ == "__main__":
    main()
