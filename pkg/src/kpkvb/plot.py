"""Gnuplot script emission for experiment reports.

Scripts address columns by header name and the CSV by a path relative to
the script, so a report directory can be moved as a unit.
"""

from __future__ import annotations

import os
from pathlib import Path

from .experiments import read_csv

LAYOUTS = {
    "fig-gammak": {
        "key": ("k", "c_mean", "c_se", "gamma_k"),
        "x": "k", "xlabel": "k", "ylabel": "c(k)", "limit": "gamma_k", "mean": "c_mean",
        "se": "c_se", "limit_title": "gamma(k)", "logy": False,
    },
    "fig-gamma": {
        "key": ("alpha", "c_mean", "c_se", "gamma"),
        "x": "alpha", "xlabel": "alpha", "ylabel": "c(G)", "limit": "gamma", "mean": "c_mean",
        "se": "c_se", "limit_title": "gamma", "logy": False,
    },
    "degrees": {
        "key": ("k", "frac_mean", "frac_se", "degree_pmf"),
        "x": "k", "xlabel": "k", "ylabel": "N(k)/n", "limit": "degree_pmf", "mean": "frac_mean",
        "se": "frac_se", "limit_title": "pi(k)", "logy": True,
    },
}


def detect_layout(columns: list[str]) -> str:
    for name, lay in LAYOUTS.items():
        if all(c in columns for c in lay["key"]):
            return name
    raise ValueError(f"unrecognised report columns: {','.join(columns)}")


def render_script(csv_rel: str, layout: str, title: str, png_name: str) -> str:
    lay = LAYOUTS[layout]
    lines = [
        "set terminal pngcairo size 800,600",
        f"set output '{png_name}'",
        "set datafile separator ','",
        "set datafile commentschars '#'",
        "set key autotitle columnheader",
        f"set title '{title}'",
        f"set xlabel '{lay['xlabel']}'",
        f"set ylabel '{lay['ylabel']}'",
    ]
    if lay["logy"]:
        lines.append("set logscale y")
    lines.append(
        f"plot '{csv_rel}' using \"{lay['x']}\":\"{lay['limit']}\" with lines title '{lay['limit_title']}', \\\n"
        f"     '{csv_rel}' using \"{lay['x']}\":\"{lay['mean']}\":\"{lay['se']}\" "
        "with yerrorbars pointtype 5 title 'simulation'"
    )
    return "\n".join(lines) + "\n"


def emit_plot_script(report: Path, script: Path | None = None) -> Path:
    report = Path(report)
    meta, columns, _ = read_csv(report)
    layout = detect_layout(columns)
    script = Path(script) if script else report.with_suffix(".gp")
    rel = os.path.relpath(report.resolve(), script.resolve().parent)
    title = ", ".join(f"{k}={meta[k]}" for k in ("alpha", "nu", "n", "reps") if k in meta)
    text = render_script(Path(rel).as_posix(), layout, title, script.with_suffix(".png").name)
    script.write_text(text, encoding="utf-8")
    return script
