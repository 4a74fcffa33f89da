"""Figure rendering. Every function returns the list of values it consumed
(checksum-logged by the CLI) and performs no computation on them beyond
drawing; running means and histogram bins come precomputed in the inputs."""

from __future__ import annotations

import math

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from .reader import CsvReport, InputError

_FIGSIZE = (8.0, 5.0)
_DPI = 120


def _finish(fig, out: str):
    fig.tight_layout()
    fig.savefig(out, dpi=_DPI)
    plt.close(fig)


def render_group_hist(summary: dict, out: str, title: str | None = None) -> list:
    means = summary.get("group_means") or []
    if not means:
        raise InputError("summary has no group means; nothing to plot")
    hist = summary.get("histogram") or {}
    edges, counts = hist.get("edges") or [], hist.get("counts") or []
    if len(edges) != len(counts) + 1:
        raise InputError("summary histogram is malformed (edges/counts mismatch)")
    mean = summary.get("mean")

    fig, ax = plt.subplots(figsize=_FIGSIZE)
    widths = [b - a for a, b in zip(edges, edges[1:])]
    ax.bar(edges[:-1], counts, width=widths, align="edge",
           color="steelblue", edgecolor="white")
    if mean is not None:
        ax.axvline(mean, color="crimson", linestyle="--",
                   label=f"overall mean {mean:.4f}")
        ax.legend()
    ax.set_xlabel(f"group-mean bias (normalizer {summary.get('normalizer', '?')})")
    ax.set_ylabel("groups")
    ax.set_title(title or f"{summary.get('family', '?')}: "
                 f"{len(means)} groups of {summary.get('group_size', '?')}")
    _finish(fig, out)
    return list(means) + list(edges) + list(counts) + ([mean] if mean is not None else [])


def render_bias_trend(report: CsvReport, out: str, title: str | None = None,
                      summary: dict | None = None) -> list:
    primes = report.ints("prime")
    bias_p = report.floats("bias_p")
    bias_p32 = report.floats("bias_p32")
    run_p = report.floats("run_mean_p")
    run_p32 = report.floats("run_mean_p32")

    fig, ax = plt.subplots(figsize=_FIGSIZE)
    ax.plot(primes, bias_p, ".", color="lightsteelblue", markersize=3,
            label="per-prime bias (integer exponent)")
    ax.plot(primes, run_p, color="navy", label="running mean (integer exponent)")
    ax.plot(primes, run_p32, color="darkorange", label="running mean (half exponent)")
    # square-root-cancellation envelope +-1/sqrt(n); n is the row index, not data
    env = [1 / math.sqrt(n) for n in range(1, len(primes) + 1)]
    ax.plot(primes, env, color="gray", linestyle=":", linewidth=1,
            label="±1/√N reference")
    ax.plot(primes, [-e for e in env], color="gray", linestyle=":", linewidth=1)
    if summary is not None and summary.get("mean") is not None:
        ax.axhline(summary["mean"], color="crimson", linestyle="--", linewidth=1,
                   label=f"mean {summary['mean']:.4f}")
    ax.set_xlabel("p")
    ax.set_ylabel("bias")
    ax.legend(fontsize=8)
    ax.set_title(title or "second-moment bias trend")
    _finish(fig, out)
    return primes + bias_p + bias_p32 + run_p + run_p32


def render_sym_trend(report: CsvReport, out: str, title: str | None = None) -> list:
    primes = report.ints("prime")
    ks = report.ints("k")
    normalized = report.floats("normalized")

    fig, ax = plt.subplots(figsize=_FIGSIZE)
    for k in sorted(set(ks)):
        xs = [p for p, kk in zip(primes, ks) if kk == k]
        ys = [v for v, kk in zip(normalized, ks) if kk == k]
        ax.plot(xs, ys, ".-", markersize=3, linewidth=0.8, label=f"k = {k}")
    ax.axhline(0, color="gray", linewidth=0.8)
    ax.set_xlabel("p")
    ax.set_ylabel("sym sum / √p")
    ax.legend()
    ax.set_title(title or "Chebyshev-recursion sums")
    _finish(fig, out)
    return primes + ks + normalized


def render_odd_coeff(report: CsvReport, out: str, title: str | None = None) -> list:
    primes = report.ints("prime")
    coeff = report.floats("bias_p")
    run = report.floats("run_mean_p")

    fig, ax = plt.subplots(figsize=_FIGSIZE)
    ax.plot(primes, coeff, ".", color="lightsteelblue", markersize=3,
            label="per-prime coefficient")
    ax.plot(primes, run, color="navy", label="running mean")
    ax.axhline(0, color="gray", linewidth=0.8)
    ax.set_xlabel("p")
    ax.set_ylabel("c_r(p)")
    ax.legend()
    ax.set_title(title or "odd-moment coefficient")
    _finish(fig, out)
    return primes + coeff + run
