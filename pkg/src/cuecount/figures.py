"""Matplotlib renderings of the report tables; every CLI report command
writes one of these PNGs next to its CSV unless asked not to."""

from __future__ import annotations

import math

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

__all__ = [
    "save_distance_chain",
    "save_variance_sweep",
    "save_clt_sweep",
    "save_figure1",
    "save_sine_sweep",
    "save_intensity_scatter",
    "save_angle_histogram",
]


def save_distance_chain(report, path) -> None:
    labels = ["tv", "w1", "coupling", "cs", "hs", "closed form"]
    values = [
        report.tv_exact,
        report.w1_exact,
        report.coupling_bound,
        report.cs_bound,
        report.hs_bound,
        report.closed_form_bound,
    ]
    fig, ax = plt.subplots(figsize=(6.4, 4.0))
    ax.bar(labels, values, color="#4878a8")
    ax.set_yscale("log")
    ax.set_ylabel("distance / bound")
    ax.set_title(f"count-distance bound chain, n={report.n}, m={report.m}")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def save_variance_sweep(rows, path) -> None:
    thetas = [r["theta"] for r in rows]
    fig, ax = plt.subplots(figsize=(6.4, 4.0))
    ax.plot(thetas, [r["var_formula"] for r in rows], "o-", label="variance (formula)")
    ax.plot(thetas, [r["var_pmf"] for r in rows], "x", label="variance (spectrum)")
    uppers = [r["upper"] for r in rows]
    ax.plot(thetas, uppers, "--", color="gray", label="upper bound")
    lo_pts = [(t, r["lower"]) for t, r in zip(thetas, rows) if r["lower"] is not None]
    if lo_pts:
        ax.plot(*zip(*lo_pts), ":", color="gray", label="lower bound")
    ax.set_xlabel("theta")
    ax.set_ylabel("Var N")
    ax.set_title(f"count variance vs window half-width, n={rows[0]['n']}, m={rows[0]['m']}")
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def save_clt_sweep(reports, path) -> None:
    nts = [r.n * r.theta for r in reports]
    fig, ax = plt.subplots(figsize=(6.4, 4.0))
    ax.loglog(nts, [r.exact_ks for r in reports], "o-", label="exact KS")
    finite = [r for r in reports if not math.isnan(r.lower_bound)]
    if finite:
        ax.loglog(
            [r.n * r.theta for r in finite],
            [r.lower_bound for r in finite],
            ":",
            color="gray",
            label="lower bound",
        )
    finite_up = [r for r in reports if not math.isnan(r.upper_bound)]
    if finite_up:
        ax.loglog(
            [r.n * r.theta for r in finite_up],
            [r.upper_bound for r in finite_up],
            "--",
            color="gray",
            label="upper bound",
        )
    ax.set_xlabel("n theta")
    ax.set_ylabel("KS distance from Gaussian")
    ax.set_title("Gaussian-approximation rate of the count")
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def save_figure1(result, path) -> None:
    rows = result.curve_rows()
    ts = [r[0] for r in rows]
    fig, ax = plt.subplots(figsize=(6.4, 4.0))
    ax.step(ts, [r[1] for r in rows], where="post", color="#c23728", label="plain count ECDF")
    ax.step(ts, [r[2] for r in rows], where="post", color="#3c8a4e", label="stretched count ECDF")
    ax.plot(ts, [r[3] for r in rows], "k:", label="matched Gaussian")
    ax.set_xlabel("count")
    ax.set_ylabel("CDF")
    ax.set_title(
        f"n={result.n}, theta={result.theta:g}, m={result.m}, "
        f"{result.trials} trials"
    )
    ax.legend(loc="lower right")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def save_sine_sweep(rows, path) -> None:
    ns = [r["n"] for r in rows]
    fig, ax = plt.subplots(figsize=(6.4, 4.0))
    ax.loglog(ns, [r["w1"] for r in rows], "o-", label="exact w1")
    ax.loglog(ns, [r["bound"] for r in rows], "--", color="gray", label="5 |A| diam / n^1.5")
    ax.set_xlabel("n")
    ax.set_ylabel("w1 to sine-process count")
    ax.set_title("bulk-limit count comparison")
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def save_intensity_scatter(rows, path) -> None:
    plain = [r[4] for r in rows]
    stretched = [r[5] for r in rows]
    top = max(max(plain), max(stretched), 1e-12)
    fig, ax = plt.subplots(figsize=(4.8, 4.8))
    ax.scatter(plain, stretched, s=8, alpha=0.5)
    ax.plot([0, top], [0, top], "k--", linewidth=1, label="equality")
    ax.set_xlabel("rho_k, plain")
    ax.set_ylabel("rho_k, stretched window")
    ax.set_title("joint-intensity domination")
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def save_angle_histogram(batch, path) -> None:
    fig, ax = plt.subplots(figsize=(6.4, 4.0))
    ax.hist(batch.angles.ravel(), bins=60, density=True, color="#4878a8")
    ax.axhline(1.0 / (2.0 * np.pi), color="k", linestyle="--", label="uniform density")
    ax.set_xlabel("eigenangle")
    ax.set_ylabel("density")
    ax.set_title(f"{batch.trials} trials, dimension {batch.dimension}")
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
