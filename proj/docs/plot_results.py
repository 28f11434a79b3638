#!/usr/bin/env python3
"""Plots for experiment-coverage and experiment-logistics CSVs.

    python3 docs/plot_results.py --coverage cov.csv --logistics log.csv --out figs/
"""
import argparse
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import pandas as pd


def coverage_table(path):
    df = pd.read_csv(path)
    return df.groupby(["env", "density_pct", "policy"])["pct"].mean().unstack("policy")


def plot_coverage(path, out):
    table = coverage_table(path)
    envs = sorted(table.index.get_level_values("env").unique())
    fig, axes = plt.subplots(1, len(envs), figsize=(4 * len(envs), 3.4), sharey=True, squeeze=False)
    for ax, env in zip(axes[0], envs):
        sub = table.loc[env]
        for policy in sub.columns:
            ax.plot(sub.index, sub[policy], marker="o", label=policy)
        ax.set_title(f"Env{env}")
        ax.set_xlabel("barrel density [%]")
        ax.grid(alpha=0.3)
    axes[0][0].set_ylabel("waypoints reached [%]")
    axes[0][-1].legend(title="policy")
    fig.tight_layout()
    fig.savefig(out / "coverage.png", dpi=150)
    print(table.round(2).to_string())


def plot_logistics(path, out):
    df = pd.read_csv(path)
    g = df.groupby("n_hotspots").agg(tour_h=("tour_h", "mean"), tour_sd=("tour_h", "std"), baseline_h=("baseline_h", "mean"))
    fig, ax = plt.subplots(figsize=(5, 3.4))
    ax.errorbar(g.index, g["tour_h"], yerr=g["tour_sd"].fillna(0), marker="o", capsize=3, label="hotspot tour")
    ax.plot(g.index, g["baseline_h"], "--", label="full sweep")
    ax.set_xlabel("hotspots")
    ax.set_ylabel("time [h]")
    ax.grid(alpha=0.3)
    ax.legend()
    fig.tight_layout()
    fig.savefig(out / "logistics.png", dpi=150)
    print(g.round(3).to_string())


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--coverage")
    ap.add_argument("--logistics")
    ap.add_argument("--out", default=".")
    args = ap.parse_args()
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    if args.coverage:
        plot_coverage(args.coverage, out)
    if args.logistics:
        plot_logistics(args.logistics, out)


if __name__ == "__main__":
    main()
