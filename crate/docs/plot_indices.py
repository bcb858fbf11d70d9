#!/usr/bin/env python3
"""Plot the running validation indices from an `lbe` report directory.

Usage:
    lbe reproduce sine-map --out runs/sine
    python3 docs/plot_indices.py runs/sine [figure.png]

Reads `system_vs_model.csv` and `model_vs_extension.csv` and draws the
classical index against its uncertainty-widened counterpart for both
comparison steps: RMSE vs LRMSE on the left, MAPE vs LMAPE on the right.
Empty CSV cells (undefined running entries) are skipped.
"""

import csv
import sys
from pathlib import Path

import matplotlib.pyplot as plt


def read_report(path):
    rows = {"n": [], "rmse": [], "lrmse": [], "mape": [], "lmape": []}
    with open(path, newline="") as fh:
        for record in csv.DictReader(fh):
            if not record["rmse"]:
                continue  # before k_start or degenerate window
            rows["n"].append(int(record["n"]))
            for key in ("rmse", "lrmse", "mape", "lmape"):
                rows[key].append(float(record[key]))
    return rows


def main():
    if len(sys.argv) < 2:
        sys.exit(__doc__)
    run_dir = Path(sys.argv[1])
    out_file = sys.argv[2] if len(sys.argv) > 2 else None

    steps = [
        ("steps 1-2: system vs model", read_report(run_dir / "system_vs_model.csv")),
        ("step 3: model vs extension", read_report(run_dir / "model_vs_extension.csv")),
    ]

    fig, axes = plt.subplots(2, 2, figsize=(11, 7), sharex=True)
    for row, (title, data) in enumerate(steps):
        rmse_ax, mape_ax = axes[row]
        rmse_ax.plot(data["n"], data["rmse"], label="RMSE", color="tab:blue")
        rmse_ax.plot(data["n"], data["lrmse"], label="LRMSE", color="tab:red", ls="--")
        rmse_ax.set_ylabel(title, fontsize=9)
        rmse_ax.legend(fontsize=8)
        mape_ax.plot(data["n"], data["mape"], label="MAPE", color="tab:blue")
        mape_ax.plot(data["n"], data["lmape"], label="LMAPE", color="tab:red", ls="--")
        mape_ax.legend(fontsize=8)
    for ax in axes[1]:
        ax.set_xlabel("n")
    fig.suptitle(f"Running validation indices — {run_dir}")
    fig.tight_layout()

    if out_file:
        fig.savefig(out_file, dpi=150)
        print(f"wrote {out_file}")
    else:
        plt.show()


if __name__ == "__main__":
    main()
