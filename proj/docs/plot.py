#!/usr/bin/env python3
"""Overlay eigenvalue clouds on traced domain boundaries.

    python3 docs/plot.py out/cloud.csv out/domain.csv -o cloud.png

Needs matplotlib. Any number of cloud (trial,re,im) and polyline
(loop_id,vertex_index,re,im) files may be given.
"""
import argparse
import csv

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt


def read(path):
    with open(path, newline="") as fh:
        rows = list(csv.DictReader(fh))
    return rows, (rows[0].keys() if rows else [])


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("files", nargs="+")
    ap.add_argument("-o", "--out", default="plot.png")
    args = ap.parse_args()

    fig, ax = plt.subplots(figsize=(6, 6))
    for path in args.files:
        rows, cols = read(path)
        if "loop_id" in cols:
            loops = {}
            for r in rows:
                loops.setdefault(r["loop_id"], []).append((float(r["re"]), float(r["im"])))
            for pts in loops.values():
                pts.append(pts[0])
                ax.plot(*zip(*pts), lw=1.2, color="k")
        elif "trial" in cols:
            ax.scatter([float(r["re"]) for r in rows], [float(r["im"]) for r in rows], s=2, alpha=0.5)
    ax.set_aspect("equal")
    ax.grid(alpha=0.3)
    fig.savefig(args.out, dpi=150, bbox_inches="tight")


if __name__ == "__main__":
    main()
