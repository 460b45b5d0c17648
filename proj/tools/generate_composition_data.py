#!/usr/bin/env python3
"""Generate shift/rotation data for the composition functions CF1-CF4.

Writes files in the layout used by the CEC 2013 niching benchmark
distribution (whitespace-separated reals, row-major):

    optima.dat          shift vectors, one per row
    CF3_M_D<d>.dat      6 stacked d x d rotation matrices
    CF4_M_D<d>.dat      8 stacked d x d rotation matrices

The official files can be used instead by pointing the library at a
directory that contains them (see README).
"""

import argparse
import pathlib

import numpy as np

DIMS = (2, 3, 5, 10, 20)
ROWS = 10
COLS = 20
BOX = 4.0
MIN_SEP_2D = 1.5


def shift_vectors(rng):
    rows = []
    while len(rows) < ROWS:
        cand = rng.uniform(-BOX, BOX, COLS)
        if all(np.linalg.norm(cand[:2] - r[:2]) >= MIN_SEP_2D for r in rows):
            rows.append(cand)
    return np.array(rows)


def rotation(rng, d):
    q, r = np.linalg.qr(rng.standard_normal((d, d)))
    return q * np.sign(np.diag(r))


def write(path, matrix):
    with open(path, "w") as out:
        for row in matrix:
            out.write(" ".join(f"{v: .16e}" for v in row) + "\n")


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--out", default="data/cec2013")
    parser.add_argument("--seed", type=int, default=2013)
    args = parser.parse_args()

    rng = np.random.default_rng(args.seed)
    out = pathlib.Path(args.out)
    out.mkdir(parents=True, exist_ok=True)

    write(out / "optima.dat", shift_vectors(rng))
    for name, count in (("CF3", 6), ("CF4", 8)):
        for d in DIMS:
            stacked = np.vstack([rotation(rng, d) for _ in range(count)])
            write(out / f"{name}_M_D{d}.dat", stacked)


if __name__ == "__main__":
    main()
