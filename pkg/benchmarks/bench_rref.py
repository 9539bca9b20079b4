"""Benchmark the compiled row-reduction kernel against the pure fallback.

Runs the same workloads through koszulcalc._rref_py and (when built)
koszulcalc._rref_cy and prints a timing table.  Workloads mirror the
package's hot paths: sparse differential-style matrices over Q and
GF(p), and near-dense small slices.

    python benchmarks/bench_rref.py [--repeat 3]
"""

from __future__ import annotations

import argparse
import random
import time
from fractions import Fraction

from koszulcalc import _rref_py

try:
    from koszulcalc import _rref_cy
except ImportError:
    _rref_cy = None


def sparse_q(rng, nrows, ncols, nnz_per_row):
    rows = []
    for _ in range(nrows):
        row = {}
        for _ in range(nnz_per_row):
            row[rng.randrange(ncols)] = Fraction(rng.randint(-3, 3) or 1)
        rows.append(row)
    return rows


def dense_q(rng, nrows, ncols):
    return [
        {c: Fraction(rng.randint(-9, 9)) for c in range(ncols)
         if rng.random() < 0.6}
        for _ in range(nrows)
    ]


def sparse_mod(rng, nrows, ncols, nnz_per_row, p):
    rows = []
    for _ in range(nrows):
        row = {}
        for _ in range(nnz_per_row):
            row[rng.randrange(ncols)] = rng.randrange(1, p)
        rows.append(row)
    return rows


def dense_mod(rng, nrows, ncols, p):
    return [
        {c: rng.randrange(1, p) for c in range(ncols) if rng.random() < 0.6}
        for _ in range(nrows)
    ]


WORKLOADS = [
    ("Q sparse 600x300, 4/row", lambda rng: ("frac", sparse_q(rng, 600, 300, 4), 300)),
    ("Q sparse 1200x500, 3/row", lambda rng: ("frac", sparse_q(rng, 1200, 500, 3), 500)),
    ("Q dense 120x100", lambda rng: ("frac", dense_q(rng, 120, 100), 100)),
    ("GF(5) sparse 800x400, 4/row", lambda rng: ("mod5", sparse_mod(rng, 800, 400, 4, 5), 400)),
    ("GF(5) dense 250x200", lambda rng: ("mod5", dense_mod(rng, 250, 200, 5), 200)),
    ("GF(10007) dense 250x200", lambda rng: ("mod10007", dense_mod(rng, 250, 200, 10007), 200)),
]


def run(kernel, kind, rows, ncols):
    data = [dict(r) for r in rows]
    t0 = time.perf_counter()
    if kind == "frac":
        out = kernel.rref_frac(data, ncols)
    elif kind == "mod5":
        out = kernel.rref_mod(data, ncols, 5)
    else:
        out = kernel.rref_mod(data, ncols, 10007)
    return time.perf_counter() - t0, out


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()

    print(f"{'workload':32} {'python':>10} {'cython':>10} {'speedup':>9}")
    for name, make in WORKLOADS:
        best_py = best_cy = None
        for rep in range(args.repeat):
            rng = random.Random(1000 + rep)
            kind, rows, ncols = make(rng)
            t_py, out_py = run(_rref_py, kind, rows, ncols)
            best_py = t_py if best_py is None else min(best_py, t_py)
            if _rref_cy is not None:
                t_cy, out_cy = run(_rref_cy, kind, rows, ncols)
                assert out_cy == out_py, f"backends disagree on {name}"
                best_cy = t_cy if best_cy is None else min(best_cy, t_cy)
        if best_cy is None:
            print(f"{name:32} {best_py:9.4f}s {'(absent)':>10}")
        else:
            print(f"{name:32} {best_py:9.4f}s {best_cy:9.4f}s {best_py / best_cy:8.2f}x")
    if _rref_cy is None:
        print("\ncompiled kernel not built; install with Cython to compare")


if __name__ == "__main__":
    main()
