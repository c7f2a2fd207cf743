"""Compare the compiled kernels against the numpy fallback.

Usage: python benchmarks/bench_kernels.py [--repeat N] [--quivers A4:RRR,A5:RLRL]
"""
import argparse
import timeit

import numpy as np

from tstrx import _kernels_py
from tstrx.quiver_rep import parse_quiver
from tstrx.torsion import closure_tables

try:
    from tstrx import _kernels as _kernels_cy
except ImportError:
    _kernels_cy = None


def _best(fn, repeat):
    return min(timeit.repeat(fn, number=1, repeat=repeat))


def bench_rref(repeat, sizes=(8, 32, 96), p=3):
    rng = np.random.default_rng(0)
    rows = []
    for n in sizes:
        a = rng.integers(0, p, size=(n, n), dtype=np.int64)
        row = {"kernel": f"rref {n}x{n} mod {p}", "python": _best(lambda: _kernels_py.rref_mod_p(a, p), repeat)}
        if _kernels_cy is not None:
            row["cython"] = _best(lambda: _kernels_cy.rref_mod_p(a, p), repeat)
        rows.append(row)
    return rows


def bench_closed_subsets(repeat, specs):
    rows = []
    for spec in specs:
        quot, ext = closure_tables(parse_quiver(spec))
        n = len(quot)
        row = {"kernel": f"closed_subsets {spec} ({n} inds)",
               "python": _best(lambda: _kernels_py.closed_subsets(n, quot, ext), repeat)}
        if _kernels_cy is not None:
            row["cython"] = _best(lambda: _kernels_cy.closed_subsets(n, quot, ext), repeat)
            assert np.array_equal(np.sort(_kernels_py.closed_subsets(n, quot, ext)),
                                  np.sort(_kernels_cy.closed_subsets(n, quot, ext)))
        rows.append(row)
    return rows


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--quivers", default="A4:RRR,A5:RRRR,A5:RLRL,A6:RRRRR")
    args = ap.parse_args(argv)
    rows = bench_rref(args.repeat) + bench_closed_subsets(args.repeat, args.quivers.split(","))
    print(f"{'kernel':<40} {'python s':>10} {'cython s':>10} {'speedup':>8}")
    for row in rows:
        cy = row.get("cython")
        speed = f"{row['python'] / cy:8.1f}" if cy else "     n/a"
        cy_s = f"{cy:10.4f}" if cy else "       n/a"
        print(f"{row['kernel']:<40} {row['python']:10.4f} {cy_s} {speed}")


if __name__ == "__main__":
    main()
