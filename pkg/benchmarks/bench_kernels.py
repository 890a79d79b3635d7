"""Time the compiled kernels against the pure-Python fallback (and LAPACK).

    python benchmarks/bench_kernels.py --sizes 200 500 1000 --tree-sizes 10000 100000
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from grafen import _pykernels
from grafen.random_models import ba_tree
from grafen.spectral import adjacency_matrix

try:
    from grafen import _kernels
except ImportError:
    _kernels = None


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--sizes", type=int, nargs="+", default=[200, 500, 1000])
    ap.add_argument("--tree-sizes", type=int, nargs="+", default=[10_000, 100_000])
    ap.add_argument("--alpha", type=float, default=1.0)
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--python-max", type=int, default=1000, help="skip the fallback eigensolver above this n")
    args = ap.parse_args(argv)
    if _kernels is None:
        print("compiled extension not built; only the fallback and LAPACK are timed")

    print("eigenvalues of a BA tree adjacency matrix (seconds, best of %d)" % args.repeat)
    print(f"{'n':>6} {'compiled':>10} {'python':>10} {'lapack':>10} {'max err':>10}")
    for n in args.sizes:
        a = adjacency_matrix(ba_tree(n, args.alpha, 0))
        ref = np.linalg.eigvalsh(a)[::-1]
        t_lapack = best_of(lambda: np.linalg.eigvalsh(a), args.repeat)
        t_c = err = float("nan")
        if _kernels is not None:
            t_c = best_of(lambda: _kernels.symmetric_eigenvalues(a), args.repeat)
            err = float(np.max(np.abs(_kernels.symmetric_eigenvalues(a) - ref)))
        t_py = float("nan")
        if n <= args.python_max:
            t_py = best_of(lambda: _pykernels.symmetric_eigenvalues(a), 1)
        print(f"{n:>6} {t_c:>10.4f} {t_py:>10.4f} {t_lapack:>10.4f} {err:>10.2e}")

    print()
    print(f"preferential attachment, alpha={args.alpha} (seconds)")
    print(f"{'n':>8} {'compiled':>10} {'python':>10} {'identical':>10}")
    for n in args.tree_sizes:
        u = np.random.default_rng(0).random(n - 2)
        t_py = best_of(lambda: _pykernels.attach_parents(n, args.alpha, u), 1)
        same = "-"
        t_c = float("nan")
        if _kernels is not None:
            t_c = best_of(lambda: _kernels.attach_parents(n, args.alpha, u), args.repeat)
            same = str(np.array_equal(_kernels.attach_parents(n, args.alpha, u), _pykernels.attach_parents(n, args.alpha, u)))
        print(f"{n:>8} {t_c:>10.4f} {t_py:>10.4f} {same:>10}")


if __name__ == "__main__":
    main()
