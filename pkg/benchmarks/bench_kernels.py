"""Compare the compiled and numpy kernel backends.

Usage::

    python3 benchmarks/bench_kernels.py [--size 512] [--repeats 20]

Times soft thresholding, one DB4 analysis/synthesis pass over rows, and a
full NIL1M solve with the DB4 basis for each available backend.
"""

import argparse
import timeit

import numpy as np

from ncbinsar import kernels
from ncbinsar.raster import ResolutionRatio
from ncbinsar.solver import SolverConfig, nil1m
from ncbinsar.transforms import SparseTransform


def use_backend(name):
    mod = kernels.get_backend(name)
    kernels.soft_threshold = mod.soft_threshold
    kernels.db4_analyze_rows = mod.db4_analyze_rows
    kernels.db4_synthesize_rows = mod.db4_synthesize_rows
    return mod


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--size", type=int, default=512)
    ap.add_argument("--repeats", type=int, default=20)
    ap.add_argument("--iters", type=int, default=20, help="NIL1M iterations in the solve benchmark")
    args = ap.parse_args(argv)

    rng = np.random.default_rng(0)
    n = args.size
    v = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    x = rng.standard_normal((n, n))
    theta = np.exp(1j * rng.uniform(-np.pi, np.pi, (n, n)))
    ratio = ResolutionRatio.parse("1/16", "1")
    y_s = rng.standard_normal(ratio.band_shape((n, n))) + 0j
    cfg = SolverConfig(gamma=1.0, n_iter=args.iters, transform=SparseTransform("db4"))

    backends = ["python"] + (["cython"] if kernels._ckernels is not None else [])
    results = {}
    for name in backends:
        mod = use_backend(name)
        cases = {
            "soft_threshold": lambda: mod.soft_threshold(v, 0.5),
            "db4_analyze_rows": lambda: mod.db4_analyze_rows(x),
            "db4_synthesize_rows": lambda: mod.db4_synthesize_rows(x),
            f"nil1m_db4_{args.iters}it": lambda: nil1m(y_s, theta, ratio, cfg),
        }
        for case, fn in cases.items():
            reps = 3 if case.startswith("nil1m") else args.repeats
            results[name, case] = min(timeit.repeat(fn, number=1, repeat=reps))

    print(f"size {n}x{n}, best of repeats, milliseconds")
    print(f"{'kernel':<22}" + "".join(f"{b:>12}" for b in backends) + ("     speedup" if len(backends) == 2 else ""))
    for case in dict.fromkeys(c for _, c in results):
        row = [results[b, case] * 1e3 for b in backends]
        line = f"{case:<22}" + "".join(f"{t:12.2f}" for t in row)
        if len(backends) == 2:
            line += f"{row[0] / row[1]:11.2f}x"
        print(line)
    use_backend(kernels.BACKEND)


if __name__ == "__main__":
    main()
