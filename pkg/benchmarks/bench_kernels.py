"""Compiled vs pure-Python exact kernels.

Times the two Gaussian-integer kernels on random inputs, then an
end-to-end exact classification of a small generated corpus with each
kernel set. Run with ``python benchmarks/bench_kernels.py``.
"""

import argparse
import time

import numpy as np

from ginv import kernels
from ginv.classes import classify_all
from ginv.generate import random_corpus

try:
    from ginv import _ckernels
except ImportError:
    _ckernels = None


def _rand(rng, n, lo=-9, hi=9):
    return (np.array(rng.integers(lo, hi + 1, (n, n)), dtype=object),
            np.array(rng.integers(lo, hi + 1, (n, n)), dtype=object))


def _best(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t)
    return best


def _with_kernels(mod, fn):
    saved = kernels._ckernels
    kernels._ckernels = mod
    try:
        return fn()
    finally:
        kernels._ckernels = saved


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--corpus", type=int, default=40)
    args = ap.parse_args(argv)
    if _ckernels is None:
        print("compiled kernels not built; only the pure-Python timings are shown")
    rng = np.random.default_rng(0)
    print(f"{'case':<28}{'python (ms)':>14}{'compiled (ms)':>16}{'speedup':>10}")
    for n in (4, 8, 16):
        a, b = _rand(rng, n), _rand(rng, n)
        g = _rand(rng, n, -2, 2)
        cases = {
            f"matmul n={n}": lambda: kernels.gi_matmul(*a, *b),
            f"gauss-jordan n={n}": lambda: kernels.gi_gauss_jordan(*g),
        }
        # through the dispatcher, so int64 overflow falls back exactly as in use
        for name, fn in cases.items():
            tp = _with_kernels(None, lambda: _best(fn, args.repeat))
            tc = _with_kernels(_ckernels, lambda: _best(fn, args.repeat)) if _ckernels else float("nan")
            print(f"{name:<28}{tp * 1e3:>14.3f}{tc * 1e3:>16.3f}{tp / tc:>10.1f}")

    corpus = [A for _, A in random_corpus(args.corpus, seed=3, backend="exact")]
    run = lambda: [classify_all(A) for A in corpus]
    tp = _with_kernels(None, lambda: _best(run, 1))
    tc = _with_kernels(_ckernels, lambda: _best(run, 1)) if _ckernels else float("nan")
    name = f"classify {args.corpus} exact"
    print(f"{name:<28}{tp * 1e3:>14.1f}{tc * 1e3:>16.1f}{tp / tc:>10.1f}")


if __name__ == "__main__":
    main()
