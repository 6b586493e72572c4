"""Compare the compiled and numpy kernel backends.

    python3 benchmarks/bench_kernels.py [--n 20000] [--features 6] [--classes 8]

Reports best-of-N wall time per kernel and backend, and checks that both
backends return identical arrays. The last row times a full leave-one-out
run with each backend swapped in.
"""

import argparse
import contextlib
import time

import numpy as np

from fqrc import _kernels
from fqrc.core import EvalParams
from fqrc.data import make_separable
from fqrc.experiment import run

KERNELS = ("bin_counts", "memberships", "class_products")


def best_of(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def tuple_arrays(rng, J, K):
    a = rng.uniform(-2, 2, size=(J, K))
    b = a + rng.uniform(0, 1, size=(J, K))
    alpha = np.where(rng.random((J, K)) < 0.2, 0.0, rng.uniform(0, 1.5, size=(J, K)))
    beta = np.where(rng.random((J, K)) < 0.2, 0.0, rng.uniform(0, 1.5, size=(J, K)))
    return a - alpha, a, b, b + beta, alpha, beta


@contextlib.contextmanager
def swapped(mod):
    saved = {name: getattr(_kernels, name) for name in KERNELS}
    try:
        for name in KERNELS:
            setattr(_kernels, name, getattr(mod, name))
        yield
    finally:
        for name, fn in saved.items():
            setattr(_kernels, name, fn)


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, default=20000)
    ap.add_argument("--features", type=int, default=6)
    ap.add_argument("--classes", type=int, default=8)
    ap.add_argument("--bins", type=int, default=50)
    ap.add_argument("--repeat", type=int, default=7)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args(argv)

    backends = {"python": _kernels.get_backend("python")}
    try:
        backends["cython"] = _kernels.get_backend("cython")
    except ImportError:
        print("compiled kernels not built; timing the numpy fallback only")

    rng = np.random.default_rng(args.seed)
    X = rng.uniform(-3, 4, size=(args.n, args.features))
    params = tuple_arrays(rng, args.features, args.classes)
    values = np.sort(rng.normal(size=args.n))
    edges = np.linspace(values[0], values[-1], args.bins + 1)

    cases = {
        "bin_counts": lambda m: m.bin_counts(values, edges),
        "memberships": lambda m: m.memberships(X, *params),
        "class_products": lambda m: m.class_products(X, *params),
    }

    outputs = {name: {b: np.asarray(fn(m)) for b, m in backends.items()}
               for name, fn in cases.items()}
    for name, per in outputs.items():
        arrays = list(per.values())
        if any(not np.array_equal(arrays[0], other) for other in arrays[1:]):
            raise SystemExit(f"backends disagree on {name}")

    print(f"N={args.n} J={args.features} K={args.classes} B={args.bins} "
          f"best of {args.repeat}")
    header = f"{'kernel':<16}" + "".join(f"{b:>12}" for b in backends)
    print(header + ("     speedup" if len(backends) == 2 else ""))

    def row(label, timings):
        line = f"{label:<16}" + "".join(f"{t * 1e3:>10.3f}ms" for t in timings.values())
        if len(timings) == 2:
            line += f"{timings['python'] / timings['cython']:>11.1f}x"
        print(line)

    for name, fn in cases.items():
        row(name, {b: best_of(lambda m=m: fn(m), args.repeat) for b, m in backends.items()})

    ds = make_separable(n_features=args.features, n_classes=args.classes, seed=args.seed)
    loo = {}
    for b, m in backends.items():
        with swapped(m):
            loo[b] = best_of(lambda: run(ds, "loo", "fqrc", EvalParams(), bins=args.bins), 3)
    row(f"loo (n={len(ds)})", loo)
    print("outputs identical across backends")


if __name__ == "__main__":
    main()
