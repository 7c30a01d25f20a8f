"""Compare the pure-Python and compiled numeric backends.

Run from the repository root:

    python benchmarks/bench_backends.py

Prints wall time per backend for the hot kernels plus the largest
difference between the two result sets, which must be exactly zero.
"""

import time

import numpy as np

from frach import _corepy

try:
    from frach import _corec
except ImportError:
    _corec = None


def _time(fn, repeats=5):
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t0)
    return best, out


def bench_hfact(mod, xs):
    def run():
        return [mod.hfact(x, 0.37, 0.5) for x in xs]

    return _time(run)


def bench_sum(mod, values, nu, h, side):
    fn = mod.left_frac_sum_values if side == "left" else mod.right_frac_sum_values
    arr = np.ascontiguousarray(values)

    def run():
        return fn(arr, nu, h)

    return _time(run)


def main():
    rng = np.random.default_rng(42)
    xs = list(rng.uniform(0.1, 40.0, 20000))
    rows = []

    t_pure, r_pure = bench_hfact(_corepy, xs)
    if _corec is not None:
        t_fast, r_fast = bench_hfact(_corec, xs)
        diff = max(abs(a - b) for a, b in zip(r_pure, r_fast))
        rows.append(("hfact x20000", t_pure, t_fast, diff))

    for n in (64, 256, 1024):
        values = rng.uniform(-1.0, 1.0, n)
        for side in ("left", "right"):
            t_pure, r_pure = bench_sum(_corepy, values, 0.5, 0.5, side)
            if _corec is not None:
                t_fast, r_fast = bench_sum(_corec, values, 0.5, 0.5, side)
                diff = float(np.max(np.abs(np.asarray(r_pure) - np.asarray(r_fast))))
                rows.append((f"{side} sum n={n}", t_pure, t_fast, diff))

    if _corec is None:
        print("compiled backend not built; nothing to compare")
        t_pure, _ = bench_hfact(_corepy, xs)
        print(f"pure hfact x20000: {t_pure * 1e3:.1f} ms")
        return

    print(f"{'kernel':<16} {'pure [ms]':>10} {'compiled [ms]':>14} "
          f"{'speedup':>8} {'max |diff|':>11}")
    for name, t_pure, t_fast, diff in rows:
        print(f"{name:<16} {t_pure * 1e3:>10.2f} {t_fast * 1e3:>14.2f} "
              f"{t_pure / t_fast:>8.1f} {diff:>11.3e}")


if __name__ == "__main__":
    main()
