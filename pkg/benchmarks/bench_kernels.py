"""Benchmark the compiled scan kernels against the pure-Python twins.

Runs each kernel on a fixed workload under both backends, checks they agree,
and prints a small table with the speedup.  Usage:

    python3 benchmarks/bench_kernels.py [--repeat N]
"""

import argparse
import time

from qrlab import _pykernels

try:
    from qrlab import _ckernels
except ImportError:
    _ckernels = None

# Workloads are sized so the slower backend takes on the order of a second:
# big enough to swamp call overhead, small enough to rerun casually.
PRIMES_1000 = [p for p in range(3, 1000, 2) if all(p % d for d in range(3, p, 2))]


def work_gauss(mod):
    """Every Gauss-lemma flip count for p < 200."""
    total = 0
    for p in PRIMES_1000:
        if p >= 200:
            break
        for a in range(1, p):
            total += mod.gauss_flip_count(a, p)
    return total


def work_lattice(mod):
    """Lattice band counts for all odd prime pairs p < q < 100."""
    small = [p for p in PRIMES_1000 if p < 100]
    total = 0
    for i, p in enumerate(small):
        for q in small[i + 1 :]:
            m, n = mod.lattice_band_counts(p, q)
            total += m + n
    return total


def work_factor(mod):
    """Trial-divide a strip of numbers around 10^12."""
    total = 0
    for n in range(10**12, 10**12 + 300):
        pairs, rest = mod.trial_factor_range(n, 1, 10**6)
        total += rest + sum(p * e for p, e in pairs)
    return total


def bench(fn, mod, repeat):
    """Best-of-`repeat` wall time and the checksum fn returns."""
    best = float("inf")
    value = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        value = fn(mod)
        best = min(best, time.perf_counter() - t0)
    return best, value


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3, help="take best of N runs")
    args = ap.parse_args()

    if _ckernels is None:
        print("compiled backend not importable; nothing to compare")
        return

    print(f"{'kernel':<22} {'python':>10} {'compiled':>10} {'speedup':>8}")
    for name, fn in (
        ("gauss_flip_count", work_gauss),
        ("lattice_band_counts", work_lattice),
        ("trial_factor_range", work_factor),
    ):
        t_py, v_py = bench(fn, _pykernels, args.repeat)
        t_c, v_c = bench(fn, _ckernels, args.repeat)
        assert v_py == v_c, f"{name}: backends disagree ({v_py} != {v_c})"
        print(f"{name:<22} {t_py:>9.3f}s {t_c:>9.3f}s {t_py / t_c:>7.1f}x")


if __name__ == "__main__":
    main()
