"""Compare the compiled and pure-Python kernels.

    python3 benchmarks/bench_kernels.py [--repeat 5]
"""

import argparse
import timeit

import numpy as np

from geodecay._kernels import _fallback

try:
    from geodecay._kernels import _core
except ImportError:
    _core = None


def _sweep_case(n, seed=0):
    rng = np.random.default_rng(seed)
    psi = rng.normal(size=1 << n) + 1j * rng.normal(size=1 << n)
    psi /= np.linalg.norm(psi)
    factors = rng.normal(size=(n, 2)) + 1j * rng.normal(size=(n, 2))
    factors /= np.linalg.norm(factors, axis=1, keepdims=True)
    return psi, factors


def _hull_case(size, seed=0):
    xs = np.linspace(0.0, 1.0, size)
    ys = xs ** 2 + 0.01 * np.random.default_rng(seed).normal(size=size)
    return xs, ys


def bench(fn, args, repeat, number):
    best = min(timeit.repeat(lambda: fn(*[a.copy() for a in args]), repeat=repeat, number=number))
    return best / number


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    backends = [("python", _fallback)] + ([("cython", _core)] if _core else [])
    print(f"{'kernel':<18}" + "".join(f"{name:>14}" for name, _ in backends) + f"{'speedup':>10}")
    cases = [(f"sweep N={n}", "sweep", _sweep_case(n), 200 if n < 12 else 10) for n in (4, 8, 12)]
    cases += [(f"lower_hull {m}", "lower_hull", _hull_case(m), 20) for m in (2001, 20001)]
    for label, name, data, number in cases:
        times = [bench(getattr(mod, name), data, args.repeat, number) for _, mod in backends]
        speedup = f"{times[0] / times[-1]:9.1f}x" if len(times) > 1 else "      n/a"
        print(f"{label:<18}" + "".join(f"{t * 1e6:12.1f}us" for t in times) + f" {speedup}")


if __name__ == "__main__":
    main()
