"""Time the compiled kernels against the pure NumPy fallback.

Usage: python benchmarks/bench_kernels.py [--repeat R]
"""
import argparse
import timeit

import numpy as np

from qportrait import _fallback
from qportrait.hermitian import random_hermitian

try:
    from qportrait import _kernels
except ImportError:
    _kernels = None


def _cases(rng):
    for dim in (2, 4, 8, 16, 32):
        h = np.ascontiguousarray(random_hermitian(dim, rng))
        yield f"jacobi_eigh n={dim}", lambda mod, h=h: mod.jacobi_eigh(h, 1e-13, 100)

    def spectra(dim):
        out = []
        for _ in range(2):
            g = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
            w, v, _, _ = _fallback.jacobi_eigh(np.ascontiguousarray(g @ g.conj().T / np.trace(g @ g.conj().T).real), 1e-13, 100)
            out += [w, v]
        return out

    for dim in (4, 8):
        p, u, q, v = spectra(dim)
        yield f"relative_entropy_spectra n={dim}", lambda mod, a=(p, u, q, v): mod.relative_entropy_spectra(*a, 1e-12, 1e-10)

    k = 30
    blocks = (rng.random(k), rng.random(k) * 0.1 + 0j, rng.random(k))
    args = (*blocks, *blocks)
    yield f"qubit_relative_entropies k={k}", lambda mod: mod.qubit_relative_entropies(*args, 1e-12, 1e-10)

    x = rng.standard_normal(2 * 36)
    yield "gram_density n=6", lambda mod: mod.gram_density(x, 6, 1e-12)


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args()
    if _kernels is None:
        print("compiled extension not built; only the fallback can run")
    rng = np.random.default_rng(7)
    print(f"{'kernel':34s} {'cython us':>11s} {'python us':>11s} {'speedup':>8s}")
    for name, call in _cases(rng):
        times = {}
        for label, mod in (("cython", _kernels), ("python", _fallback)):
            if mod is None:
                continue
            timer = timeit.Timer(lambda: call(mod))
            number, _ = timer.autorange()
            times[label] = min(timer.repeat(args.repeat, number)) / number * 1e6
        c, p = times.get("cython", float("nan")), times["python"]
        print(f"{name:34s} {c:11.1f} {p:11.1f} {p / c:7.1f}x")


if __name__ == "__main__":
    main()
