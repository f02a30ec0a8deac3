"""Time the compiled block kernels against the numpy fallback.

Run with ``python3 benchmarks/bench_kernels.py``.  Both backends are loaded
side by side; results are checked for agreement before timing.
"""

from __future__ import annotations

import argparse
import timeit

import numpy as np

from frlp import _fallback

try:
    from frlp import _kernels
except ImportError:  # not compiled
    _kernels = None

CASES = {
    "block_means 1D": ("block_means", lambda v: (v, 8)),
    "block_oscillation 1D r=1": ("block_oscillation", lambda v: (v, 8, 1.0)),
    "block_oscillation 1D r=2": ("block_oscillation", lambda v: (v, 8, 2.0)),
    "haar_analysis": ("haar_analysis", lambda v: (v,)),
    "haar_synthesis": ("haar_synthesis", lambda v: (v,)),
}


def _bench(fn, args, number):
    return min(timeit.repeat(lambda: fn(*args), number=number, repeat=5)) / number


def main(argv=None) -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, default=4096, help="signal length (power of two)")
    ap.add_argument("--number", type=int, default=50)
    args = ap.parse_args(argv)
    rng = np.random.default_rng(0)
    v = rng.standard_normal(args.n) + 1j * rng.standard_normal(args.n)
    v2 = rng.standard_normal((256, 256)) + 1j * rng.standard_normal((256, 256))
    cases = dict(CASES)
    cases["block_oscillation 2D r=1"] = ("block_oscillation", lambda _: (v2, 8, 1.0))
    print(f"{'kernel':28s} {'python':>12s} {'cython':>12s} {'speedup':>8s}")
    for label, (name, mk) in cases.items():
        a = mk(v)
        py = getattr(_fallback, name)
        t_py = _bench(py, a, args.number)
        if _kernels is None:
            print(f"{label:28s} {t_py * 1e6:10.1f}us {'n/a':>12s}")
            continue
        cy = getattr(_kernels, name)
        if not np.allclose(py(*a), cy(*a), rtol=1e-12, atol=1e-12):
            raise SystemExit(f"{label}: backends disagree")
        t_cy = _bench(cy, a, args.number)
        print(f"{label:28s} {t_py * 1e6:10.1f}us {t_cy * 1e6:10.1f}us {t_py / t_cy:7.2f}x")


if __name__ == "__main__":
    main()
