#!/usr/bin/env python3
"""Time the compiled kernels against the NumPy fallback.

    python benchmarks/bench_kernels.py [--repeat 3] [--quick]

Each row reports the best-of-``repeat`` wall time per backend and the speedup,
and checks that both backends return the same value.
"""
import argparse
import sys
import time

import numpy as np

from triplexp import kernels
from triplexp.modular import PrimeContext, root_table


def cases(quick):
    ctx = PrimeContext.create(10007, 5)
    scale = 1 if quick else 4
    K = 20 * scale
    res = np.ascontiguousarray(ctx.powers()[1:K + 1])
    yield f"energy_naive K={K}", lambda b: b.energy_naive(res, ctx.p)

    K2 = 500 * scale
    res2 = np.ascontiguousarray(ctx.powers()[1:K2 + 1])
    yield f"energy_fast K={K2}", lambda b: b.energy_fast(res2, ctx.p)

    p, H = 1009, 60 * scale
    ctx3 = PrimeContext.create(p, 11)
    rng = np.random.default_rng(0)
    alpha = rng.standard_normal(p) + 1j * rng.standard_normal(p)
    m_res = np.arange(p, dtype=np.int64)
    xs = np.arange(1, H + 1, dtype=np.int64)
    gx = np.ascontiguousarray(ctx3.powers()[1:H + 1])
    n_res = np.arange(1, 41, dtype=np.int64) % ctx3.T
    ep, eT = root_table(p), root_table(ctx3.T)
    yield (f"triple_direct M={p} N=40 H={H}",
           lambda b: b.triple_direct(alpha, m_res, gx, xs, n_res, ep, eT))

    rows = np.arange(p, dtype=np.int64)
    coeffs = alpha[:H]
    yield f"bilinear {p}x{H}", lambda b: b.bilinear(rows, gx, coeffs, ep)


def best_time(fn, repeat):
    best, value = float("inf"), None
    for _ in range(repeat):
        t0 = time.perf_counter()
        value = fn()
        best = min(best, time.perf_counter() - t0)
    return best, value


def same(a, b):
    if isinstance(a, np.ndarray) or isinstance(a, complex):
        return np.allclose(a, b, rtol=1e-9, atol=1e-9)
    return a == b


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--quick", action="store_true", help="smaller problem sizes")
    args = ap.parse_args(argv)

    names = kernels.available()
    backends = {n: kernels.load(n) for n in names}
    print(f"backends: {', '.join(names)}")
    header = f"{'kernel':<34}" + "".join(f"{n:>12}" for n in names)
    if len(names) == 2:
        header += f"{'speedup':>10}"
    print(header)

    agree = True
    for label, fn in cases(args.quick):
        times, values = [], []
        for n in names:
            t, v = best_time(lambda: fn(backends[n]), args.repeat)
            times.append(t)
            values.append(v)
        row = f"{label:<34}" + "".join(f"{t * 1e3:>10.2f}ms" for t in times)
        if len(names) == 2:
            row += f"{times[1] / times[0]:>9.1f}x"
            if not same(*values):
                agree = False
                row += "  MISMATCH"
        print(row)
    return 0 if agree else 1


if __name__ == "__main__":
    sys.exit(main())
