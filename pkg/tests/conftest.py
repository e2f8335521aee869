import cmath
import itertools
import math

import numpy as np
import pytest

from triplexp import kernels
from triplexp.expsum import IntervalSpec, SumInstance, WeightSequence
from triplexp.modular import PrimeContext


def brute_energy(p, g, exponents):
    """Enumerate all quadruples; independent of both library counters."""
    r = [pow(g, x, p) for x in exponents]
    return sum(1 for a, b, c, d in itertools.product(r, repeat=4) if (a + b - c - d) % p == 0)


def brute_order(g, p):
    x, t = g % p, 1
    while x != 1:
        x, t = x * g % p, t + 1
    return t


def e(h, y):
    return cmath.exp(2j * math.pi * (y % h) / h)


def brute_triple(inst):
    """Triple loop with cmath.exp and Python pow; no shared tables or kernels."""
    p, g, T = inst.ctx.p, inst.ctx.g, inst.ctx.T
    total = 0j
    for alpha, m in zip(inst.weights.values, inst.m_values.tolist()):
        for x in range(1, inst.intervals.H + 1):
            gx = pow(g, x, p)
            for n in inst.n_values.tolist():
                total += complex(alpha) * e(p, inst.a * m * gx) * e(T, n * x)
    return total


def random_instance(seed, p, full=None, kind=None):
    """A seeded random valid instance over prime ``p``."""
    rng = np.random.default_rng(seed)
    while True:
        g = int(rng.integers(2, p))
        ctx = PrimeContext.create(p, g)
        if ctx.T >= 2:
            break
    a = int(rng.integers(1, p))
    N = int(rng.integers(1, ctx.T + 1))
    H = int(rng.integers(1, ctx.T))
    L = int(rng.integers(-ctx.T, ctx.T + 1))
    if full is None:
        full = bool(rng.integers(0, 2))
    if kind is None:
        kind = "random" if rng.integers(0, 2) else "unit"
    M = p if full else int(rng.integers(1, p + 1))
    w = WeightSequence.random(M, seed) if kind == "random" else WeightSequence.unit(M)
    if full:
        return SumInstance.full(ctx, a, N, H, L, w)
    K_off = int(rng.integers(-p, p))
    return SumInstance(ctx, a, IntervalSpec(M, N, H, L, K_off), w)


@pytest.fixture(params=kernels.available())
def backend(request):
    return kernels.load(request.param)


_CRITERIA = []


@pytest.fixture
def criterion():
    """Record one acceptance line: ``criterion(number, ok, detail)``."""
    def record(number, ok, detail=""):
        line = f"criterion {number}: {'PASS' if ok else 'FAIL'} {detail}".rstrip()
        _CRITERIA.append(line)
        print(line)
        return ok
    return record


def pytest_terminal_summary(terminalreporter):
    if _CRITERIA:
        terminalreporter.section("acceptance criteria")
        for line in sorted(_CRITERIA, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
