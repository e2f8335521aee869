"""Additive energy of ``{g^x : x in X}`` mod p, and weighted fourth moments.

The energy of an exponent set ``X`` is the number of quadruples
``(x1, x2, x3, x4) in X^4`` with ``g^x1 + g^x2 == g^x3 + g^x4 (mod p)``.
Two exact counters are provided (a triple loop with membership lookup, and
a sum of squared representation counts); they check each other.
"""
from __future__ import annotations

import math

import numpy as np

from . import kernels
from .modular import PrimeContext, root_table

NAIVE_LIMIT = 80
FAST_LIMIT = 10**4
MOMENT_LIMIT = 10**8


def exponent_set(ctx: PrimeContext, exponents) -> np.ndarray:
    """Normalise ``K`` (meaning ``1..K``) or an iterable into a sorted int64 array."""
    if isinstance(exponents, (int, np.integer)):
        K = int(exponents)
        if not 1 <= K <= ctx.T:
            raise ValueError(f"need 1 <= K <= T, got K={K}, T={ctx.T}")
        return np.arange(1, K + 1, dtype=np.int64)
    xs = np.array(sorted(set(int(x) for x in exponents)), dtype=np.int64)
    if len(xs) and (xs[0] < 1 or xs[-1] > ctx.T):
        raise ValueError(f"exponents must lie in [1, T={ctx.T}]")
    return xs


def _residues(ctx: PrimeContext, xs: np.ndarray) -> np.ndarray:
    res = ctx.powers()[xs % ctx.T]
    if len(np.unique(res)) != len(res):
        raise AssertionError("repeated residue g^x within one period")
    return np.ascontiguousarray(res)


def energy_naive(ctx: PrimeContext, exponents) -> int:
    xs = exponent_set(ctx, exponents)
    if len(xs) > NAIVE_LIMIT:
        raise ValueError(f"{len(xs)} exponents exceeds the naive limit {NAIVE_LIMIT}")
    return int(kernels.energy_naive(_residues(ctx, xs), ctx.p))


def energy_fast(ctx: PrimeContext, exponents) -> int:
    xs = exponent_set(ctx, exponents)
    if len(xs) > FAST_LIMIT:
        raise ValueError(f"{len(xs)} exponents exceeds the fast limit {FAST_LIMIT}")
    return int(kernels.energy_fast(_residues(ctx, xs), ctx.p))


def energy(ctx: PrimeContext, exponents) -> int:
    return energy_fast(ctx, exponents)


def character_sums(ctx: PrimeContext, exponents, coeffs, a: int = 1) -> np.ndarray:
    """``W_m = sum_x c_x e_p(a m g^x)`` for ``m = 0..p-1``."""
    xs = exponent_set(ctx, exponents)
    coeffs = np.broadcast_to(np.asarray(coeffs, dtype=np.complex128), xs.shape)
    rows = (np.arange(ctx.p, dtype=np.int64) * (a % ctx.p)) % ctx.p
    return kernels.bilinear(rows, _residues(ctx, xs), np.ascontiguousarray(coeffs),
                            root_table(ctx.p))


def fourth_moment(ctx: PrimeContext, exponents, coeffs=1.0, a: int = 1) -> float:
    """``sum_{m=0}^{p-1} |sum_x c_x e_p(a m g^x)|^4``.

    ``coeffs`` is a scalar, a sequence aligned with the sorted exponents, or a
    mapping exponent -> coefficient.
    """
    xs = exponent_set(ctx, exponents)
    if ctx.p * len(xs) > MOMENT_LIMIT:
        raise ValueError("p * |exponents| exceeds the fourth-moment limit")
    if a % ctx.p == 0:
        raise ValueError(f"a = {a} is not a unit mod {ctx.p}")
    if isinstance(coeffs, dict):
        coeffs = [coeffs[int(x)] for x in xs]
    W = character_sums(ctx, xs, coeffs, a)
    return math.fsum(np.abs(W) ** 4)


def energy_ratio(E: int, K: int) -> float:
    """``E / K^{5/2}``, the empirical constant for the ``K^{5/2}`` energy bound."""
    return E / K**2.5
