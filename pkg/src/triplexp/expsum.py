"""Weight sequences and the triple exponential sum.

The sum evaluated here is

    S = sum_{m in I} sum_{n in J} sum_{x=1}^{H} alpha_m e_p(a m g^x) e_T(n x)

with ``I = {K_off+1, ..., K_off+M}`` (or all of ``Z_p``), ``J = {L+1, ..., L+N}``
and ``e_h(y) = exp(2 pi i y / h)``.  Two evaluators are provided: a literal
triple loop, and a factored form that sums the ``n``-range in closed form.
They share nothing beyond the root tables and serve as oracles for each other.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import kernels
from .modular import PrimeContext, root_table, unit_root

DIRECT_TERM_LIMIT = 10**9
FACTORED_TERM_LIMIT = 10**9
_DEGENERATE = 1e-12


@dataclass(frozen=True, eq=False)
class WeightSequence:
    """The coefficients ``alpha_m``, in the index order of ``I``."""

    values: np.ndarray
    kind: str = "file"
    seed: int | None = None

    def __post_init__(self):
        values = np.array(self.values, dtype=np.complex128).ravel()
        if len(values) < 1:
            raise ValueError("weight sequence must be nonempty")
        if not np.all(np.isfinite(values)):
            raise ValueError("weights must be finite")
        values.flags.writeable = False
        object.__setattr__(self, "values", values)

    def __len__(self):
        return len(self.values)

    @classmethod
    def unit(cls, length: int) -> WeightSequence:
        return cls(np.ones(length, dtype=np.complex128), kind="unit")

    @classmethod
    def zeros(cls, length: int) -> WeightSequence:
        return cls(np.zeros(length, dtype=np.complex128), kind="zero")

    @classmethod
    def random(cls, length: int, seed: int) -> WeightSequence:
        """Uniform modulus in [0, 1) and uniform phase, reproducible from ``seed``."""
        rng = np.random.default_rng(seed)
        modulus = rng.random(length)
        phase = rng.random(length)
        return cls(modulus * np.exp(2j * np.pi * phase), kind="random", seed=seed)

    @classmethod
    def from_file(cls, path) -> WeightSequence:
        """Read one ``re im`` pair per line; blank lines and ``#`` comments are skipped."""
        vals = []
        for lineno, line in enumerate(Path(path).read_text().splitlines(), 1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            parts = line.split()
            if len(parts) != 2:
                raise ValueError(f"{path}:{lineno}: expected 're im', got {line!r}")
            vals.append(complex(float(parts[0]), float(parts[1])))
        return cls(np.array(vals, dtype=np.complex128), kind="file")

    def to_file(self, path):
        lines = [f"{v.real:.17g} {v.imag:.17g}" for v in self.values]
        Path(path).write_text("\n".join(lines) + "\n")

    def conjugate(self) -> WeightSequence:
        return WeightSequence(np.conj(self.values), kind=self.kind, seed=self.seed)

    def norm(self, sigma: float) -> float:
        return norm_sigma(self, sigma)


def norm_sigma(weights, sigma: float) -> float:
    """``(sum |alpha_m|**sigma) ** (1/sigma)``."""
    if not sigma > 0:
        raise ValueError("sigma must be positive")
    values = weights.values if isinstance(weights, WeightSequence) else weights
    mags = np.abs(np.asarray(values, dtype=np.complex128))
    if sigma == 1:
        return float(math.fsum(mags))
    return float(math.fsum(mags**sigma) ** (1.0 / sigma))


@dataclass(frozen=True)
class IntervalSpec:
    """Offsets and lengths of the three summation ranges.

    ``K_off`` is the start offset of ``I`` (the set is ``K_off+1..K_off+M``),
    ``L`` that of ``J``; the ``x`` range is always ``1..H``.
    """

    M: int
    N: int
    H: int
    L: int = 0
    K_off: int = 0

    def check(self, ctx: PrimeContext):
        if not 0 < self.M <= ctx.p:
            raise ValueError(f"need 0 < M <= p, got M={self.M}, p={ctx.p}")
        if not 0 < self.N <= ctx.T:
            raise ValueError(f"need 0 < N <= T, got N={self.N}, T={ctx.T}")
        if not 0 < self.H < ctx.T:
            raise ValueError(f"need 0 < H < T, got H={self.H}, T={ctx.T}")


@dataclass(frozen=True)
class SumInstance:
    ctx: PrimeContext
    a: int
    intervals: IntervalSpec
    weights: WeightSequence
    full_residue_range: bool = False

    def __post_init__(self):
        if self.a % self.ctx.p == 0:
            raise ValueError(f"a = {self.a} is not a unit mod {self.ctx.p}")
        self.intervals.check(self.ctx)
        expected = self.ctx.p if self.full_residue_range else self.intervals.M
        if len(self.weights) != expected:
            raise ValueError(f"expected {expected} weights, got {len(self.weights)}")

    @classmethod
    def full(cls, ctx, a, N, H, L=0, weights=None) -> SumInstance:
        """Instance with ``I = Z_p`` (``m = 0..p-1``); unit weights by default."""
        if weights is None:
            weights = WeightSequence.unit(ctx.p)
        return cls(ctx, a, IntervalSpec(M=ctx.p, N=N, H=H, L=L, K_off=-1), weights,
                   full_residue_range=True)

    @property
    def m_values(self) -> np.ndarray:
        if self.full_residue_range:
            return np.arange(self.ctx.p, dtype=np.int64)
        start = self.intervals.K_off + 1
        return np.arange(start, start + self.intervals.M, dtype=np.int64)

    @property
    def n_values(self) -> np.ndarray:
        start = self.intervals.L + 1
        return np.arange(start, start + self.intervals.N, dtype=np.int64)

    @property
    def x_values(self) -> np.ndarray:
        return np.arange(1, self.intervals.H + 1, dtype=np.int64)

    def am_residues(self) -> np.ndarray:
        return (self.a % self.ctx.p * (self.m_values % self.ctx.p)) % self.ctx.p

    def g_powers(self) -> np.ndarray:
        """``g**x mod p`` for ``x = 1..H``."""
        return np.ascontiguousarray(self.ctx.powers()[1:self.intervals.H + 1])

    def norms(self) -> tuple[float, float]:
        return norm_sigma(self.weights, 1), norm_sigma(self.weights, 2)


def inner_linear_sum(x: int, L: int, N: int, T: int) -> complex:
    """``sum_{n=L+1}^{L+N} e_T(n x)`` in closed form."""
    if N < 1 or T < 1:
        raise ValueError("need N >= 1 and T >= 1")
    if x % T == 0:
        return complex(N)
    z = unit_root(T, x)
    if abs(z - 1) < _DEGENERATE:
        return complex(N)
    return unit_root(T, (L + 1) * x) * (unit_root(T, N * x) - 1) / (z - 1)


def inner_linear_sums(xs, L: int, N: int, T: int) -> np.ndarray:
    return np.array([inner_linear_sum(int(x), L, N, T) for x in xs], dtype=np.complex128)


def single_exp_sum(ctx: PrimeContext, a: int, H: int) -> complex:
    """``sum_{x=1}^{H} e_p(a g^x)`` by direct summation."""
    if not 1 <= H <= ctx.T:
        raise ValueError(f"need 1 <= H <= T, got H={H}, T={ctx.T}")
    if a % ctx.p == 0:
        raise ValueError(f"a = {a} is not a unit mod {ctx.p}")
    idx = (a % ctx.p * ctx.powers()[1:H + 1]) % ctx.p
    terms = root_table(ctx.p)[idx]
    return complex(math.fsum(terms.real), math.fsum(terms.imag))


def triple_sum_direct(inst: SumInstance) -> complex:
    """Literal triple loop over ``(x, m, n)``; the reference evaluator."""
    M, N, H = len(inst.weights), inst.intervals.N, inst.intervals.H
    if M * N * H > DIRECT_TERM_LIMIT:
        raise ValueError(f"{M}*{N}*{H} terms exceeds the direct-evaluation limit")
    ctx = inst.ctx
    return kernels.triple_direct(
        inst.weights.values, inst.am_residues(), inst.g_powers(), inst.x_values,
        inst.n_values % ctx.T, root_table(ctx.p), root_table(ctx.T))


def m_sums(inst: SumInstance) -> np.ndarray:
    """``sum_m alpha_m e_p(a m g^x)`` for each ``x = 1..H``."""
    return kernels.bilinear(inst.g_powers(), inst.am_residues(), inst.weights.values,
                            root_table(inst.ctx.p))


def triple_sum_factored(inst: SumInstance) -> complex:
    """``sum_x (sum_m alpha_m e_p(a m g^x)) * phi_x`` with ``phi_x`` in closed form."""
    M, N, H = len(inst.weights), inst.intervals.N, inst.intervals.H
    if (M + N) * H > FACTORED_TERM_LIMIT:
        raise ValueError(f"({M}+{N})*{H} terms exceeds the factored-evaluation limit")
    phi = inner_linear_sums(inst.x_values, inst.intervals.L, N, inst.ctx.T)
    return complex(np.dot(m_sums(inst), phi))
