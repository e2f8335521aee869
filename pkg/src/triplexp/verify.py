"""Numerical checks of the bounding argument for the triple sum.

The argument runs: split the ``x`` range into blocks ``L_0..L_I`` on which the
inner linear sum ``phi_x`` has a uniform size bound; bound each block sum by
Hoelder with exponents (2, 4, 4); expand the resulting fourth moment and use
orthogonality to reduce it to an additive energy.  Every link is computed
exactly (or in double precision) and compared here.

Block membership is keyed by ``<x>_T`` (distance to the nearest multiple of
``T``) instead of the raw value of ``x``, which makes the per-block bound
``|phi_x| <= (e/2) e^{-i} N`` hold with that explicit constant.
"""
from __future__ import annotations

import logging
import math
from dataclasses import asdict, dataclass, field, fields

import numpy as np

from .energy import (FAST_LIMIT, NAIVE_LIMIT, character_sums, energy_fast,
                     energy_naive, energy_ratio, fourth_moment)
from .expsum import (SumInstance, WeightSequence, inner_linear_sums,
                     triple_sum_direct, triple_sum_factored)
from .modular import PrimeContext, distance_to_multiple

log = logging.getLogger(__name__)

CHAIN_SLACK = 1e-6
ABS_FLOOR = 1e-9
DIRECT_CROSSCHECK_LIMIT = 10**6


# -- bounds from the statement of the result --------------------------------

def theorem_bound(p, T, N, norm1, norm2) -> float:
    """``||A||_1^{1/2} ||A||_2^{1/2} p^{1/4} N^{3/8} T^{5/8}``."""
    if norm1 < 0 or norm2 < 0:
        raise ValueError("norms must be nonnegative")
    return math.sqrt(norm1) * math.sqrt(norm2) * p**0.25 * N**0.375 * T**0.625


def trivial_bound(p, H, N, norm1) -> float:
    """``||A||_1 N min(p^{1/8} H^{5/8}, p^{1/4} H^{3/8})``."""
    return norm1 * N * min(p**0.125 * H**0.625, p**0.25 * H**0.375)


def regime_compare(p: int, T: int, M: int, N: int, H: int) -> tuple[bool, bool]:
    """Exact integer evaluation of ``p T^5 < M^2 N^5 H^5`` and ``T^5 < M^2 N^5 H^3``."""
    return (p * T**5 < M**2 * N**5 * H**5, T**5 < M**2 * N**5 * H**3)


# -- dyadic decomposition ---------------------------------------------------

@dataclass(frozen=True)
class DyadicBlocks:
    blocks: tuple[tuple[int, ...], ...]
    I: int
    N: int
    T: int
    H: int

    def block_of(self, x: int) -> int:
        for i, b in enumerate(self.blocks):
            if x in b:
                return i
        raise KeyError(x)

    def __iter__(self):
        return iter(self.blocks)

    def __len__(self):
        return len(self.blocks)


def block_index(d: int, N: int, T: int) -> int:
    """Block of an ``x`` with ``<x>_T = d``: 0 if ``d <= T/N``, else the least
    ``i >= 1`` with ``d <= e^i T / N``."""
    if d * N <= T:
        return 0
    i = 1
    while d * N > math.exp(i) * T:
        i += 1
    return i


def dyadic_blocks(N: int, T: int, H: int) -> DyadicBlocks:
    if not 1 <= N <= T:
        raise ValueError(f"need 1 <= N <= T, got N={N}, T={T}")
    if not 1 <= H < T:
        raise ValueError(f"need 1 <= H < T, got H={H}, T={T}")
    I = math.ceil(math.log(N))
    members = [[] for _ in range(I + 1)]
    for x in range(1, H + 1):
        members[block_index(distance_to_multiple(x, T), N, T)].append(x)
    return DyadicBlocks(tuple(tuple(b) for b in members), I, N, T, H)


def phi_bound(i: int, N: int) -> float:
    """Uniform bound on ``|phi_x|`` over block ``i``."""
    return float(N) if i == 0 else 0.5 * math.e * math.exp(-i) * N


@dataclass
class BlockBoundReport:
    max_ratio: list[float]
    violations: list[tuple[int, int, float, float]]

    @property
    def ok(self) -> bool:
        return not self.violations


def phi_block_bound_check(blocks: DyadicBlocks, L: int, N: int, T: int,
                          slack: float = 1e-9) -> BlockBoundReport:
    """Compare ``|phi_x|`` against the block bound for every ``x``.

    Violations are collected as ``(x, i, |phi_x|, bound)``.
    """
    ratios, bad = [], []
    for i, block in enumerate(blocks):
        bound = phi_bound(i, N)
        mags = np.abs(inner_linear_sums(block, L, N, T))
        ratios.append(float(mags.max() / bound) if len(block) else 0.0)
        for x, mag in zip(block, mags):
            if mag > bound * (1 + slack):
                bad.append((x, i, float(mag), bound))
    return BlockBoundReport(ratios, bad)


# -- Hoelder step -----------------------------------------------------------

def holder_check(alpha, W) -> tuple[float, float]:
    """Both sides of ``sum |a||W| <= (sum|a|)^{1/2} (sum|a|^2)^{1/4} (sum|W|^4)^{1/4}``."""
    a = np.abs(np.asarray(getattr(alpha, "values", alpha), dtype=np.complex128))
    w = np.abs(np.asarray(W, dtype=np.complex128))
    if a.shape != w.shape:
        raise ValueError("alpha and W must have the same length")
    lhs = math.fsum(a * w)
    rhs = math.fsum(a) ** 0.5 * math.fsum(a**2) ** 0.25 * math.fsum(w**4) ** 0.25
    return lhs, rhs


# -- proof chain ------------------------------------------------------------

@dataclass
class Inequality:
    name: str
    lhs: float
    rhs: float
    ok: bool

    def __str__(self):
        verdict = "ok" if self.ok else "VIOLATED"
        return f"{self.name}: {self.lhs:.17g} <= {self.rhs:.17g} {verdict}"


def leq(name, lhs, rhs, slack=CHAIN_SLACK) -> Inequality:
    lhs, rhs = float(lhs), float(rhs)
    ok = lhs <= rhs * (1 + slack) + ABS_FLOOR
    return Inequality(name, lhs, rhs, bool(ok))


@dataclass
class BlockReport:
    i: int
    size: int
    S_abs: float
    holder_lhs: float
    holder_rhs: float
    moment: float
    domination: float
    phi_max: float
    phi_bound: float
    energy: int
    energy_K: int
    energy_K_value: int | None
    energy_K_ratio: float | None
    K_below_p23: bool


@dataclass
class ChainReport:
    p: int
    g: int
    T: int
    a: int
    N: int
    H: int
    L: int
    S: complex
    norm1: float
    norm2: float
    thm_bound: float
    thm_ratio: float
    energy_ratio_max: float
    blocks: list[BlockReport] = field(default_factory=list)
    inequalities: list[Inequality] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(q.ok for q in self.inequalities)

    @property
    def failures(self) -> list[Inequality]:
        return [q for q in self.inequalities if not q.ok]

    def to_dict(self):
        d = asdict(self)
        d["S"] = [self.S.real, self.S.imag]
        d["ok"] = self.ok
        return d


def as_full_range(inst: SumInstance) -> SumInstance:
    """Re-index an interval instance over all of ``Z_p``, zero outside ``I``."""
    if inst.full_residue_range:
        return inst
    p = inst.ctx.p
    values = np.zeros(p, dtype=np.complex128)
    values[inst.m_values % p] = inst.weights.values
    w = WeightSequence(values, kind=inst.weights.kind, seed=inst.weights.seed)
    iv = inst.intervals
    return SumInstance.full(inst.ctx, inst.a, iv.N, iv.H, iv.L, w)


def _safe_ratio(num, den):
    if den == 0:
        return 0.0 if num == 0 else math.inf
    return num / den


def proof_chain_report(inst: SumInstance, slack: float = CHAIN_SLACK) -> ChainReport:
    """Evaluate each inequality of the block/Hoelder/energy argument on ``inst``.

    Interval instances are first re-indexed over ``Z_p``; this leaves the sum
    unchanged because distinct ``m`` in ``I`` are distinct mod ``p``.
    """
    inst = as_full_range(inst)
    ctx, iv = inst.ctx, inst.intervals
    p, T, N, H, L = ctx.p, ctx.T, iv.N, iv.H, iv.L
    alpha = inst.weights.values
    norm1, norm2 = inst.norms()

    xs = inst.x_values
    phi = inner_linear_sums(xs, L, N, T)
    S = triple_sum_factored(inst)
    checks = []
    if p * N * H <= DIRECT_CROSSCHECK_LIMIT:
        S_direct = triple_sum_direct(inst)
        checks.append(leq("direct_vs_factored", abs(S - S_direct), 1e-9 * max(1.0, abs(S)), 0))

    blocks = dyadic_blocks(N, T, H)
    reports = []
    S_parts = []
    ratio_max = 0.0
    for i, block in enumerate(blocks):
        if not block:
            S_parts.append(0j)
            reports.append(BlockReport(i, 0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0,
                                       phi_bound(i, N), 0, 0, None, None, False))
            continue
        c = phi[np.asarray(block) - 1]
        W = character_sums(ctx, block, c, inst.a)
        S_i = complex(np.dot(alpha, W))
        S_parts.append(S_i)
        lhs, rhs = holder_check(alpha, W)
        moment = math.fsum(np.abs(W) ** 4)
        E_block = energy_fast(ctx, block)
        phi_max = float(np.abs(c).max())
        dom = phi_max**4 * p * E_block
        bound_i = phi_bound(i, N)

        K_i = min(T, math.floor(math.exp(i) * T / N))
        if 1 <= K_i <= FAST_LIMIT:
            E_K = energy_fast(ctx, K_i)
            r_K = energy_ratio(E_K, K_i)
            ratio_max = max(ratio_max, r_K)
        else:
            E_K = r_K = None
        reports.append(BlockReport(i, len(block), abs(S_i), lhs, rhs, moment, dom,
                                   phi_max, bound_i, E_block, K_i, E_K, r_K,
                                   K_i**3 < p**2))

        tag = f"[{i}]"
        checks += [
            leq("holder_triangle" + tag, abs(S_i), lhs, slack),
            leq("holder" + tag, lhs, rhs, slack),
            leq("moment_domination" + tag, moment, dom, slack),
            leq("phi_bound" + tag, phi_max, bound_i, slack),
            leq("energy_lower" + tag, len(block) ** 2, E_block, 0),
            leq("energy_upper" + tag, E_block, len(block) ** 3, 0),
            leq("holder_via_energy" + tag, rhs,
                norm1**0.5 * norm2**0.5 * dom**0.25, slack),
        ]

    total_abs = math.fsum(abs(s) for s in S_parts)
    S_sum = sum(S_parts, 0j)
    checks += [
        leq("block_reconstruction", abs(S - S_sum), 1e-9 * max(1.0, abs(S)), 0),
        leq("triangle", abs(S), total_abs, slack),
        leq("holder_sum", total_abs, math.fsum(r.holder_rhs for r in reports), slack),
    ]

    bound = theorem_bound(p, T, N, norm1, norm2)
    return ChainReport(p, ctx.g, T, inst.a, N, H, L, S, norm1, norm2, bound,
                       _safe_ratio(abs(S), bound), ratio_max, reports, checks)


# -- scan records -----------------------------------------------------------

@dataclass
class ScanRecord:
    p: int
    g: int
    T: int
    a: int
    M: int
    N: int
    H: int
    L: int
    K_off: int
    weight_kind: str
    seed: int
    S_re: float
    S_im: float
    S_abs: float
    norm1: float
    norm2: float
    thm_bound: float
    thm_ratio: float
    triv_bound: float
    triv_ratio: float
    pred1: bool
    pred2: bool
    energy_K: int | None = None
    energy: int | None = None
    energy_ratio: float | None = None

    def sort_key(self):
        return (self.p, self.g, self.a, self.N, self.H, self.M, self.L, self.K_off,
                self.weight_kind, self.seed)


FIELDS = tuple(f.name for f in fields(ScanRecord))


def scan_record(inst: SumInstance, seed: int = 0) -> ScanRecord:
    ctx, iv = inst.ctx, inst.intervals
    M = len(inst.weights)
    S = triple_sum_factored(inst)
    norm1, norm2 = inst.norms()
    thm = theorem_bound(ctx.p, ctx.T, iv.N, norm1, norm2)
    triv = trivial_bound(ctx.p, iv.H, iv.N, norm1)
    pred1, pred2 = regime_compare(ctx.p, ctx.T, M, iv.N, iv.H)
    E = E_ratio = K = None
    if iv.H <= FAST_LIMIT:
        K = iv.H
        E = energy_fast(ctx, K)
        E_ratio = energy_ratio(E, K)
    return ScanRecord(
        p=ctx.p, g=ctx.g, T=ctx.T, a=inst.a, M=M, N=iv.N, H=iv.H, L=iv.L,
        K_off=-1 if inst.full_residue_range else iv.K_off,
        weight_kind=inst.weights.kind, seed=seed,
        S_re=S.real, S_im=S.imag, S_abs=abs(S), norm1=norm1, norm2=norm2,
        thm_bound=thm, thm_ratio=_safe_ratio(abs(S), thm),
        triv_bound=triv, triv_ratio=_safe_ratio(abs(S), triv),
        pred1=pred1, pred2=pred2, energy_K=K, energy=E, energy_ratio=E_ratio)


def _evaluate(point) -> ScanRecord:
    return scan_record(point.instance(), point.record_seed)


def scan(grid, jobs: int = 1) -> list[ScanRecord]:
    """One record per valid grid point, sorted by ``(p, g, a, N, H, ...)``.

    Points that violate the interval constraints are logged and skipped.
    """
    points = list(grid.points())
    if jobs > 1 and len(points) > 1:
        from concurrent.futures import ProcessPoolExecutor
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            records = list(ex.map(_evaluate, points, chunksize=8))
    else:
        records = [_evaluate(pt) for pt in points]
    records.sort(key=ScanRecord.sort_key)
    return records


# -- grid-driven checks -----------------------------------------------------

@dataclass
class CheckResult:
    check: str
    name: str
    ok: bool
    detail: str = ""

    def line(self) -> str:
        tag = "PASS" if self.ok else "FAIL"
        return f"{tag} {self.check} {self.name}" + (f" {self.detail}" if self.detail else "")


def _ctx_tag(ctx):
    return f"p={ctx.p} g={ctx.g} T={ctx.T}"


def check_chain(grid):
    for pt in grid.points():
        rep = proof_chain_report(pt.instance())
        tag = f"p={pt.p} g={pt.g} a={pt.a} N={pt.N} H={pt.H} L={pt.L} {pt.weight_kind}:{pt.record_seed}"
        detail = f"thm_ratio={rep.thm_ratio:.17g} energy_ratio_max={rep.energy_ratio_max:.17g}"
        if not rep.ok:
            detail += " failed: " + "; ".join(str(q) for q in rep.failures)
        yield CheckResult("chain", tag, rep.ok, detail)


def check_holder(grid):
    worst = 0.0
    for p in grid.primes:
        for seed in grid.seeds:
            alpha = WeightSequence.random(p, seed)
            rng = np.random.default_rng([seed, p])
            W = rng.standard_normal(p) + 1j * rng.standard_normal(p)
            lhs, rhs = holder_check(alpha, W)
            worst = max(worst, _safe_ratio(lhs, rhs))
            q = leq("holder", lhs, rhs, 1e-12)
            yield CheckResult("holder", f"p={p} seed={seed}", q.ok,
                              f"lhs={lhs:.17g} rhs={rhs:.17g}")
    yield CheckResult("holder", "summary", True, f"max lhs/rhs={worst:.17g}")


def check_moment(grid):
    worst = 0.0
    for ctx in grid.contexts():
        for K in range(1, min(ctx.T, grid.K_max) + 1):
            if ctx.p * K > 10**8:
                break
            m4 = fourth_moment(ctx, K)
            pE = ctx.p * energy_fast(ctx, K)
            err = abs(m4 - pE) / pE
            worst = max(worst, err)
            if err > CHAIN_SLACK:
                yield CheckResult("moment", f"{_ctx_tag(ctx)} K={K}", False,
                                  f"moment={m4:.17g} pE={pE}")
    yield CheckResult("moment", "summary", worst <= CHAIN_SLACK,
                      f"max |moment - pE|/pE={worst:.17g}")


def check_blocks(grid):
    for pt in grid.points():
        T = PrimeContext.create(pt.p, pt.g).T
        blocks = dyadic_blocks(pt.N, T, pt.H)
        flat = sorted(x for b in blocks for x in b)
        partition_ok = flat == list(range(1, pt.H + 1))
        rep = phi_block_bound_check(blocks, pt.L, pt.N, T)
        tag = f"p={pt.p} g={pt.g} N={pt.N} H={pt.H} L={pt.L}"
        detail = "max_ratio=" + ",".join(f"{r:.6g}" for r in rep.max_ratio)
        if not partition_ok:
            detail += " partition broken"
        if rep.violations:
            detail += f" violations={rep.violations[:5]}"
        yield CheckResult("blocks", tag, partition_ok and rep.ok, detail)


def check_energy(grid):
    worst_all = worst_regime = 0.0
    for ctx in grid.contexts():
        Kmax = min(ctx.T, grid.K_max)
        prev = 0
        bad = []
        for K in range(1, Kmax + 1):
            fast = energy_fast(ctx, K)
            if K <= NAIVE_LIMIT and energy_naive(ctx, K) != fast:
                bad.append(f"K={K} naive!=fast")
            if not K * K <= fast <= K**3:
                bad.append(f"K={K} E={fast} outside [K^2, K^3]")
            if fast < prev:
                bad.append(f"K={K} E decreased")
            prev = fast
            r = energy_ratio(fast, K)
            worst_all = max(worst_all, r)
            if K**3 < ctx.p**2:
                worst_regime = max(worst_regime, r)
        yield CheckResult("energy", f"{_ctx_tag(ctx)} K<={Kmax}", not bad, "; ".join(bad))
    yield CheckResult("energy", "summary", True,
                      f"max E/K^2.5={worst_all:.17g} (K<p^(2/3): {worst_regime:.17g})")


CHECK_RUNNERS = {
    "chain": check_chain,
    "holder": check_holder,
    "moment": check_moment,
    "blocks": check_blocks,
    "energy": check_energy,
}


def run_checks(grid):
    for name in grid.checks:
        yield from CHECK_RUNNERS[name](grid)
