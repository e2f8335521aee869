"""Exit criteria: one test per criterion, each printing a PASS/FAIL line.

Run with ``pytest tests/test_acceptance.py -v``; the lines are repeated in
the "acceptance criteria" section of the terminal summary.
"""
import json
import math
import time

import numpy as np

from triplexp.cli import main
from triplexp.energy import energy_fast, energy_naive, fourth_moment
from triplexp.expsum import WeightSequence, inner_linear_sum
from triplexp.expsum import triple_sum_direct, triple_sum_factored
from triplexp.modular import PrimeContext, distance_to_multiple, is_prime
from triplexp.verify import holder_check, proof_chain_report, regime_compare

from conftest import random_instance

PRIMES_100 = [p for p in range(3, 101) if is_prime(p)]
PRIMES_200 = [p for p in range(3, 201) if is_prime(p)]


def every_context(primes):
    for p in primes:
        for g in range(1, p):
            yield PrimeContext.create(p, g)


def energy_table(K_cap):
    return {(ctx.p, ctx.g): [energy_fast(ctx, K) for K in range(1, min(ctx.T, K_cap) + 1)]
            for ctx in every_context(PRIMES_100)}


def test_c1_energy_oracle_equivalence(criterion):
    start = time.perf_counter()
    mismatches, count = [], 0
    for ctx in every_context(PRIMES_100):
        for K in range(1, min(ctx.T, 30) + 1):
            count += 1
            naive, fast = energy_naive(ctx, K), energy_fast(ctx, K)
            if naive != fast:
                mismatches.append((ctx.p, ctx.g, K, naive, fast))
    elapsed = time.perf_counter() - start
    ok = not mismatches and elapsed < 60
    criterion(1, ok, f"{count} instances, {len(mismatches)} mismatches, {elapsed:.1f}s")
    assert not mismatches, mismatches[:5]
    assert elapsed < 60


def test_c2_energy_trivial_bounds_and_monotone(criterion):
    bad = []
    for (p, g), Es in energy_table(30).items():
        for K, E in enumerate(Es, 1):
            if not K * K <= E <= K**3:
                bad.append((p, g, K, E, "bounds"))
            if K > 1 and E < Es[K - 2]:
                bad.append((p, g, K, E, "monotone"))
    criterion(2, not bad, f"{len(bad)} violations")
    assert not bad, bad[:5]


def test_c3_orthogonality_identity(criterion):
    ctx = PrimeContext.create(7, 2)
    hand = fourth_moment(ctx, 3)
    worst, count = 0.0, 0
    for ctx in every_context(PRIMES_200):
        for K in range(1, min(ctx.T, 40) + 1):
            pE = ctx.p * energy_fast(ctx, K)
            worst = max(worst, abs(fourth_moment(ctx, K) - pE) / pE)
            count += 1
    ok = worst <= 1e-6 and abs(hand - 105) <= 105e-6
    criterion(3, ok, f"{count} instances, max rel err {worst:.3g}, (7,2,3) -> {hand:.12g}")
    assert abs(hand - 105) <= 105e-6
    assert worst <= 1e-6


def test_c4_geometric_sum(criterion):
    rng = np.random.default_rng(20240404)
    worst_err, bound_bad = 0.0, 0
    for _ in range(10_000):
        T = int(rng.integers(1, 1001))
        N = int(rng.integers(1, T + 1))
        x = int(rng.integers(-10**6, 10**6 + 1))
        L = int(rng.integers(-10**4, 10**4 + 1))
        n = np.arange(L + 1, L + N + 1, dtype=np.int64)
        direct = np.exp(2j * np.pi * ((n * x) % T) / T).sum()
        phi = inner_linear_sum(x, L, N, T)
        worst_err = max(worst_err, abs(phi - direct))
        d = distance_to_multiple(x, T)
        if abs(phi) > N + 1e-9 or (d and abs(phi) > T / (2 * d) + 1e-9):
            bound_bad += 1
    ok = worst_err <= 1e-9 and bound_bad == 0
    criterion(4, ok, f"max |closed - direct| {worst_err:.3g}, {bound_bad} bound violations")
    assert worst_err <= 1e-9
    assert bound_bad == 0


def test_c5_evaluator_equivalence(criterion):
    start = time.perf_counter()
    worst = 0.0
    for seed in range(50):
        inst = random_instance(1000 + seed, (11, 101, 499)[seed % 3])
        D, F = triple_sum_direct(inst), triple_sum_factored(inst)
        scale = abs(D) if abs(D) >= 1 else 1.0
        worst = max(worst, abs(D - F) / scale)
    elapsed = time.perf_counter() - start
    ok = worst <= 1e-9 and elapsed < 60
    criterion(5, ok, f"50 instances, max deviation {worst:.3g}, {elapsed:.1f}s")
    assert worst <= 1e-9
    assert elapsed < 60


def test_c6_holder(criterion):
    violations = 0
    for seed in range(100):
        alpha = WeightSequence.random(101, seed)
        rng = np.random.default_rng([seed, 101])
        W = rng.standard_normal(101) + 1j * rng.standard_normal(101)
        lhs, rhs = holder_check(alpha, W)
        violations += lhs > rhs * (1 + 1e-12)
    criterion(6, violations == 0, f"100 pairs at p=101, {violations} violations")
    assert violations == 0


CHAIN_PRIMES = (11, 13, 31, 61, 101, 127, 211, 307, 401, 499)


def chain_instances():
    for i, p in enumerate(CHAIN_PRIMES):
        for kind in ("unit", "random"):
            seed = 7 * i + (kind == "random")
            yield random_instance(seed, p, full=True, kind=kind)


def test_c7_proof_chain(criterion):
    failures, thm_max, energy_max, n = [], 0.0, 0.0, 0
    for inst in chain_instances():
        rep = proof_chain_report(inst)
        n += 1
        failures += [(inst.ctx.p, str(q)) for q in rep.failures]
        thm_max = max(thm_max, rep.thm_ratio)
        energy_max = max(energy_max, rep.energy_ratio_max)
    finite = math.isfinite(thm_max) and math.isfinite(energy_max)
    ok = n == 20 and not failures and finite
    criterion(7, ok, f"{n} instances, {len(failures)} violated inequalities, "
                     f"max |S|/bound {thm_max:.6g}, max E/K^2.5 {energy_max:.6g}")
    assert n == 20
    assert not failures, failures[:5]
    assert finite


def test_c8_scan_determinism(criterion, tmp_path):
    cfg = {"primes": [11, 13, 31], "generators": "all", "a_values": [1, 2],
           "tuples": [{"N": 5, "H": 9}, {"M": 7, "N": "T/2", "H": "T-1", "L": 3, "K_off": 2}],
           "weight_kind": ["unit", "random"], "seeds": [1, 2]}
    path = tmp_path / "grid.json"
    path.write_text(json.dumps(cfg))
    codes = [main(["scan", str(path), "-o", str(tmp_path / f"{k}.csv")]) for k in "ab"]
    a, b = (tmp_path / "a.csv").read_bytes(), (tmp_path / "b.csv").read_bytes()
    rows = a.count(b"\n") - 1
    ok = codes == [0, 0] and a == b and rows > 0
    criterion(8, ok, f"{rows} rows, identical={a == b}")
    assert codes == [0, 0]
    assert a == b


def test_c9_regime_predicates(criterion):
    got = regime_compare(7, 3, 7, 3, 2)
    criterion(9, got == (True, True), f"(p,T,M,N,H)=(7,3,7,3,2) -> {got}")
    assert got == (True, True)
