"""Exact triple exponential sums with exponential and linear phases mod p."""
from .energy import energy_fast, energy_naive, fourth_moment
from .expsum import (IntervalSpec, SumInstance, WeightSequence, inner_linear_sum,
                     norm_sigma, single_exp_sum, triple_sum_direct, triple_sum_factored)
from .kernels import BACKEND
from .modular import (PrimeContext, distance_to_multiple, factorize, is_prime, mod_pow,
                      multiplicative_order, primitive_roots, unit_root)
from .verify import (dyadic_blocks, holder_check, phi_block_bound_check,
                     proof_chain_report, regime_compare, scan, theorem_bound, trivial_bound)

__version__ = "0.1.0"

__all__ = [
    "BACKEND", "IntervalSpec", "PrimeContext", "SumInstance", "WeightSequence",
    "distance_to_multiple", "dyadic_blocks", "energy_fast", "energy_naive", "factorize",
    "fourth_moment", "holder_check", "inner_linear_sum", "is_prime", "mod_pow",
    "multiplicative_order", "norm_sigma", "phi_block_bound_check", "primitive_roots",
    "proof_chain_report", "regime_compare", "scan", "single_exp_sum", "theorem_bound",
    "triple_sum_direct", "triple_sum_factored", "trivial_bound", "unit_root",
]
