"""Exact and seeded tooling for max-LINSAT(q, r) over finite fields."""

__version__ = "0.1.0"

from .gf import Field, from_order
from .instance import (EvalResult, Instance, baseline_ratio, evaluate, parse, serialize,
                       uniform_acceptance_size)
from .generators import GenConfig, e3lin, generate, opi, planted, random_instance
from .reduction import (binomial, predicted_fraction, r_subsets_containing, reduce,
                        soundness_bound, verify_reduction)
from .solvers import (brute_force, conditional_expectations, prange_isd, random_assignment,
                      solve, solve_linear_system)
from .analysis import (landscape_curve, prange_expected_ratio, saturation_threshold,
                       semicircle_ratio)
