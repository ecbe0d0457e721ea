"""Greedy maximization of monotone submodular functions under a cardinality
constraint, with overlap-aware guarantees, tight instances and exact LP
certificates."""

from .bounds import (audit_corollary, corollary_bound, g, g_cc, g_limit_alpha_zero, g_nwf,
                     g_tilde, min_gtilde_over_T, overlap_lower_bound)
from .core import (AdditiveInstance, ConcaveCardinalityInstance, CoverageInstance, Instance,
                   TableInstance, evaluate, marginal_gain, mask_of, elements_of, subsets_of_size)
from .greedy import FIRST_INDEX, LAST_INDEX, GreedyTrace, TiePolicy, normalized_gains, prefer_listed, run_greedy, run_lazy_greedy
from .instances import (FunctionZooSpec, TightFamilyParams, default_r, geometric_sum,
                        make_zoo_instance, predicted_values, tight_instance, tight_params)
from .lp import (build_dual, build_primal, check_B_monotonicity, dual_closed_form, partial_sums,
                 simplex_solve)
from .verify import (brute_force_opt, check_lemma51, check_monotone, check_submodular, overlap,
                     total_curvature, verify_theorem1)

__version__ = "0.1.0"
