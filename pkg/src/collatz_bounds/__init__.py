"""Exact combinatorics and closed-form density bounds for the 3x+1 problem."""

from .arith import (Mod3Context, NotAPowerResidue, big_binomial, build_context,
                    context, dlog2, real_binomial)
from .bounds import (BDistribution, Constants, NonConvergence, a_of_x,
                     b_distribution, b_min_threshold, bt_identity_residual,
                     m2_closed, m2_term, m2_truncated, m3_closed, m3_term,
                     mean_closed, normality_diagnostic, series_sum, var_closed)
from .compositions import (C1Violated, CountTable, O1, O2, ResourceCapExceeded,
                           admissible_v1_values, c1_holds, closed_form_count,
                           cumulative_closed_form, extended_binomial_table,
                           modified_coefficient)
from .dynamics import (StepBudgetExceeded, Trajectory, collatz_step,
                       inverse_children, inverse_tree_count, syracuse,
                       trajectory)
from .harness import (EnumerationResult, JointTable, OComparison, SweepResult,
                      alpha_table, compare_o, enumerate_gbstar,
                      enumerate_gbstar_direct, forward_sweep,
                      rederive_histogram, v1_marginal_stats)
from .tuples import (NotAdmissible, congruence_rhs, is_admissible,
                     reconstruct_n, solve_v1, u_to_v, v_to_u)

__version__ = "0.1.0"
