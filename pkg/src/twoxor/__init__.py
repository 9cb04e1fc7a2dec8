"""Distribution of Boolean functions computed by random 2-Xor expressions.

Exact rational calculators (satisfiability probability, per-class function
probabilities, multigraph censuses), asymptotic evaluators for every covered
regime, a Monte Carlo verification harness, and a brute-force oracle, built
on the bijection between 2-Xor expressions and colored multigraphs.
"""

__version__ = "0.1.0"

from .census import (ClassProbability, UnsupportedRegimeError, connected_count,
                     full_distribution, prob_function_exact,
                     prob_g_blocks_closed_form, prob_input_satisfies_exact,
                     prob_sat_exact, weighted_count)
from .expressions import (Clause, Expression, FunctionRepr, IntegerPartition,
                          class_size, essential_count, evaluate,
                          format_expression, from_multigraph, num_classes,
                          parse_expression, partition_of, partitions_of,
                          reduce, sample_expression, to_multigraph)
from .exppoly import ExpPolynomial, block_egf, exppoly_product
from .multigraph import (BudgetExceededError, Multigraph, connected_components,
                         core_count, cubic_count, enumerate_multigraphs,
                         is_connected, kappa, multigraph_count,
                         sample_multigraph, seqv)
from .series import BiSeries, UniSeries, m_series, series_exp, series_log, series_pow

__all__ = [name for name in dir() if not name.startswith("_")]
