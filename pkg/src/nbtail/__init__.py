"""Negative binomial mean-tail probabilities and their parameter infimum.

The library evaluates P(NB(r, p) <= mean) for real shape r > 0, the
closed-form infimum (r/(r+1))^r of that probability over p in (0, 1], and
numerically verifies every identity the closed form rests on against
independent oracles (direct summation, incomplete Beta evaluation,
adaptive quadrature, exact rational arithmetic, and seeded Monte Carlo).
"""

from .chvatal import (
    SeqEntry,
    VerifyReport,
    binomial_chvatal_argmin,
    coefficient_identity_check,
    global_infimum,
    infimum_seq_integral,
    infimum_seq_sum,
    interval_infimum,
    monotonicity_check,
    panel_bound_check,
    panel_decrease_check,
    tail_closed_form,
    tail_identity_check,
)
from .errors import ConvergenceError
from .nbdist import (
    NBParams,
    ProbValue,
    mean_interval_index,
    mean_tail_prob,
    nb_cdf_beta,
    nb_cdf_sum,
    nb_mean,
    nb_pmf,
    pascal_mean_tail,
    pascal_pmf,
)
from .oracle import SampleStream, exact_cdf_rational, mc_cdf_estimate, nb_sample
from .quadrature import QuadResult, integrate, integrate_reciprocal_tail
from .specfun import beta, gen_binomial, gen_factorial, log_gamma, reg_inc_beta

__version__ = "0.1.0"

__all__ = [
    "ConvergenceError",
    "NBParams",
    "ProbValue",
    "QuadResult",
    "SampleStream",
    "SeqEntry",
    "VerifyReport",
    "beta",
    "binomial_chvatal_argmin",
    "coefficient_identity_check",
    "exact_cdf_rational",
    "gen_binomial",
    "gen_factorial",
    "global_infimum",
    "infimum_seq_integral",
    "infimum_seq_sum",
    "integrate",
    "integrate_reciprocal_tail",
    "interval_infimum",
    "log_gamma",
    "mc_cdf_estimate",
    "mean_interval_index",
    "mean_tail_prob",
    "monotonicity_check",
    "nb_cdf_beta",
    "nb_cdf_sum",
    "nb_mean",
    "nb_pmf",
    "nb_sample",
    "panel_bound_check",
    "panel_decrease_check",
    "pascal_mean_tail",
    "pascal_pmf",
    "reg_inc_beta",
    "tail_closed_form",
    "tail_identity_check",
]
