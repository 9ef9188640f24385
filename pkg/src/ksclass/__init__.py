"""Numerical certificates for the close-to-convex class K_s^(k)(lambda, mu, phi)."""

from .bounds import (
    FSBoundInputs, PhiExpansion, a2_a3_formulas, coefficient_bound, fekete_szego_bound,
    fekete_szego_functional, lemma21_bound, lemma22_bound, sufficient_condition,
    verify_coefficient_bounds,
)
from .classes import (
    CertificateReport, ClassParams, MoebiusTarget, build_gk, certify_close_to_convex,
    certify_membership, certify_positive_real, certify_starlike_order,
    certify_subordinate_moebius, certify_subordinate_region, class_ratio,
    lambda_mu_transform, to_Gk,
)
from .disk import DEFAULT_GRID, DiskGrid, RangeStat, evaluate, range_stats, tail_bound
from .series import (
    TruncatedSeries, add, binomial_series, differentiate, divide, mul, rotate, shift,
)
from .synthesis import (
    bernardi_transform, catalog, decompose_delta_nu, invert_lambda_mu, solve_coefficients,
    synthesize_member,
)

__version__ = "0.1.0"
