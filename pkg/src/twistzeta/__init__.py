"""Exact special values of partially twisted multiple zeta-functions."""

from __future__ import annotations

from .dc import DCPoint, PointKind, abel_sum_oracle, classify_mixed, dc_value_mixed, dc_value_nonpos
from .exact import (
    Cyclotomic,
    RootOfUnity,
    bernoulli,
    bernoulli_twisted,
    cyclo_add,
    cyclo_eval,
    cyclo_inv,
    cyclo_make,
    cyclo_mul,
    cyclo_neg,
    eulerian_poly,
    multinomial,
    pochhammer,
    stirling2,
)
from .expr import Atom, ValueExpr
from .lerch import (
    hurwitz_numeric,
    lerch_complex,
    lerch_nonpos_eulerian,
    lerch_nonpos_stirling,
    lerch_numeric,
    riemann_numeric,
    zeta_even_pi,
    zeta_neg,
)
from .oracle import (
    OracleResult,
    abel_numeric,
    direct_series_sum,
    factorized_series_oracle,
    mb_identity_check,
    mmb_identity_check,
    n1_binomial_continuation,
)
from .partial import (
    ProblemSpec,
    enumerate_second_sum,
    simplify,
    validate,
    value_d1,
    value_d2,
    value_general,
)
from .poly import (
    MultiPoly,
    check_growth_condition,
    check_hdf_sufficient,
    decompose_xn,
    expand_product_powers,
    parse_poly,
)
from .singular import SingularityReport, Tier, candidate_hyperplanes, is_regular_point

__version__ = "0.1.0"
