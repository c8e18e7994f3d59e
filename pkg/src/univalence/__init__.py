"""Schwarzian-derivative univalence criteria: series, families, certifiers."""

from .checker import (
    Certificate,
    check_nehari,
    check_self_majorant,
    classify_valence,
    tau,
    verify_schwarzian_bound,
)
from .families import Candidate, RegionQuery, critical_constants, p_eval, phi_eval, region_contains
from .ode import count_zeros, endpoint_divergence, quotient_f, solve_even
from .radius import certify, errf_schwarzian_bound, maximize_radius
from .series import TaylorSeries, schwarzian

__all__ = [
    "Candidate", "Certificate", "RegionQuery", "TaylorSeries",
    "certify", "check_nehari", "check_self_majorant", "classify_valence", "count_zeros",
    "critical_constants", "endpoint_divergence", "errf_schwarzian_bound", "maximize_radius",
    "p_eval", "phi_eval", "quotient_f", "region_contains", "schwarzian", "solve_even", "tau",
    "verify_schwarzian_bound",
]
__version__ = "0.1.0"
