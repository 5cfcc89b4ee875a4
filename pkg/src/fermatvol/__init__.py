"""Certified harmonic volumes of Fermat curves.

Exact cyclotomic arithmetic carries every computation up to a single
transcendental constant per ordered form pair; the analysis layer encloses
those constants numerically by two independent routes; the volume layer
turns the enclosures into lattice-distance verdicts on the curve's
difference cycle.
"""

from .analysis import (
    HypParams,
    QuadResult,
    SeriesResult,
    ToleranceUnreachable,
    XValue,
    beta_rational,
    beta_value,
    hyp3f2_unit,
    ibeta_lower,
    simplex_integral,
    x_value,
)
from .cyclotomic import (
    ComplexInterval,
    CycNum,
    RealInterval,
    cyclotomic_polynomial,
    euler_phi,
    lattice_distance,
    zeta,
)
from .forms import FormIdx, form_indices
from .homology import (
    GroupRingClass,
    HomologyClass,
    base_pairing,
    basis_indices,
    genus,
    intersection,
    intersection_matrix,
    loop_class,
    reduce,
    reduce_coefficients,
    relations,
    smith_invariants,
)
from .iterated import (
    ItExpr,
    PathWord,
    base_path,
    closed_form_gamma,
    closed_form_kappa,
    gamma_loop,
    gamma_path,
    iterated_integral,
    kappa_word,
    l_combination,
    loop_period,
    single_integral,
)
from .pdual import DualVector, equivariance_check, period_vector, poincare_dual
from .volume import VolumeReport, evaluate, harmonic_volume_expr, sweep

__version__ = "0.1.0"

__all__ = [
    "ComplexInterval",
    "CycNum",
    "DualVector",
    "FormIdx",
    "GroupRingClass",
    "HomologyClass",
    "HypParams",
    "ItExpr",
    "PathWord",
    "QuadResult",
    "RealInterval",
    "SeriesResult",
    "ToleranceUnreachable",
    "VolumeReport",
    "XValue",
    "base_pairing",
    "base_path",
    "basis_indices",
    "beta_rational",
    "beta_value",
    "closed_form_gamma",
    "closed_form_kappa",
    "cyclotomic_polynomial",
    "equivariance_check",
    "euler_phi",
    "evaluate",
    "form_indices",
    "gamma_loop",
    "gamma_path",
    "genus",
    "harmonic_volume_expr",
    "hyp3f2_unit",
    "ibeta_lower",
    "intersection",
    "intersection_matrix",
    "iterated_integral",
    "kappa_word",
    "l_combination",
    "lattice_distance",
    "loop_class",
    "loop_period",
    "period_vector",
    "poincare_dual",
    "reduce",
    "reduce_coefficients",
    "relations",
    "simplex_integral",
    "single_integral",
    "smith_invariants",
    "sweep",
    "x_value",
    "zeta",
]
