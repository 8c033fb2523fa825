"""Exact projective duality toolkit: dual varieties, tangent cones, polar
varieties, contact loci, shadows and secant varieties over Q or F_p."""

from .poly import (
    GF,
    QQ,
    CoefficientField,
    MonomialOrder,
    Polynomial,
    PolynomialParseError,
    PolyRing,
    jacobian_matrix,
    minors,
    parse_polynomial,
    substitute_linear,
)
from .groebner import Budget, BudgetExhausted, budget
from .hilbert import HilbertData
from .ideal import (
    GroebnerBasis,
    Ideal,
    eliminate,
    flat_limit,
    groebner_basis,
    hilbert_data,
    hilbert_polynomial,
    ideal_equal_up_to_radical,
    initial_forms_at_origin,
    normal_form,
    radical_contains,
    radical_membership,
    saturate,
    saturate_by_element,
)

from .linear import LinearSubspace, PointP, RandomSource, join, perp, random_point_on
from .variety import (
    PointNotOnVariety,
    ProjectiveVariety,
    SingularPoint,
    conormal_variety,
    dual_variety,
    singular_locus,
    tangent_space,
)
from .cones import multiplicity_at, multiplicity_stratum, polar_variety, tangent_cone
from .sampling import SamplingError, sample_point, slice_variety
from .contact import (
    ContactCheckFailed,
    DefectiveVariety,
    contact_locus,
    shadow_covers,
    shadow_membership,
    tangency_dimension,
    tangency_scheme,
)
from .secant import SecantProfile, gauss_fiber_dim, secant_profile, secant_variety, terracini_check
from .report import VerificationReport
from .verify import (
    TangencyClass,
    classify_mult2_tangency,
    verify_cone_duality_bidual,
    verify_main_theorem,
    verify_polar_properties,
    verify_secant_dual_inclusion,
    verify_superadditivity_and_codegree,
)

__version__ = "0.1.0"

__all__ = [
    "GF",
    "QQ",
    "CoefficientField",
    "MonomialOrder",
    "Polynomial",
    "PolynomialParseError",
    "PolyRing",
    "jacobian_matrix",
    "minors",
    "parse_polynomial",
    "substitute_linear",
    "Budget",
    "BudgetExhausted",
    "budget",
    "HilbertData",
    "GroebnerBasis",
    "Ideal",
    "eliminate",
    "flat_limit",
    "groebner_basis",
    "hilbert_data",
    "hilbert_polynomial",
    "ideal_equal_up_to_radical",
    "initial_forms_at_origin",
    "normal_form",
    "radical_contains",
    "radical_membership",
    "saturate",
    "saturate_by_element",
    "LinearSubspace",
    "PointP",
    "RandomSource",
    "join",
    "perp",
    "random_point_on",
    "PointNotOnVariety",
    "ProjectiveVariety",
    "SingularPoint",
    "conormal_variety",
    "dual_variety",
    "singular_locus",
    "tangent_space",
    "multiplicity_at",
    "multiplicity_stratum",
    "polar_variety",
    "tangent_cone",
    "SamplingError",
    "sample_point",
    "slice_variety",
    "ContactCheckFailed",
    "DefectiveVariety",
    "contact_locus",
    "shadow_covers",
    "shadow_membership",
    "tangency_dimension",
    "tangency_scheme",
    "SecantProfile",
    "gauss_fiber_dim",
    "secant_profile",
    "secant_variety",
    "terracini_check",
    "VerificationReport",
    "TangencyClass",
    "classify_mult2_tangency",
    "verify_cone_duality_bidual",
    "verify_main_theorem",
    "verify_polar_properties",
    "verify_secant_dual_inclusion",
    "verify_superadditivity_and_codegree",
]
