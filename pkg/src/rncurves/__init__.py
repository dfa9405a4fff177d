"""Exact splitting types of normal and restricted tangent bundles of
projected rational normal curves, via apolarity of binary forms.

Centers of projection are spaces of binary forms; the splitting of the
bundles pulled back to the line is computed exactly (over the rationals
or a large prime field) from kernel ladders of Hankel-structured
matrices, and related to Waring decompositions of the forms spanning
the center.
"""

from .fields import DEFAULT_PRIME, GF, QQ, SURVEY_PRIME, Field, PrimeField, RationalField, field_from_tag
from .linalg import LinAlgError, Matrix
from .binpoly import BinaryPoly, is_squarefree, poly_gcd, projective_roots
from .forms import (
    BinaryForm,
    DualForm,
    LinearFormPower,
    apolar_forms,
    catalecticant,
    contract,
    decompose,
    ps_membership,
    random_form,
    simultaneous_apolar,
    squarefree_member,
    waring_rank,
    waring_witness,
)
from .bundles import (
    InvariantError,
    NotImmersiveError,
    ProjectionCenter,
    SplittingType,
    TwistLadder,
    normal_matrix,
    ordinary_singularities,
    section_matrix,
    smooth_image,
    splitting_from_ladder,
    splitting_type,
    tangent_matrix,
    twist_ladder,
)
from .strata import (
    ConstructionError,
    DualSystem,
    InfeasibleStratumError,
    StratumReport,
    StratumSpec,
    SurveyResult,
    construct_special_center,
    derive_seed,
    expected_dim_secant_grassmannian,
    generic_min_mult,
    generic_splitting,
    normal_stratum_multiplicity,
    stratum_codim,
    survey_generic,
    tangent_stratum_multiplicity,
    verify_equivalence,
)
from .serialize import (
    SchemaError,
    center_from_json,
    center_to_json,
    dual_system_to_json,
    dumps,
    form_from_json,
    form_to_json,
    splitting_to_json,
    summands_key,
    survey_to_json,
    verify_report_to_json,
)

__version__ = "0.1.0"

__all__ = [
    "BinaryForm",
    "BinaryPoly",
    "ConstructionError",
    "DEFAULT_PRIME",
    "DualForm",
    "DualSystem",
    "Field",
    "GF",
    "InfeasibleStratumError",
    "InvariantError",
    "LinAlgError",
    "LinearFormPower",
    "Matrix",
    "NotImmersiveError",
    "PrimeField",
    "ProjectionCenter",
    "QQ",
    "RationalField",
    "SURVEY_PRIME",
    "SchemaError",
    "SplittingType",
    "StratumReport",
    "StratumSpec",
    "SurveyResult",
    "TwistLadder",
    "apolar_forms",
    "catalecticant",
    "center_from_json",
    "center_to_json",
    "construct_special_center",
    "contract",
    "decompose",
    "derive_seed",
    "dual_system_to_json",
    "dumps",
    "expected_dim_secant_grassmannian",
    "field_from_tag",
    "form_from_json",
    "form_to_json",
    "generic_min_mult",
    "generic_splitting",
    "is_squarefree",
    "normal_matrix",
    "normal_stratum_multiplicity",
    "ordinary_singularities",
    "poly_gcd",
    "projective_roots",
    "ps_membership",
    "random_form",
    "section_matrix",
    "simultaneous_apolar",
    "smooth_image",
    "splitting_from_ladder",
    "splitting_to_json",
    "splitting_type",
    "squarefree_member",
    "stratum_codim",
    "summands_key",
    "survey_generic",
    "survey_to_json",
    "tangent_matrix",
    "tangent_stratum_multiplicity",
    "twist_ladder",
    "verify_equivalence",
    "verify_report_to_json",
    "waring_rank",
    "waring_witness",
]
