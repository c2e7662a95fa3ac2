"""homalg: exact rational verification engine for twisted nonassociative algebras."""
from .bundle import (
    Bundle,
    BundleError,
    check_payload,
    diagram_payload,
    dumps_bundle,
    load_bundle,
    loads_bundle,
    save_bundle,
)
from .exact import (
    DimensionMismatch,
    SingularMatrix,
)
from .functors import (
    SPLIT_DIRECTIONS,
    DiagramReport,
    NotAMorphism,
    UnknownDirection,
    commutator,
    horizontal,
    quadri_split,
    transpose,
    verify_diagram,
    vertical,
    yau_twist,
)
from .operators import (
    INDUCE_RECIPES,
    KIND_O_OPERATOR,
    KIND_ROTA_BAXTER,
    OPERATOR_KINDS,
    PAIR_RECIPES,
    BilinearForm,
    EndomorphismInvalid,
    HessianInvalid,
    NotCommuting,
    OperatorInvalid,
    OperatorWitness,
    check_commuting,
    check_hessian,
    check_oop_endomorphism,
    check_operator,
    hessian_dendrify,
    induce,
    induce_pair,
    twist_oop_setup,
)
from .reps import (
    DUAL_VARIANTS,
    MALCEV_ACTIONS,
    PRE_ALTERNATIVE_ACTIONS,
    PRE_MALCEV_ACTIONS,
    ActionRole,
    NotMultiplicative,
    Representation,
    adjoint_rep,
    check_rep,
    dual_malcev_rep,
    dual_pre_malcev_rep,
    regular_alternative_rep,
    regular_pre_alternative_rep,
    regular_pre_malcev_rep,
    semidirect,
)
from .structures import (
    ASSOCIATOR_KINDS,
    CLASS_ROLES,
    CheckReport,
    HomStructure,
    ProductRole,
    RoleMismatch,
    StructureClass,
    UnknownKind,
    Violation,
    alpha_associator,
    check,
    check_morphism,
    derived_product,
    hom_jacobian,
    make_structure,
)

__all__ = [
    "ASSOCIATOR_KINDS",
    "ActionRole",
    "BilinearForm",
    "Bundle",
    "BundleError",
    "CLASS_ROLES",
    "CheckReport",
    "DUAL_VARIANTS",
    "DiagramReport",
    "DimensionMismatch",
    "EndomorphismInvalid",
    "HessianInvalid",
    "HomStructure",
    "INDUCE_RECIPES",
    "KIND_O_OPERATOR",
    "KIND_ROTA_BAXTER",
    "MALCEV_ACTIONS",
    "NotAMorphism",
    "NotCommuting",
    "NotMultiplicative",
    "OPERATOR_KINDS",
    "OperatorInvalid",
    "OperatorWitness",
    "PAIR_RECIPES",
    "PRE_ALTERNATIVE_ACTIONS",
    "PRE_MALCEV_ACTIONS",
    "ProductRole",
    "Representation",
    "RoleMismatch",
    "SPLIT_DIRECTIONS",
    "SingularMatrix",
    "StructureClass",
    "UnknownDirection",
    "UnknownKind",
    "Violation",
    "adjoint_rep",
    "alpha_associator",
    "check",
    "check_commuting",
    "check_hessian",
    "check_morphism",
    "check_oop_endomorphism",
    "check_operator",
    "check_payload",
    "check_rep",
    "commutator",
    "derived_product",
    "diagram_payload",
    "dual_malcev_rep",
    "dual_pre_malcev_rep",
    "dumps_bundle",
    "hessian_dendrify",
    "hom_jacobian",
    "horizontal",
    "induce",
    "induce_pair",
    "load_bundle",
    "loads_bundle",
    "make_structure",
    "quadri_split",
    "regular_alternative_rep",
    "regular_pre_alternative_rep",
    "regular_pre_malcev_rep",
    "save_bundle",
    "semidirect",
    "transpose",
    "twist_oop_setup",
    "verify_diagram",
    "vertical",
    "yau_twist",
]

__version__ = "0.1.0"
