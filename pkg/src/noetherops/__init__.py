"""Noetherian operators of polynomial ideals, exactly and numerically."""

from .driver import (
    ComponentDescription,
    LinearChange,
    MembershipResult,
    apply_to_generators,
    exact_membership,
    membership_test,
    numerical_primary_decomposition,
    transform_operators,
)
from .dualspace import (
    DualSpaceBasis,
    MacaulayBuilder,
    NoetherianOperatorSet,
    dual_space,
    lift_operator,
    macaulay_matrix,
    noetherian_operators,
    noetherian_operators_zero,
)
from .errors import (
    NoetherError,
    ContextMismatch,
    DivisionByZero,
    NotInvertible,
    NumericalFailure,
    DegenerateBasis,
    DenominatorVanishes,
    EmptyVariety,
    IndependentSetInvalid,
    PrimeNotMinimal,
    NoStabilization,
    NotOnVariety,
    NotLiftable,
    InterpolationFailed,
    InconsistentSpecializations,
    NeedMorePoints,
    SingularChange,
    ParseError,
)
from .groebner import (
    BlockOrder,
    GroebnerBasis,
    buchberger,
    dimension_and_independent_set,
    extend_to_fraction_field,
    is_independent,
    normal_form,
)
from .linalg import KernelBasis, LabeledMatrix, exact_kernel, numeric_kernel, reduced_column_echelon
from .numericops import (
    InterpolatedCoefficient,
    NumericalOperator,
    NumericalOperatorSet,
    WitnessPoint,
    interpolate_with_schedule,
    noetherian_operators_at_point,
    numerical_noetherian_operators,
    rational_interpolation,
)
from .polyring import (
    GREVLEX,
    GRLEX,
    LEX,
    MonomialOrder,
    Polynomial,
    SpecializedOperator,
    VariableRing,
    WeylOperator,
    apply_operator,
    monomial_order,
    monomials_up_to,
    pairing,
    specialize,
    weyl_multiply,
)
from .scalars import QQ, ApproxComplexField, QuotientField, RationalFunctionField
from .frontend.parser import parse_operator, parse_polynomial

__version__ = "0.1.0"

__all__ = [
    "ApproxComplexField",
    "BlockOrder",
    "ComponentDescription",
    "ContextMismatch",
    "DegenerateBasis",
    "DenominatorVanishes",
    "DivisionByZero",
    "DualSpaceBasis",
    "EmptyVariety",
    "GREVLEX",
    "GRLEX",
    "GroebnerBasis",
    "InconsistentSpecializations",
    "IndependentSetInvalid",
    "InterpolatedCoefficient",
    "InterpolationFailed",
    "KernelBasis",
    "LEX",
    "LabeledMatrix",
    "LinearChange",
    "MacaulayBuilder",
    "MembershipResult",
    "MonomialOrder",
    "NeedMorePoints",
    "NoStabilization",
    "NoetherError",
    "NoetherianOperatorSet",
    "NotInvertible",
    "NotLiftable",
    "NotOnVariety",
    "NumericalFailure",
    "NumericalOperator",
    "NumericalOperatorSet",
    "ParseError",
    "Polynomial",
    "PrimeNotMinimal",
    "QQ",
    "QuotientField",
    "RationalFunctionField",
    "SingularChange",
    "SpecializedOperator",
    "VariableRing",
    "WeylOperator",
    "WitnessPoint",
    "apply_operator",
    "apply_to_generators",
    "buchberger",
    "dimension_and_independent_set",
    "dual_space",
    "exact_kernel",
    "exact_membership",
    "extend_to_fraction_field",
    "interpolate_with_schedule",
    "is_independent",
    "lift_operator",
    "macaulay_matrix",
    "membership_test",
    "monomial_order",
    "monomials_up_to",
    "noetherian_operators",
    "noetherian_operators_at_point",
    "noetherian_operators_zero",
    "normal_form",
    "numeric_kernel",
    "numerical_noetherian_operators",
    "numerical_primary_decomposition",
    "pairing",
    "parse_operator",
    "parse_polynomial",
    "rational_interpolation",
    "reduced_column_echelon",
    "specialize",
    "transform_operators",
    "weyl_multiply",
]
