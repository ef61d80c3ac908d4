"""Exception hierarchy.

Every error raised on purpose by the library derives from
:class:`NoetherError`, so callers (the CLI in particular) can separate domain
failures from programming errors.
"""


class NoetherError(Exception):
    """Base class for all domain errors."""

    code = "error"

    def to_dict(self):
        return {"type": type(self).__name__, "code": self.code, "message": str(self)}


class ContextMismatch(NoetherError):
    code = "context_mismatch"


class DivisionByZero(NoetherError, ZeroDivisionError):
    code = "division_by_zero"


class NotInvertible(NoetherError, ZeroDivisionError):
    """A nonzero residue-field element has no inverse: the prime is not maximal."""

    code = "not_invertible"


class NumericalFailure(NoetherError):
    code = "numerical_failure"


class DegenerateBasis(NoetherError):
    code = "degenerate_basis"


class DenominatorVanishes(NoetherError):
    code = "denominator_vanishes"


class EmptyVariety(NoetherError):
    code = "empty_variety"


class IndependentSetInvalid(NoetherError):
    code = "independent_set_invalid"


class PrimeNotMinimal(NoetherError):
    code = "prime_not_minimal"


class NoStabilization(NoetherError):
    code = "no_stabilization"


class NotOnVariety(NoetherError):
    code = "not_on_variety"


class NotLiftable(NoetherError):
    code = "not_liftable"


class InterpolationFailed(NoetherError):
    code = "interpolation_failed"


class InconsistentSpecializations(NoetherError):
    code = "inconsistent_specializations"


class NeedMorePoints(NoetherError):
    code = "need_more_points"


class SingularChange(NoetherError):
    code = "singular_change"


class ParseError(NoetherError):
    code = "parse_error"

    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        if line is not None:
            message = f"{message} (line {line}, column {column})"
        super().__init__(message)

    def to_dict(self):
        d = super().to_dict()
        d["line"] = self.line
        d["column"] = self.column
        return d
