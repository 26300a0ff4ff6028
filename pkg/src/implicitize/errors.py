"""Exception hierarchy.  Every error carries enough context to be reported."""


class ImplicitizationError(Exception):
    """Base class for all errors raised by this package."""

    kind = "error"

    def __init__(self, message, **details):
        super().__init__(message)
        self.details = details

    def to_dict(self):
        out = {"kind": self.kind, "message": str(self)}
        out.update({k: v for k, v in self.details.items() if _plain(v)})
        return out


def _plain(v):
    return isinstance(v, (str, int, float, bool, type(None), list, tuple, dict))


class NonFiniteBasePointLocus(ImplicitizationError):
    kind = "NonFiniteBasePointLocus"


class PreconditionViolation(ImplicitizationError):
    kind = "PreconditionViolation"


class BP5Violation(ImplicitizationError):
    kind = "BP5Violation"


class RankDeficient(ImplicitizationError):
    kind = "RankDeficient"


class Unsolvable(ImplicitizationError):
    kind = "Unsolvable"


class NormalizationFailure(ImplicitizationError):
    kind = "NormalizationFailure"


class InequalityViolated(ImplicitizationError):
    """More moving planes than rows of the matrix (inequality C(d+2,2) >= m fails)."""

    kind = "InequalityViolated"


class ZeroDeterminant(ImplicitizationError):
    kind = "ZeroDeterminant"


class StructureError(ImplicitizationError):
    kind = "StructureError"


class DenominatorVanishes(ImplicitizationError):
    kind = "DenominatorVanishes"


class InterpolationSingular(ImplicitizationError):
    kind = "InterpolationSingular"


class IdenticallyZero(ImplicitizationError):
    kind = "IdenticallyZero"


class ZeroWithoutCertificate(ImplicitizationError):
    kind = "ZeroWithoutCertificate"


class ReassemblyMismatch(ImplicitizationError):
    kind = "ReassemblyMismatch"


class NoApplicableMethod(ImplicitizationError):
    kind = "NoApplicableMethod"


class MethodDisagreement(ImplicitizationError):
    kind = "MethodDisagreement"


class ParseError(ImplicitizationError):
    kind = "SyntaxError"

    def __init__(self, message, line=None, column=None, **details):
        loc = f"line {line}, column {column}: " if line is not None else ""
        super().__init__(loc + message, line=line, column=column, **details)
        self.line = line
        self.column = column


class NonHomogeneous(ImplicitizationError):
    kind = "NonHomogeneous"


class DegreeMismatch(ImplicitizationError):
    kind = "DegreeMismatch"
