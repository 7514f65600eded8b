"""Exception hierarchy shared by every module.

Validation failures carry a ``witness`` naming the first violating tuple so
that callers (and the CLI) can report it verbatim.
"""


class GrcatError(Exception):
    """Base class for all errors raised by this package."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class ValidationError(GrcatError, ValueError):
    """Input data violates an axiom of the structure being built."""


class SizeBound(GrcatError):
    """A configured size bound would be exceeded."""


class OrderBound(SizeBound):
    """Group order exceeds the bound for exhaustive searches."""


class ParseError(ValidationError):
    def __init__(self, line, reason):
        super().__init__(f"line {line}: {reason}", witness=line)
        self.line = line
        self.reason = reason


# fingroup
class NotClosed(ValidationError):
    pass


class NotAssociative(ValidationError):
    pass


class NoIdentityAtZero(ValidationError):
    pass


class MissingInverse(ValidationError):
    pass


class NotHomomorphic(ValidationError):
    pass


class NotSubgroup(ValidationError):
    pass


class NotNormal(ValidationError):
    pass


class NotAbelian(ValidationError):
    pass


class NotAutomorphism(ValidationError):
    pass


class NotFunctorial(ValidationError):
    pass


# cohomology
class DegreeUnsupported(ValidationError):
    pass


class MismatchedAmbient(ValidationError):
    pass


class NotIsomorphism(ValidationError):
    pass


# grcore
class NotCocycle(ValidationError):
    pass


class NotNormalized(ValidationError):
    pass


class ObjectMismatch(ValidationError):
    pass


# crossedmod
class NotEquivariant(ValidationError):
    pass


class PeifferFails(ValidationError):
    pass


class NotSurjective(ValidationError):
    pass


class KernelNotCentral(ValidationError):
    pass


# coherence
class LabelOutOfRange(ValidationError):
    pass


class ExpressionSyntaxError(SyntaxError):
    """Malformed tensor expression; ``position`` is a 0-based column."""

    def __init__(self, message, position):
        super().__init__(f"{message} at position {position}")
        self.position = position
