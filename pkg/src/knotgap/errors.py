"""Exception hierarchy shared by every knotgap module."""


class KnotgapError(Exception):
    """Base class for all errors raised by knotgap."""


class UserInputError(KnotgapError):
    """Errors caused by bad input (CLI exit code 2)."""


class PDSyntaxError(UserInputError):
    """A PD line contains a malformed token."""

    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class ValidationError(UserInputError):
    """A syntactically valid PD code does not describe a knot diagram."""

    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class NotReduced(KnotgapError):
    pass


class Disconnected(KnotgapError):
    pass


class MissingSign(KnotgapError):
    pass


class NotHomogeneous(KnotgapError):
    pass


class NoMixedCircle(KnotgapError):
    pass


class PatternMismatch(KnotgapError):
    """The clasp search produced a matrix outside the expected pattern.

    This signals an implementation fault or a violated hypothesis and must
    never be swallowed.
    """


class DegenerateProjection(KnotgapError):
    pass


class VerificationFailed(KnotgapError):
    pass


class NotApplicable(KnotgapError):
    def __init__(self, message, certified=False):
        super().__init__(message)
        self.certified = certified


class HypothesisViolated(KnotgapError):
    pass


class SearchExhausted(KnotgapError):
    pass


class FactorizationTooLarge(KnotgapError):
    pass


class NoUnitCoordinate(KnotgapError):
    pass


class OuterFaceDependence(KnotgapError):
    """An exported quantity changed when the outer face was moved."""
