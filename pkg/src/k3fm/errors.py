"""Exception hierarchy shared by every module of the package."""


class K3FMError(ValueError):
    """Base class for domain errors (CLI maps these to exit code 1)."""


class SingularMatrix(K3FMError):
    pass


class NotSymmetric(K3FMError):
    pass


class OddDiagonal(K3FMError):
    pass


class Degenerate(K3FMError):
    pass


class UnknownName(K3FMError):
    pass


class TooLarge(K3FMError):
    """A brute-force enumeration would exceed the configured size cap."""


class NotIsotropic(K3FMError):
    pass


class NotAGroup(K3FMError):
    pass


class NotSubgroup(K3FMError):
    pass


class BadSignature(K3FMError):
    pass


class DNotAdmissible(K3FMError):
    """Raised when d^2 does not divide n in the Picard-rank-one case."""


class MismatchedProblem(K3FMError):
    pass


class UnsupportedCase(K3FMError):
    """The counting formula cannot be evaluated with the available data."""


class InvariantViolation(RuntimeError):
    """An internal cross-check failed; this indicates a bug, not bad input."""


class ParseError(K3FMError):
    def __init__(self, message, position=None):
        self.position = position
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)
