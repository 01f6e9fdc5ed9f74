"""Exception types shared across the package."""


class CJTError(Exception):
    """Base class for all package-specific errors."""


class UnbalancedCJ(CJTError):
    """A polynomial depends on C and J separately, not only through C*J."""


class ExpOfNonzeroConstant(CJTError):
    """exp() of a truncated series requires a zero constant term."""


class BoundExceeded(CJTError):
    """A requested computation exceeds the configured size bound."""


class SamePoint(CJTError):
    """A transposition needs two distinct points."""


class IndexOutOfRange(CJTError):
    """A Jucys-Murphy index is outside 2..n."""


class CentralityViolation(CJTError):
    """A symmetric-function action produced a vector that is not constant
    on type classes.  This always indicates an implementation bug."""


class SizeMismatch(CJTError):
    """Input and output profiles must partition the same integer."""


class MissingSubprofile(CJTError):
    """The connected/disconnected transform needs a value that is absent
    from the supplied table."""


class NonMonotone(CJTError):
    """Cover signatures are only defined for monotone factorizations."""


class MultiplicityMismatch(CJTError):
    """A grouped factorization weight disagrees with the multiplicity
    computed from the cover signature alone."""


class FitFailure(CJTError):
    """Polynomial interpolation failed to fit held-out sample points."""
