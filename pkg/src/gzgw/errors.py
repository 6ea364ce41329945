"""Exception hierarchy shared by all modules."""


class GzgwError(Exception):
    """Base class for all library errors."""


class DomainError(GzgwError):
    """Input violates a mathematical precondition (not Hermitian, not
    positive definite, pattern not strictly interlacing, ...)."""


class NumericalFailure(GzgwError):
    """An iteration failed to converge or a computed quantity left its
    admissible range by more than roundoff allows."""


class SamplingFailure(GzgwError):
    """Rejection sampling exhausted its attempt budget."""


class BoundaryStratumError(DomainError):
    """The map is only evaluated on the regular stratum; the input sits on
    (or too close to) the boundary of the interlacing cone."""

    def __init__(self, message, margin=None):
        super().__init__(message)
        self.margin = margin


class ContinuationFailure(NumericalFailure):
    """Frame alignment broke down during ray continuation; retry with more
    steps."""


class GaugeDomainError(DomainError):
    """1 + sigma.pi is (numerically) singular; the 2-form does not define a
    gauge transformation at this point."""


class ConventionError(NumericalFailure):
    """A constructed bivector failed its antisymmetry consistency check,
    which signals inconsistent pairing conventions."""


class SchemaError(GzgwError):
    """An input file does not match its declared JSON schema."""
