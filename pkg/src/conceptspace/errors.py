"""Exception hierarchy shared across the library."""


class ConceptSpaceError(Exception):
    """Base class for all errors raised by this library."""


class ParameterError(ConceptSpaceError, ValueError):
    """An argument violates an operation's precondition."""


class DomainMismatchError(ConceptSpaceError, ValueError):
    """Two values disagree about the domain structure they assume."""


class EmptyIntersectionError(ConceptSpaceError, ValueError):
    """The cuboids of a core have no common point."""


class UnboundedSizeError(ConceptSpaceError, ValueError):
    """A hypervolume was requested over a dimension with an infinite bound."""


class SizeLimitError(ConceptSpaceError, ValueError):
    """Inclusion-exclusion over this many cuboids would be intractable."""


class NumericFailureError(ConceptSpaceError, RuntimeError):
    """A numeric search failed to converge within its iteration budget."""


class DocumentError(ConceptSpaceError, ValueError):
    """A space document failed to parse or validate."""
