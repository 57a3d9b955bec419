"""Exception hierarchy shared by the library and the CLI."""


class DiscrepancyError(Exception):
    """Base class for every error raised by atomdisc."""


class SchemaError(DiscrepancyError):
    """A measure or point-set document is malformed."""


class InvariantError(DiscrepancyError):
    """A structurally valid input violates a measure or point-set invariant."""


class DomainError(DiscrepancyError):
    """An argument lies outside the domain of the operation."""


class IrrationalInput(DiscrepancyError):
    """An exact-rational operation received a real-valued weight."""


class PrecisionExhausted(DiscrepancyError):
    """The requested computation needs more digits than the working precision."""


class TailNotConvergent(DiscrepancyError):
    """Enumeration of an infinite measure could not be certified to terminate."""


class ScaleExceeded(DiscrepancyError):
    """An exhaustive routine was asked for an instance beyond desk scale."""


class OracleMismatch(DiscrepancyError):
    """A brute-force cross-check disagreed with a reported value."""
