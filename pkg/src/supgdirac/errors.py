"""Exception hierarchy shared by every stage of a run."""


class DiracFEMError(Exception):
    """Base class for all package errors."""


class ConfigError(DiracFEMError, ValueError):
    """Invalid user configuration (mesh, run options)."""


class DomainError(DiracFEMError, ValueError):
    """Parameters outside the domain where the physics is defined."""


class NumericalError(DiracFEMError, RuntimeError):
    """A numerical stage (quadrature, eigensolve) failed."""


class InsufficientStatesError(NumericalError):
    """Fewer bound states survived selection than were requested."""


class MatchingError(NumericalError):
    """Computed spectrum could not be matched against the exact levels."""
