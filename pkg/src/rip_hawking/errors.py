"""Exception types raised by the library.

Everything derives from :class:`DomainError` so callers (and the CLI) can
catch physics-level failures in one place and keep usage errors separate.
"""


class DomainError(ValueError):
    """Input outside the domain where a formula is defined."""


class NoHorizonError(DomainError):
    pass


class TangentHorizonError(DomainError):
    """Double root: black- and white-hole horizons coincide at ``x``."""

    def __init__(self, message, x):
        super().__init__(message)
        self.x = x


class HorizonSingularError(DomainError):
    pass


class ResonantIndicialError(DomainError):
    pass


class StiffnessError(DomainError):
    pass


class ResolutionError(DomainError):
    pass


class QuadratureError(DomainError):
    pass


class InternalInconsistency(RuntimeError):
    """A relation that should hold identically did not."""


class SeriesConvergenceError(DomainError):
    """Truncated series did not reach the requested residual."""
