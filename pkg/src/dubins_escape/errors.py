"""Exception hierarchy for the escape solver.

Two families: DomainError for inputs outside the model's domain of
validity, IntegrationError for numerical failures inside the ODE
machinery.  Every concrete class carries a stable ``code`` string (its
class name) used by the CLI when serializing structured errors.
"""

from __future__ import annotations


class EscapeError(Exception):
    """Base class for every error raised by this package."""

    @property
    def code(self) -> str:
        return type(self).__name__


class DomainError(EscapeError, ValueError):
    """Input lies outside the domain the model is defined on."""


class CenterStart(DomainError):
    """Start at the region center: heading relative to the radial
    direction is undefined there and the dynamics are singular."""


class StartOutside(DomainError):
    """Start radius exceeds the region radius."""


class OnBoundaryInward(DomainError):
    """Start on the boundary but heading inward or tangentially
    (|theta| >= pi/2): not an escape problem."""


class NotIntersecting(DomainError):
    """Turn circle does not cross the region boundary, so no turn-only
    exit point exists."""


class NegativeArc(DomainError):
    """Turn-straight arc angle came out negative: indicates the state
    was misclassified upstream."""


class SeedOutOfRange(DomainError):
    """Characteristic seed heading too close to +/- pi/2, where the
    terminal costate sec(theta_f) is unbounded."""


class IntegrationError(EscapeError, RuntimeError):
    """Numerical integration could not complete."""


class StepFailure(IntegrationError):
    """Adaptive step controller could not meet the error tolerance."""


class NonTermination(IntegrationError):
    """No escape detected within the generous time bound; the state or
    control law is inconsistent with guaranteed escape."""


class NoEscapingCandidate(EscapeError, RuntimeError):
    """Candidate search found no path reaching the boundary (possible
    only for inadmissible inputs)."""
