"""Exception types shared across the package.

The CLI maps these onto exit codes (validation -> 1, infeasible plan -> 2)
and the HTTP service onto status codes (400 / 422).
"""

from __future__ import annotations


class FallriskError(Exception):
    """Base class for everything raised deliberately by this package."""


class LayoutError(FallriskError):
    """A layout document failed validation.

    `field` is a dotted path naming the offending entry, e.g.
    "floors[1].polygon".
    """

    def __init__(self, field: str, message: str):
        self.field = field
        super().__init__(f"{field}: {message}")


class ConfigError(FallriskError):
    """A coefficient/planner config override failed validation."""

    def __init__(self, field: str, message: str):
        self.field = field
        super().__init__(f"{field}: {message}")


class NoSupportObjectsError(FallriskError):
    """Raised by nearest-support queries when the layout has no supports."""


class EndpointSamplingError(FallriskError):
    """Start/goal sampling exhausted its rejection budget."""


class PlanInfeasibleError(FallriskError):
    """No collision-free trajectory found after all restarts."""
