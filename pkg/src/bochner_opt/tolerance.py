"""Tolerances shared by every approximate comparison in the package."""

from __future__ import annotations

from dataclasses import dataclass, asdict

from .errors import ConfigurationError


@dataclass(frozen=True)
class ToleranceConfig:
    """Absolute/relative tolerances.

    Attributes
    ----------
    rel, abs : float
        Arithmetic tolerances for norms and coordinates.
    pairing : float
        Absolute tolerance on pairing values used for orthogonality, cone face
        activity and solution membership.
    certificate : float
        Absolute tolerance on sampled variational-inequality test values.
    """

    rel: float = 1e-9
    abs: float = 1e-12
    pairing: float = 1e-9
    certificate: float = 1e-7

    def __post_init__(self):
        for name, value in asdict(self).items():
            if not value >= 0.0:
                raise ConfigurationError(f"tolerance {name} must be non-negative, got {value!r}")

    def slack(self, scale: float = 0.0) -> float:
        """Allowed error for a quantity of magnitude ``scale``."""
        return self.abs + self.rel * max(1.0, abs(scale))

    def close(self, a: float, b: float) -> bool:
        return abs(a - b) <= self.slack(max(abs(a), abs(b)))

    def pairing_slack(self, scale: float = 0.0) -> float:
        """Tolerance for comparing pairing values of magnitude ``scale``.

        Equals ``pairing`` for values of order one and grows linearly beyond,
        so that exact zeros are still tested at 1e-9.
        """
        return self.pairing * max(1.0, abs(scale))

    def to_dict(self) -> dict:
        return asdict(self)


DEFAULT_TOL = ToleranceConfig()
