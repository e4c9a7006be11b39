"""Problem definition for the quaternionic double-delta barrier.

Natural units (ħ = c = 1) throughout. The deltas sit at ``x = ±a0`` with
strength ``Va`` in the real channel and ``Vb`` in the quaternionic channel;
the factor ``i`` of the quaternionic strength is absorbed into the jump
conditions and never materialized here.
"""

from __future__ import annotations

import math
from enum import Enum
from typing import NewType

from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator

from ..exceptions import DomainError, ParameterError

Wavenumber = NewType("Wavenumber", float)

# Sweep axis name -> ScatteringParams field.
AXIS_FIELDS = {"E": "energy", "Va": "va", "Vb": "vb", "a0": "a0"}


class JumpVariant(str, Enum):
    """Selects the b-channel derivative jump law.

    ``DERIVED`` integrates the coupled ODE across a delta and couples
    ``Va φb + Vb φa``. ``PRINTED`` keeps the literal form ``Va φa + Vb φb``;
    the two agree whenever ``Va == Vb``.
    """

    DERIVED = "derived"
    PRINTED = "printed"


class Incidence(str, Enum):
    """Side from which the unit-amplitude plane wave arrives."""

    LEFT = "left"
    RIGHT = "right"


class ScatteringParams(BaseModel):
    """Full scattering problem. The regime check ``E > m`` is deferred to solve time."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    energy: float = Field(description="Total energy E")
    m: float = Field(default=1.0, description="Fermion mass")
    va: float = Field(default=1.0, description="Delta strength, real channel")
    vb: float = Field(default=1.0, description="Delta strength, quaternionic channel")
    a0: float = Field(default=1.0, description="Half-separation of the deltas")
    variant: JumpVariant = JumpVariant.DERIVED

    @field_validator("energy", "m", "va", "vb", "a0")
    @classmethod
    def _finite(cls, value: float) -> float:
        if not math.isfinite(value):
            raise ValueError("must be finite")
        return value

    @field_validator("m", "a0")
    @classmethod
    def _positive(cls, value: float) -> float:
        if value <= 0:
            raise ValueError("must be positive")
        return value

    def with_axis(self, axis: str, value: float) -> ScatteringParams:
        """Copy with one sweep axis (``E``, ``Va``, ``Vb`` or ``a0``) replaced."""
        try:
            field = AXIS_FIELDS[axis]
        except KeyError:
            raise ParameterError(f"Unknown sweep axis: {axis}") from None
        try:
            return self.model_validate({**self.model_dump(), field: value})
        except ValidationError as exc:
            raise ParameterError(f"Invalid {axis}={value}: {exc.errors()[0]['msg']}") from exc

    def wavenumber(self) -> Wavenumber:
        return dispersion(self.energy, self.m)


def dispersion(energy: float, m: float) -> Wavenumber:
    """Momentum of a free particle, ``p = sqrt(E² − m²)``.

    :raises ParameterError: if ``m`` is not positive
    :raises DomainError: if ``E <= m`` (threshold or bound regime)
    """
    if m <= 0:
        raise ParameterError(f"Mass must be positive, got m={m}")
    if energy <= m:
        raise DomainError(f"Scattering requires E > m (got E={energy}, m={m})")
    # (E - m)(E + m) avoids cancellation in E² - m² just above threshold
    return Wavenumber(math.sqrt((energy - m) * (energy + m)))


def delta_strengths(params: ScatteringParams) -> tuple[float, float]:
    """Return ``(Va, Vb)`` as they enter the jump conditions."""
    return (params.va, params.vb)
