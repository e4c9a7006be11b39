"""Parameter sweeps over one axis of the scattering problem."""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from itertools import repeat
from typing import Literal

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator

from .. import __version__
from ..exceptions import (
    DomainError,
    ParameterError,
    QDeltaError,
    SweepError,
    format_error_context,
)
from ..scattering.constants import (
    MIN_FLUCTUATION_SAMPLES,
    PLATEAU_TOLERANCE,
    THRESHOLD_MARGIN,
)
from ..scattering.matcher import solve
from ..scattering.model import JumpVariant, ScatteringParams
from ..scattering.observables import conservation_check
from ..utils.logger import get_logger

logger = get_logger(__name__)

Axis = Literal["E", "Va", "Vb", "a0"]


class SweepSpec(BaseModel):
    """One-axis sweep; the swept field of ``fixed`` is ignored."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    fixed: ScatteringParams
    axis: Axis
    lo: float
    hi: float
    steps: int = Field(ge=1)
    variant: JumpVariant = JumpVariant.DERIVED

    @model_validator(mode="after")
    def _check_range(self) -> SweepSpec:
        if self.lo == self.hi:
            if self.steps != 1:
                raise ValueError("a degenerate range lo == hi needs steps == 1")
        elif self.lo > self.hi or self.steps < 2:
            raise ValueError("need lo < hi and steps >= 2")
        if self.axis == "E" and self.lo <= self.fixed.m:
            raise ValueError(f"E-axis sweeps need lo > m (lo={self.lo}, m={self.fixed.m})")
        if self.axis == "a0" and self.lo <= 0:
            raise ValueError("a0-axis sweeps need lo > 0")
        return self

    def grid(self) -> np.ndarray:
        return np.linspace(self.lo, self.hi, self.steps)


class SweepRow(BaseModel):
    model_config = ConfigDict(frozen=True, populate_by_name=True)

    axis_value: float
    reflection: float = Field(alias="R")
    transmission: float = Field(alias="T")
    total: float = Field(alias="sum")
    defect: float


class SweepFailure(BaseModel):
    model_config = ConfigDict(frozen=True)

    axis_value: float
    error: str


class SweepMetadata(BaseModel):
    model_config = ConfigDict(frozen=True)

    fixed: ScatteringParams
    axis: Axis
    lo: float
    hi: float
    steps: int
    variant: JumpVariant
    version: str = __version__


class SweepResult(BaseModel):
    rows: list[SweepRow]
    failures: list[SweepFailure] = Field(default_factory=list)
    metadata: SweepMetadata

    def column(self, name: str) -> np.ndarray:
        """One column as an array, by attribute name (``reflection``, ...)."""
        return np.array([getattr(row, name) for row in self.rows])


def _solve_point(spec: SweepSpec, value: float) -> SweepRow | SweepFailure:
    try:
        params = spec.fixed.model_copy(update={"variant": spec.variant}).with_axis(
            spec.axis, float(value)
        )
        if params.energy <= params.m * (1.0 + THRESHOLD_MARGIN):
            raise DomainError(f"E={params.energy} is within the threshold margin of m={params.m}")
        report = conservation_check(solve(params))
    except QDeltaError as exc:
        logger.warning("Sweep point failed: %s", format_error_context(exc, {spec.axis: value}))
        return SweepFailure(axis_value=float(value), error=f"{type(exc).__name__}: {exc}")
    return SweepRow(
        axis_value=float(value),
        reflection=report.reflection,
        transmission=report.transmission,
        total=report.reflection + report.transmission,
        defect=report.defect,
    )


def run_sweep(spec: SweepSpec, workers: int = 1) -> SweepResult:
    """Solve every grid point of ``spec`` and collect rows in axis order.

    Failed points are recorded, not raised.

    :raises SweepError: if every point fails
    """
    grid = spec.grid()
    logger.info("Sweeping %s over [%g, %g] with %d points", spec.axis, spec.lo, spec.hi, len(grid))
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            outcomes = list(pool.map(_solve_point, repeat(spec), grid))
    else:
        outcomes = [_solve_point(spec, value) for value in grid]

    rows = [item for item in outcomes if isinstance(item, SweepRow)]
    failures = [item for item in outcomes if isinstance(item, SweepFailure)]
    if not rows:
        raise SweepError(f"All {len(grid)} sweep points failed; first: {failures[0].error}")

    metadata = SweepMetadata(
        fixed=spec.fixed.model_copy(update={"variant": spec.variant}),
        axis=spec.axis,
        lo=spec.lo,
        hi=spec.hi,
        steps=spec.steps,
        variant=spec.variant,
    )
    return SweepResult(
        rows=sorted(rows, key=lambda row: row.axis_value), failures=failures, metadata=metadata
    )


def count_local_maxima(values, tolerance: float = PLATEAU_TOLERANCE) -> int:
    """Strict interior local maxima; runs of values within ``tolerance`` count once."""
    levels: list[float] = []
    last = None
    for value in values:
        if last is not None and abs(value - last) <= tolerance:
            last = value
            continue
        levels.append(float(value))
        last = value
    return sum(
        1
        for idx in range(1, len(levels) - 1)
        if levels[idx - 1] < levels[idx] > levels[idx + 1]
    )


def count_fluctuations(result: SweepResult) -> int:
    """Number of oscillation peaks of ``R`` along an energy sweep.

    :raises ParameterError: below 50 rows or when the axis is not E
    """
    if result.metadata.axis != "E":
        raise ParameterError(
            f"Fluctuations are counted along E, got a sweep over {result.metadata.axis}"
        )
    if len(result.rows) < MIN_FLUCTUATION_SAMPLES:
        raise ParameterError(
            f"Need at least {MIN_FLUCTUATION_SAMPLES} rows to count fluctuations, "
            f"got {len(result.rows)}"
        )
    return count_local_maxima(result.column("reflection"))
