"""Canonical sweeps for the reflection/transmission plots."""

from __future__ import annotations

from pathlib import Path

from ..scattering.constants import (
    FIGURE_A0_FAMILY,
    FIGURE_ENERGY_START,
    FIGURE_ENERGY_STOP,
    FIGURE_FAMILY_STEPS,
    FIGURE_FIXED_ENERGY,
    FIGURE_STEPS,
    FIGURE_VA_FAMILY,
    FIGURE_VB_FAMILY,
)
from ..scattering.model import JumpVariant, ScatteringParams
from ..utils.logger import get_logger
from .emit import OutputFormat, emit
from .runner import SweepResult, SweepSpec, count_fluctuations, run_sweep

logger = get_logger(__name__)

# m = a0 = Va = Vb = 1
BASE_PARAMS = ScatteringParams(energy=FIGURE_FIXED_ENERGY, m=1.0, va=1.0, vb=1.0, a0=1.0)


def canonical_specs(
    steps: int = FIGURE_STEPS, variant: JumpVariant = JumpVariant.DERIVED
) -> dict[str, SweepSpec]:
    """The four one-axis sweeps: energy, then Va, Vb and a0 at fixed energy."""
    return {
        "fig1_energy": SweepSpec(
            fixed=BASE_PARAMS,
            axis="E",
            lo=FIGURE_ENERGY_START,
            hi=FIGURE_ENERGY_STOP,
            steps=steps,
            variant=variant,
        ),
        "fig2_va": SweepSpec(fixed=BASE_PARAMS, axis="Va", lo=0.0, hi=3.0, steps=steps, variant=variant),
        "fig3_vb": SweepSpec(fixed=BASE_PARAMS, axis="Vb", lo=0.0, hi=3.0, steps=steps, variant=variant),
        "fig4_a0": SweepSpec(fixed=BASE_PARAMS, axis="a0", lo=0.1, hi=5.0, steps=steps, variant=variant),
    }


def family_specs(
    steps: int = FIGURE_FAMILY_STEPS, variant: JumpVariant = JumpVariant.DERIVED
) -> dict[str, SweepSpec]:
    """Energy sweeps with one of Va, Vb or a0 stepped through a short family."""
    specs: dict[str, SweepSpec] = {}
    for field, values in (("va", FIGURE_VA_FAMILY), ("vb", FIGURE_VB_FAMILY), ("a0", FIGURE_A0_FAMILY)):
        for value in values:
            fixed = BASE_PARAMS.model_copy(update={field: value})
            specs[f"family_{field}_{value:g}"] = SweepSpec(
                fixed=fixed,
                axis="E",
                lo=FIGURE_ENERGY_START,
                hi=FIGURE_ENERGY_STOP,
                steps=steps,
                variant=variant,
            )
    return specs


def write_figures(
    out_dir: Path,
    output_format: OutputFormat = "csv",
    steps: int = FIGURE_STEPS,
    families: bool = False,
    workers: int = 1,
) -> dict[str, Path]:
    """Run the canonical sweeps (and optionally the families) and write one file each."""
    out_dir = Path(out_dir)
    specs = canonical_specs(steps)
    if families:
        specs.update(family_specs())

    written: dict[str, Path] = {}
    for name, spec in specs.items():
        result: SweepResult = run_sweep(spec, workers=workers)
        written[name] = emit(result, output_format, out_dir / f"{name}.{output_format}")
        if name.startswith("family_"):
            logger.info("%s: %d fluctuations of R", name, count_fluctuations(result))
    return written
