import json

import numpy as np
import pytest
from pydantic import ValidationError

from src.exceptions import EmitError, ParameterError, SweepError
from src.scattering.constants import CSV_HEADER
from src.scattering.model import JumpVariant, ScatteringParams
from src.sweep.emit import emit, load_json, to_csv, to_json
from src.sweep.figures import canonical_specs, family_specs
from src.sweep.runner import (
    SweepMetadata,
    SweepResult,
    SweepRow,
    SweepSpec,
    count_fluctuations,
    count_local_maxima,
    run_sweep,
)

BASE = ScatteringParams(energy=2.0)


def _synthetic(values) -> SweepResult:
    rows = [
        SweepRow(axis_value=float(idx), reflection=float(v), transmission=1.0 - float(v), total=1.0, defect=0.0)
        for idx, v in enumerate(values)
    ]
    metadata = SweepMetadata(fixed=BASE, axis="E", lo=0.0, hi=float(len(rows) - 1), steps=len(rows), variant="derived")
    return SweepResult(rows=rows, metadata=metadata)


@pytest.fixture
def small_result() -> SweepResult:
    spec = SweepSpec(fixed=BASE, axis="E", lo=1.1, hi=3.0, steps=25)
    return run_sweep(spec)


def test_reference_energy_sweep_is_unitary():
    result = run_sweep(canonical_specs()["fig1_energy"])
    assert len(result.rows) == 200
    assert not result.failures
    assert max(row.defect for row in result.rows) < 1e-10
    assert result.rows[0].axis_value == pytest.approx(1.001)
    assert result.rows[-1].axis_value == pytest.approx(4.0)


def test_degenerate_single_point_at_zero_strength():
    spec = SweepSpec(fixed=BASE.model_copy(update={"vb": 0.0}), axis="Va", lo=0.0, hi=0.0, steps=1)
    result = run_sweep(spec)
    assert len(result.rows) == 1
    row = result.rows[0]
    assert row.reflection == pytest.approx(0.0, abs=1e-24)
    assert row.transmission == pytest.approx(1.0, abs=1e-12)


@pytest.mark.parametrize(
    "kwargs",
    [
        {"axis": "Va", "lo": 1.0, "hi": 1.0, "steps": 5},
        {"axis": "Va", "lo": 2.0, "hi": 1.0, "steps": 5},
        {"axis": "Va", "lo": 0.0, "hi": 1.0, "steps": 1},
        {"axis": "E", "lo": 1.0, "hi": 3.0, "steps": 5},
        {"axis": "a0", "lo": 0.0, "hi": 3.0, "steps": 5},
    ],
)
def test_invalid_sweep_specs(kwargs):
    with pytest.raises(ValidationError):
        SweepSpec(fixed=BASE, **kwargs)


def test_rows_are_sorted_and_fixed_field_ignored(small_result):
    values = [row.axis_value for row in small_result.rows]
    assert values == sorted(values)
    assert small_result.metadata.axis == "E"
    np.testing.assert_allclose(small_result.column("axis_value"), np.linspace(1.1, 3.0, 25))


def test_metadata_records_the_sweep_variant():
    spec = SweepSpec(fixed=BASE, axis="Va", lo=0.0, hi=1.0, steps=5, variant="printed")
    metadata = run_sweep(spec).metadata
    assert metadata.variant is JumpVariant.PRINTED
    assert metadata.fixed.variant is JumpVariant.PRINTED


def test_failed_points_are_collected():
    spec = SweepSpec(fixed=BASE, axis="a0", lo=100.0, hi=300.0, steps=21)
    result = run_sweep(spec)
    assert result.rows
    assert result.failures
    assert all("RangeError" in failure.error for failure in result.failures)
    assert len(result.rows) + len(result.failures) == 21


def test_all_points_failing_raises():
    spec = SweepSpec(fixed=BASE, axis="a0", lo=200.0, hi=300.0, steps=5)
    with pytest.raises(SweepError):
        run_sweep(spec)


def test_parallel_sweep_matches_serial():
    spec = SweepSpec(fixed=BASE, axis="Vb", lo=0.0, hi=2.0, steps=12)
    assert to_csv(run_sweep(spec, workers=2)) == to_csv(run_sweep(spec))


def test_count_monotone_is_zero():
    assert count_fluctuations(_synthetic(np.linspace(0.0, 1.0, 60))) == 0


def test_count_triangle_is_one():
    values = np.concatenate([np.linspace(0.0, 1.0, 30), np.linspace(0.95, 0.0, 30)])
    assert count_fluctuations(_synthetic(values)) == 1


def test_count_is_scale_invariant():
    values = 0.5 + 0.4 * np.sin(np.linspace(0.0, 6 * np.pi, 200))
    assert count_fluctuations(_synthetic(values)) == count_fluctuations(_synthetic(values * 0.37))
    assert count_fluctuations(_synthetic(values)) == 3


def test_plateau_counts_once():
    assert count_local_maxima([0.0, 1.0, 1.0, 1.0, 0.0, 0.5, 0.2]) == 2
    assert count_local_maxima([0.0, 1.0, 1.0 + 1e-14, 0.0]) == 1


def test_count_needs_enough_rows():
    with pytest.raises(ParameterError):
        count_fluctuations(_synthetic(np.linspace(0.0, 1.0, 49)))


def test_count_needs_an_energy_sweep():
    spec = SweepSpec(fixed=BASE, axis="Va", lo=0.0, hi=3.0, steps=60)
    with pytest.raises(ParameterError, match="along E"):
        count_fluctuations(run_sweep(spec))


def test_fluctuations_increase_with_separation():
    specs = family_specs()
    counts = [count_fluctuations(run_sweep(specs[f"family_a0_{a0:g}"])) for a0 in (1.0, 2.0, 4.0)]
    assert counts[0] < counts[1] < counts[2]
    assert counts == [2, 4, 9]


def test_csv_schema(small_result):
    text = to_csv(small_result)
    lines = text.split("\n")
    assert lines[0] == ",".join(CSV_HEADER)
    assert lines[-1] == ""
    assert len(lines) == len(small_result.rows) + 2
    assert "\r" not in text
    first = lines[1].split(",")
    assert len(first) == 5
    assert float(first[1]) == small_result.rows[0].reflection


def test_emit_is_deterministic(tmp_path):
    spec = SweepSpec(fixed=BASE, axis="Va", lo=0.0, hi=3.0, steps=30)
    first = emit(run_sweep(spec), "csv", tmp_path / "a.csv")
    second = emit(run_sweep(spec), "csv", tmp_path / "b.csv")
    assert first.read_bytes() == second.read_bytes()


def test_json_round_trip(small_result, tmp_path):
    path = emit(small_result, "json", tmp_path / "nested" / "sweep.json")
    payload = json.loads(path.read_text(encoding="utf-8"))
    assert set(payload["rows"][0]) == {"axis_value", "R", "T", "sum", "defect"}
    assert payload["metadata"]["axis"] == "E"
    assert load_json(path) == small_result
    assert to_json(load_json(path)) == to_json(small_result)


def test_emit_reports_path_on_failure(small_result, tmp_path):
    blocker = tmp_path / "blocker"
    blocker.write_text("not a directory", encoding="utf-8")
    target = blocker / "sweep.csv"
    with pytest.raises(EmitError) as excinfo:
        emit(small_result, "csv", target)
    assert excinfo.value.path == target
