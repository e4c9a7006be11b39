import math

import numpy as np
import pytest
from pydantic import ValidationError

from src.exceptions import DomainError, ParameterError
from src.scattering.model import (
    JumpVariant,
    ScatteringParams,
    delta_strengths,
    dispersion,
)


def test_dispersion_examples():
    assert dispersion(math.sqrt(5.0), 1.0) == pytest.approx(2.0, rel=1e-15)
    assert dispersion(1.25, 1.0) == pytest.approx(0.75, rel=1e-15)


@pytest.mark.parametrize(("energy", "m"), [(1.0, 1.0), (0.5, 1.0), (-2.0, 1.0)])
def test_dispersion_rejects_threshold_and_below(energy, m):
    with pytest.raises(DomainError):
        dispersion(energy, m)


def test_dispersion_rejects_non_positive_mass():
    with pytest.raises(ParameterError):
        dispersion(2.0, 0.0)


def test_dispersion_satisfies_mass_shell():
    rng = np.random.default_rng(7)
    for m in rng.uniform(0.1, 10.0, size=50):
        for ratio in (1.0 + 1e-9, 1.001, 1.5, 10.0, 100.0):
            energy = m * ratio
            p = dispersion(energy, m)
            assert (p * p + m * m) == pytest.approx(energy * energy, rel=1e-14)


def test_dispersion_is_strictly_increasing():
    energies = np.linspace(1.0001, 50.0, 2000)
    momenta = [dispersion(e, 1.0) for e in energies]
    assert all(b > a for a, b in zip(momenta, momenta[1:], strict=False))


@pytest.mark.parametrize(
    ("va", "vb"),
    [(0.0, 0.0), (1.0, 1.0), (2.0, 0.5)],
)
def test_delta_strengths_pass_through(va, vb):
    params = ScatteringParams(energy=2.0, va=va, vb=vb)
    assert delta_strengths(params) == (va, vb)


def test_params_defaults_follow_reference_figure():
    params = ScatteringParams(energy=2.0)
    assert (params.m, params.va, params.vb, params.a0) == (1.0, 1.0, 1.0, 1.0)
    assert params.variant is JumpVariant.DERIVED


@pytest.mark.parametrize(
    "overrides",
    [{"m": 0.0}, {"a0": -1.0}, {"va": math.inf}, {"energy": math.nan}, {"unknown": 1.0}],
)
def test_params_validation(overrides):
    with pytest.raises(ValidationError):
        ScatteringParams(**{"energy": 2.0, **overrides})


def test_params_allow_energy_below_threshold_until_solve():
    params = ScatteringParams(energy=0.5)
    with pytest.raises(DomainError):
        params.wavenumber()


def test_with_axis_replaces_one_field():
    params = ScatteringParams(energy=2.0)
    assert params.with_axis("E", 3.0).energy == 3.0
    assert params.with_axis("Va", 0.5).va == 0.5
    assert params.with_axis("Vb", 0.25).vb == 0.25
    assert params.with_axis("a0", 4.0).a0 == 4.0
    assert params.energy == 2.0


def test_with_axis_errors():
    params = ScatteringParams(energy=2.0)
    with pytest.raises(ParameterError):
        params.with_axis("mass", 1.0)
    with pytest.raises(ParameterError):
        params.with_axis("a0", 0.0)
