"""Matching system for the double delta and its dense solve.

The wavefunction in each region is a short sum of exponentials
``coefficient · exp(k x)`` per channel (a: ``k = ±ip``, b: ``k = ±p``). The
coefficients are either unknown amplitudes, labelled per ``UNKNOWN_ORDER``,
or the unit incident amplitude. Continuity of both channels and the
derivative jumps at ``x = ±a0`` give eight complex-linear equations.
"""

from __future__ import annotations

import cmath
from collections.abc import Mapping
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from ..exceptions import RangeError, SingularMatrixError
from ..utils.logger import get_logger
from .constants import (
    MAX_EVANESCENT_EXPONENT,
    RESIDUAL_TOLERANCE,
    ROW_LABELS,
    SINGULAR_PIVOT_RATIO,
    UNKNOWN_ORDER,
    VERIFY_TOLERANCE,
)
from .model import Incidence, JumpVariant, ScatteringParams, delta_strengths, dispersion

logger = get_logger(__name__)

_INDEX = {label: idx for idx, label in enumerate(UNKNOWN_ORDER)}


class Region(str, Enum):
    I = "I"  # noqa: E741
    II = "II"
    III = "III"


@dataclass(frozen=True, slots=True)
class Term:
    """``coefficient · exp(k x)``; ``label=None`` is the unit incident wave."""

    label: str | None
    k: complex


@dataclass(frozen=True, slots=True)
class RegionWave:
    """Closed-form channel expansions of one region."""

    region: Region
    a_terms: tuple[Term, ...]
    b_terms: tuple[Term, ...]

    def terms(self, channel: str) -> tuple[Term, ...]:
        return self.a_terms if channel == "a" else self.b_terms

    def value(self, channel: str, amps: Mapping[str, complex], x: float) -> complex:
        return sum(
            (_amp(amps, term) * cmath.exp(term.k * x) for term in self.terms(channel)), 0j
        )

    def slope(self, channel: str, amps: Mapping[str, complex], x: float) -> complex:
        return sum(
            (_amp(amps, term) * term.k * cmath.exp(term.k * x) for term in self.terms(channel)),
            0j,
        )


def _amp(amps: Mapping[str, complex], term: Term) -> complex:
    return 1 + 0j if term.label is None else amps[term.label]


def region_waves(p: float, incidence: Incidence = Incidence.LEFT) -> dict[Region, RegionWave]:
    """Region expansions for a unit wave incident from ``incidence``.

    Only decaying evanescent modes appear in the outer regions; nothing is
    incident in the b-channel.
    """
    ik = 1j * p
    inner = RegionWave(
        Region.II,
        (Term("c1", ik), Term("c2", -ik)),
        (Term("c3", p), Term("c4", -p)),
    )
    if incidence is Incidence.LEFT:
        left = RegionWave(Region.I, (Term(None, ik), Term("r", -ik)), (Term("rt", p),))
        right = RegionWave(Region.III, (Term("t", ik),), (Term("tt", -p),))
    else:
        left = RegionWave(Region.I, (Term("t", -ik),), (Term("tt", p),))
        right = RegionWave(Region.III, (Term(None, -ik), Term("r", ik)), (Term("rt", -p),))
    return {Region.I: left, Region.II: inner, Region.III: right}


def jump_coupling(params: ScatteringParams, channel: str) -> tuple[float, float, float]:
    """Return ``(g, w_a, w_b)`` such that ``[φ_c'] = g · (w_a φa + w_b φb)``."""
    va, vb = delta_strengths(params)
    if channel == "a":
        return (2.0 * (params.energy + params.m), va, vb)
    g = 2.0 * (params.energy - params.m)
    if params.variant is JumpVariant.DERIVED:
        return (g, vb, va)
    return (g, va, vb)


@dataclass(frozen=True, eq=False)
class MatchingSystem:
    matrix: np.ndarray
    rhs: np.ndarray
    params: ScatteringParams
    incidence: Incidence = Incidence.LEFT
    unknown_order: tuple[str, ...] = UNKNOWN_ORDER
    row_labels: tuple[str, ...] = ROW_LABELS


@dataclass(frozen=True)
class ScatteringSolution:
    r: complex
    rt: complex
    c1: complex
    c2: complex
    c3: complex
    c4: complex
    t: complex
    tt: complex
    residual_norm: float
    params: ScatteringParams
    incidence: Incidence = Incidence.LEFT

    def amplitudes(self) -> dict[str, complex]:
        return {label: getattr(self, label) for label in UNKNOWN_ORDER}

    @property
    def reflection(self) -> float:
        return abs(self.r) ** 2

    @property
    def transmission(self) -> float:
        return abs(self.t) ** 2


@dataclass
class MatchingReport:
    """Per-condition residuals of a solved system at ``x = ±a0``."""

    residuals: dict[str, complex] = field(default_factory=dict)
    max_violation: float = 0.0
    scaled_violation: float = 0.0

    @property
    def ok(self) -> bool:
        return self.scaled_violation <= VERIFY_TOLERANCE


class _Row:
    def __init__(self) -> None:
        self.coeffs = np.zeros(len(UNKNOWN_ORDER), dtype=complex)
        self.const = 0j

    def add(self, term: Term, factor: complex) -> None:
        if term.label is None:
            self.const += factor
        else:
            self.coeffs[_INDEX[term.label]] += factor


def _continuity_row(left: RegionWave, right: RegionWave, channel: str, x0: float) -> _Row:
    row = _Row()
    for term in right.terms(channel):
        row.add(term, cmath.exp(term.k * x0))
    for term in left.terms(channel):
        row.add(term, -cmath.exp(term.k * x0))
    return row


def _jump_row(
    left: RegionWave,
    right: RegionWave,
    outer: RegionWave,
    channel: str,
    x0: float,
    params: ScatteringParams,
) -> _Row:
    row = _Row()
    for term in right.terms(channel):
        row.add(term, term.k * cmath.exp(term.k * x0))
    for term in left.terms(channel):
        row.add(term, -term.k * cmath.exp(term.k * x0))
    g, w_a, w_b = jump_coupling(params, channel)
    for other, weight in (("a", w_a), ("b", w_b)):
        for term in outer.terms(other):
            row.add(term, -g * weight * cmath.exp(term.k * x0))
    return row


def _check_exponent(p: float, a0: float) -> None:
    if p * a0 > MAX_EVANESCENT_EXPONENT:
        raise RangeError(
            f"p*a0={p * a0:.3g} exceeds {MAX_EVANESCENT_EXPONENT:g}; "
            "evanescent exponentials would overflow"
        )


def assemble_system(
    params: ScatteringParams, incidence: Incidence = Incidence.LEFT
) -> MatchingSystem:
    """Build the 8×8 continuity/jump system; incident terms go to the rhs.

    :raises DomainError: if ``E <= m``
    :raises RangeError: if ``p·a0`` exceeds the overflow guard
    """
    p = dispersion(params.energy, params.m)
    a0 = params.a0
    _check_exponent(p, a0)
    waves = region_waves(p, incidence)
    w1, w2, w3 = waves[Region.I], waves[Region.II], waves[Region.III]

    rows = [
        _continuity_row(w1, w2, "a", -a0),
        _continuity_row(w1, w2, "b", -a0),
        _continuity_row(w2, w3, "a", a0),
        _continuity_row(w2, w3, "b", a0),
        _jump_row(w1, w2, w1, "a", -a0, params),
        _jump_row(w1, w2, w1, "b", -a0, params),
        _jump_row(w2, w3, w3, "a", a0, params),
        _jump_row(w2, w3, w3, "b", a0, params),
    ]
    matrix = np.array([row.coeffs for row in rows])
    rhs = np.array([-row.const for row in rows])
    matrix.setflags(write=False)
    rhs.setflags(write=False)
    return MatchingSystem(matrix=matrix, rhs=rhs, params=params, incidence=incidence)


def solve_dense(system: MatchingSystem) -> ScatteringSolution:
    """Gaussian elimination with partial pivoting over complex scalars.

    Columns are first scaled by exact powers of two so every column peaks
    near one; the unknowns of the evanescent channel otherwise span
    ``e^{±2 p a0}``. Rows are used as assembled.

    :raises SingularMatrixError: if a pivot falls below the singular threshold
    """
    a = np.array(system.matrix, dtype=complex)
    b = np.array(system.rhs, dtype=complex)
    n = len(b)

    col_max = np.max(np.abs(a), axis=0)
    _, exponents = np.frexp(col_max)
    scale = np.ldexp(1.0, -exponents)
    a *= scale
    threshold = SINGULAR_PIVOT_RATIO * float(np.max(np.abs(a)))

    for k in range(n):
        pivot_row = k + int(np.argmax(np.abs(a[k:, k])))
        pivot = float(abs(a[pivot_row, k]))
        if pivot <= threshold:
            raise SingularMatrixError(
                f"Matching matrix is singular at column {system.unknown_order[k]} "
                f"(pivot {pivot:.3e} <= {threshold:.3e})",
                pivot=pivot,
                column=system.unknown_order[k],
            )
        if pivot_row != k:
            a[[k, pivot_row]] = a[[pivot_row, k]]
            b[[k, pivot_row]] = b[[pivot_row, k]]
        factors = a[k + 1 :, k] / a[k, k]
        a[k + 1 :, k:] -= np.outer(factors, a[k, k:])
        b[k + 1 :] -= factors * b[k]

    y = np.zeros(n, dtype=complex)
    for k in range(n - 1, -1, -1):
        y[k] = (b[k] - a[k, k + 1 :] @ y[k + 1 :]) / a[k, k]
    x = y * scale

    residual = float(np.max(np.abs(system.matrix @ x - system.rhs)))
    bound = RESIDUAL_TOLERANCE * (1.0 + float(np.max(np.abs(system.rhs))))
    if residual > bound:
        logger.warning("Matching residual %.3e exceeds %.3e for %s", residual, bound, system.params)
    logger.debug("Solved matching system: residual=%.3e", residual)

    values = {label: complex(x[idx]) for idx, label in enumerate(system.unknown_order)}
    return ScatteringSolution(
        **values, residual_norm=residual, params=system.params, incidence=system.incidence
    )


def solve(params: ScatteringParams, incidence: Incidence = Incidence.LEFT) -> ScatteringSolution:
    """Assemble and solve in one step."""
    return solve_dense(assemble_system(params, incidence))


def verify_matching(sol: ScatteringSolution) -> MatchingReport:
    """Re-evaluate all eight matching conditions from the region wavefunctions."""
    params = sol.params
    p = dispersion(params.energy, params.m)
    a0 = params.a0
    waves = region_waves(p, sol.incidence)
    amps = sol.amplitudes()
    w1, w2, w3 = waves[Region.I], waves[Region.II], waves[Region.III]

    report = MatchingReport()
    largest = 0.0

    def record(label: str, parts: list[complex]) -> None:
        nonlocal largest
        report.residuals[label] = sum(parts, 0j)
        largest = max(largest, *(abs(part) for part in parts))

    for x0, left, right in ((-a0, w1, w2), (a0, w2, w3)):
        side = "-a0" if x0 < 0 else "+a0"
        for channel in ("a", "b"):
            record(
                f"{channel}-continuity@{side}",
                [right.value(channel, amps, x0), -left.value(channel, amps, x0)],
            )
    for x0, left, right, outer in ((-a0, w1, w2, w1), (a0, w2, w3, w3)):
        side = "-a0" if x0 < 0 else "+a0"
        phi = {ch: outer.value(ch, amps, x0) for ch in ("a", "b")}
        for channel in ("a", "b"):
            g, w_a, w_b = jump_coupling(params, channel)
            record(
                f"{channel}-jump@{side}",
                [
                    right.slope(channel, amps, x0),
                    -left.slope(channel, amps, x0),
                    -g * w_a * phi["a"],
                    -g * w_b * phi["b"],
                ],
            )

    report.residuals = {label: report.residuals[label] for label in ROW_LABELS}
    report.max_violation = max(abs(value) for value in report.residuals.values())
    report.scaled_violation = report.max_violation / (1.0 + largest)
    return report
