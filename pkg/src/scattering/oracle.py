"""Independent cross-checks of the matching solver.

``integrate`` replaces each delta by a normalized Gaussian and integrates the
coupled second-order system directly, reading ``r`` and ``t`` off the
asymptotic left solution. ``transfer_matrix_amplitudes`` covers the purely
complex limit ``Vb = 0`` with 2×2 plane-wave transfer matrices. Neither path
uses the matching-system code.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from ..exceptions import ParameterError, RangeError, StepSizeError
from ..utils.logger import get_logger
from .constants import (
    MAX_EVANESCENT_EXPONENT,
    ORACLE_MAX_WIDTH_RATIO,
    ORACLE_STEPS_PER_WIDTH,
    ORACLE_TAIL_WIDTHS,
    ORACLE_TRUNCATION_LIMIT,
    ORACLE_WINDOW_SAMPLES,
)
from .model import ScatteringParams, delta_strengths, dispersion

logger = get_logger(__name__)

State = tuple[complex, complex, complex, complex]


@dataclass(frozen=True)
class RegularizedProblem:
    """Gaussian-regularized problem on ``[x_left, x_right]`` with fixed step."""

    params: ScatteringParams
    epsilon: float
    x_left: float
    x_right: float
    step: float

    def __post_init__(self) -> None:
        a0 = self.params.a0
        tail = ORACLE_TAIL_WIDTHS * self.epsilon
        if self.epsilon <= 0 or self.epsilon > ORACLE_MAX_WIDTH_RATIO * a0:
            raise ParameterError(
                f"epsilon={self.epsilon} must lie in (0, a0/20] with a0={a0}"
            )
        if not self.x_left < -a0 - tail:
            raise ParameterError(f"x_left={self.x_left} must be < -a0 - 10*epsilon")
        if not self.x_right > a0 + tail:
            raise ParameterError(f"x_right={self.x_right} must be > a0 + 10*epsilon")
        if self.step <= 0:
            raise ParameterError(f"step must be positive, got {self.step}")

    @classmethod
    def for_params(cls, params: ScatteringParams, epsilon: float) -> RegularizedProblem:
        """Default domain: a margin of 12 widths plus one wavelength on the left."""
        p = dispersion(params.energy, params.m)
        margin = (ORACLE_TAIL_WIDTHS + 2.0) * epsilon
        return cls(
            params=params,
            epsilon=epsilon,
            x_left=-params.a0 - margin - 2.0 * math.pi / p,
            x_right=params.a0 + margin,
            step=epsilon / ORACLE_STEPS_PER_WIDTH,
        )


@dataclass
class OracleDiagnostics:
    steps: int = 0
    step: float = 0.0
    truncation_estimate: float = 0.0
    window_samples: int = 0
    fit_residual: float = 0.0
    unitarity_defect: float = 0.0


@dataclass(frozen=True)
class OracleResult:
    r: complex
    t: complex
    tt: complex
    diagnostics: OracleDiagnostics


def gaussian_profile(x: np.ndarray, a0: float, epsilon: float) -> np.ndarray:
    """Sum of unit-area Gaussians ``exp(−(x∓a0)²/ε²) / (ε√π)``."""
    norm = 1.0 / (epsilon * math.sqrt(math.pi))
    return norm * (np.exp(-(((x - a0) / epsilon) ** 2)) + np.exp(-(((x + a0) / epsilon) ** 2)))


class _Coefficients:
    """Second-derivative couplings of the regularized system.

    φa'' = caa φa + cab φb and φb'' = cba φa + cbb φb, where the quaternionic
    strength ``Sb = i Vb G`` enters the a-equation conjugated.
    """

    def __init__(self, params: ScatteringParams, p: float) -> None:
        e, m = params.energy, params.m
        self.p2 = p * p
        self.ga = 2.0 * (e + m)
        self.gb = 2.0 * (e - m)
        va, vb = delta_strengths(params)
        self.va = va
        self.sb = 1j * vb

    def at(self, profile: np.ndarray) -> tuple[list, list, list, list]:
        sa = self.va * profile
        sb = self.sb * profile
        caa = -self.p2 + self.ga * sa
        cab = 1j * self.ga * np.conj(sb)
        cbb = self.p2 + self.gb * sa
        cba = -1j * self.gb * sb
        return (
            caa.astype(complex).tolist(),
            cab.tolist(),
            cbb.astype(complex).tolist(),
            cba.tolist(),
        )


def _rk4_step(y: State, c0: tuple, ch: tuple, c1: tuple, h: float) -> State:
    a, da, b, db = y
    aa0, ab0, bb0, ba0 = c0
    aah, abh, bbh, bah = ch
    aa1, ab1, bb1, ba1 = c1
    hh = 0.5 * h

    k1a, k1da, k1b, k1db = da, aa0 * a + ab0 * b, db, ba0 * a + bb0 * b
    a2, b2 = a + hh * k1a, b + hh * k1b
    k2a, k2da, k2b, k2db = da + hh * k1da, aah * a2 + abh * b2, db + hh * k1db, bah * a2 + bbh * b2
    a3, b3 = a + hh * k2a, b + hh * k2b
    k3a, k3da, k3b, k3db = da + hh * k2da, aah * a3 + abh * b3, db + hh * k2db, bah * a3 + bbh * b3
    a4, b4 = a + h * k3a, b + h * k3b
    k4a, k4da, k4b, k4db = da + h * k3da, aa1 * a4 + ab1 * b4, db + h * k3db, ba1 * a4 + bb1 * b4

    s = h / 6.0
    return (
        a + s * (k1a + 2 * k2a + 2 * k3a + k4a),
        da + s * (k1da + 2 * k2da + 2 * k3da + k4da),
        b + s * (k1b + 2 * k2b + 2 * k3b + k4b),
        db + s * (k1db + 2 * k2db + 2 * k3db + k4db),
    )


def _truncation_estimate(problem: RegularizedProblem, coeffs: _Coefficients, p: float) -> float:
    """Step-doubling error estimate across the right delta's centre."""
    h = -problem.step
    x0 = problem.params.a0 - 0.5 * h
    xs = x0 + np.array([0.0, 0.25, 0.5, 0.75, 1.0]) * h
    caa, cab, cbb, cba = coeffs.at(gaussian_profile(xs, problem.params.a0, problem.epsilon))
    c = list(zip(caa, cab, cbb, cba, strict=True))
    y0: State = (1 + 0j, 1j * p, 1 + 0j, -p + 0j)
    full = _rk4_step(y0, c[0], c[2], c[4], h)
    half = _rk4_step(_rk4_step(y0, c[0], c[1], c[2], 0.5 * h), c[2], c[3], c[4], 0.5 * h)
    return max(abs(u - v) for u, v in zip(full, half, strict=True)) / 15.0


def _fit(basis: np.ndarray, samples: np.ndarray) -> tuple[np.ndarray, float]:
    coef, *_ = np.linalg.lstsq(basis, samples, rcond=None)
    residual = float(np.max(np.abs(basis @ coef - samples)))
    return coef, residual


def integrate(problem: RegularizedProblem) -> OracleResult:
    """Integrate from ``x_right`` to ``x_left`` and extract ``r``, ``t``.

    Two seeds start in the transmitted region: the travelling mode ``e^{ipx}``
    (t = 1) and the decaying mode ``e^{−px}``. On the left their combination
    is fixed by removing the mode that grows towards −∞, then rescaled to a
    unit incident amplitude.

    :raises StepSizeError: if the local truncation estimate exceeds 1e-8
    :raises RangeError: if ``p·|x|`` would overflow the evanescent modes
    """
    params = problem.params
    p = dispersion(params.energy, params.m)
    span = problem.x_right - problem.x_left
    if p * max(span, abs(problem.x_right), abs(problem.x_left)) > MAX_EVANESCENT_EXPONENT:
        raise RangeError(f"p*|x| exceeds {MAX_EVANESCENT_EXPONENT:g} on the oracle domain")

    coeffs = _Coefficients(params, p)
    estimate = _truncation_estimate(problem, coeffs, p)
    if estimate > ORACLE_TRUNCATION_LIMIT:
        raise StepSizeError(
            f"Local truncation estimate {estimate:.3e} exceeds {ORACLE_TRUNCATION_LIMIT:g}; "
            f"reduce step (currently {problem.step:g})"
        )

    n_steps = math.ceil(span / problem.step)
    h = span / n_steps
    half_grid = problem.x_right - 0.5 * h * np.arange(2 * n_steps + 1)
    caa, cab, cbb, cba = coeffs.at(gaussian_profile(half_grid, params.a0, problem.epsilon))
    c = list(zip(caa, cab, cbb, cba, strict=True))

    window_end = min(
        problem.x_left + 2.0 * math.pi / p, -params.a0 - ORACLE_TAIL_WIDTHS * problem.epsilon
    )
    first_window = math.ceil((problem.x_right - window_end) / h)
    stride = max(1, (n_steps - first_window) // ORACLE_WINDOW_SAMPLES)

    x_r = problem.x_right
    seeds: list[State] = [
        (cmath.exp(1j * p * x_r), 1j * p * cmath.exp(1j * p * x_r), 0j, 0j),
        (0j, 0j, 1 + 0j, -p + 0j),
    ]
    xs: list[float] = []
    samples: list[list[State]] = [[], []]
    for n in range(n_steps + 1):
        if n >= first_window and (n_steps - n) % stride == 0:
            xs.append(problem.x_right - n * h)
            for k in range(2):
                samples[k].append(seeds[k])
        if n == n_steps:
            break
        c0, ch, c1 = c[2 * n], c[2 * n + 1], c[2 * n + 2]
        seeds = [_rk4_step(y, c0, ch, c1, -h) for y in seeds]

    x = np.array(xs)
    travelling = np.column_stack([np.exp(1j * p * x), np.exp(-1j * p * x)])
    evanescent = np.column_stack([np.exp(p * (x - window_end)), np.exp(-p * (x - window_end))])
    fits = []
    fit_residual = 0.0
    for k in range(2):
        values = np.array(samples[k])
        (inc, refl), res_a = _fit(travelling, values[:, 0])
        (_, growing), res_b = _fit(evanescent, values[:, 2])
        fits.append((inc, refl, growing))
        fit_residual = max(fit_residual, res_a, res_b)

    (inc1, refl1, grow1), (inc2, refl2, grow2) = fits
    alpha, beta = grow2, -grow1
    incident = alpha * inc1 + beta * inc2
    r = complex((alpha * refl1 + beta * refl2) / incident)
    t = complex(alpha / incident)
    tt = complex(beta * math.exp(p * x_r) / incident)

    diagnostics = OracleDiagnostics(
        steps=n_steps,
        step=h,
        truncation_estimate=estimate,
        window_samples=len(xs),
        fit_residual=fit_residual,
        unitarity_defect=abs(abs(r) ** 2 + abs(t) ** 2 - 1.0),
    )
    logger.debug(
        "Oracle eps=%g steps=%d r=%s t=%s defect=%.3e",
        problem.epsilon,
        n_steps,
        r,
        t,
        diagnostics.unitarity_defect,
    )
    return OracleResult(r=r, t=t, tt=tt, diagnostics=diagnostics)


def oracle_amplitudes(params: ScatteringParams, epsilon: float) -> OracleResult:
    """Run :func:`integrate` on the default domain for ``params``."""
    return integrate(RegularizedProblem.for_params(params, epsilon))


def transfer_matrix_amplitudes(params: ScatteringParams) -> tuple[complex, complex]:
    """``(r, t)`` of the complex double delta from 2×2 transfer matrices.

    Valid only when the quaternionic strength vanishes.

    :raises ParameterError: if ``Vb != 0``
    """
    if params.vb != 0:
        raise ParameterError("Transfer-matrix oracle requires Vb = 0")
    p = dispersion(params.energy, params.m)
    kappa = 2.0 * (params.energy + params.m) * params.va / (2j * p)

    def kick(x0: float) -> np.ndarray:
        phase = cmath.exp(2j * p * x0)
        return np.eye(2, dtype=complex) + kappa * np.array([[1, 1 / phase], [-phase, -1]])

    total = kick(params.a0) @ kick(-params.a0)
    r = -total[1, 0] / total[1, 1]
    t = total[0, 0] + total[0, 1] * r
    return complex(r), complex(t)
