"""Spinors, probability current and the conservation check.

Each region's spinor has a quaternion upper block ``U = φ⁺a + j φ⁺b`` and a
lower block obtained from the free Dirac relations

    φ⁻a = φ⁺a' / (i(E+m)),    φ⁻b = φ⁺b' / (i(E−m)),

with σ_x absorbed (it enters the current twice and squares to one). The
current ``J = Ψ† α_x Ψ`` then reads ``conj(U)·L + conj(L)·U``; the quaternion
conjugate reverses the order of ``j`` and the complex coefficients.
"""

from __future__ import annotations

from collections.abc import Mapping
from dataclasses import dataclass

from ..algebra.quaternion import Quaternion, qconj
from ..utils.logger import get_logger
from .matcher import Region, RegionWave, ScatteringSolution, region_waves
from .model import Incidence, dispersion

logger = get_logger(__name__)

_REALNESS_TOLERANCE = 1e-12

# Row factors (A) pair with column factors (B) in the order of the expansion
# J = A1B1 + A1B2 + A2B1 + A2B2 + A3B3 + A3B4 + A4B3 + A4B4.
TERM_LABELS = ("A1B1", "A1B2", "A2B1", "A2B2", "A3B3", "A3B4", "A4B3", "A4B4")
CROSS_TERMS = ("A1B2", "A2B1", "A3B4", "A4B3")
EVANESCENT_TERMS = ("A2B2", "A4B4")


@dataclass(frozen=True)
class RegionSpinor:
    """Closed-form spinor of one region; evaluable at any x in that region."""

    region: Region
    wave: RegionWave
    amps: Mapping[str, complex]
    energy: float
    m: float

    def channels(self, x: float) -> tuple[complex, complex, complex, complex]:
        """``(φ⁺a, φ⁺b, φ⁻a, φ⁻b)`` at ``x``."""
        upper_a = self.wave.value("a", self.amps, x)
        upper_b = self.wave.value("b", self.amps, x)
        lower_a = self.wave.slope("a", self.amps, x) / (1j * (self.energy + self.m))
        lower_b = self.wave.slope("b", self.amps, x) / (1j * (self.energy - self.m))
        return upper_a, upper_b, lower_a, lower_b

    def upper(self, x: float) -> Quaternion:
        upper_a, upper_b, _, _ = self.channels(x)
        return Quaternion.from_left_j(upper_a, upper_b)

    def lower(self, x: float) -> Quaternion:
        _, _, lower_a, lower_b = self.channels(x)
        return Quaternion.from_left_j(lower_a, lower_b)


@dataclass(frozen=True)
class CurrentReport:
    j_left: float
    j_right: float
    reflection: float
    transmission: float
    defect: float
    formula_mismatch: float


def build_spinor(sol: ScatteringSolution, region: Region | str) -> RegionSpinor:
    """Spinor of ``region`` built from the solved amplitudes."""
    region = Region(region)
    params = sol.params
    p = dispersion(params.energy, params.m)
    wave = region_waves(p, sol.incidence)[region]
    return RegionSpinor(
        region=region, wave=wave, amps=sol.amplitudes(), energy=params.energy, m=params.m
    )


def current_quaternion(spinor: RegionSpinor, x: float) -> Quaternion:
    """Full ``Ψ† α_x Ψ`` before projecting onto its real part."""
    upper = spinor.upper(x)
    lower = spinor.lower(x)
    return qconj(upper) * lower + qconj(lower) * upper


def current_at(spinor: RegionSpinor, x: float) -> float:
    """Probability current at ``x``."""
    value = current_quaternion(spinor, x)
    residue = max(abs(value.za.imag), abs(value.zb))
    if residue > _REALNESS_TOLERANCE * max(1.0, abs(value.scalar)):
        logger.warning("Current at x=%g has non-real residue %.3e", x, residue)
    return value.scalar


def current_terms(spinor: RegionSpinor, x: float) -> dict[str, Quaternion]:
    """The eight products of the current expansion, individually.

    ``A1, A2`` are the conjugated upper a/b parts, ``A3, A4`` the conjugated
    lower a/b parts; ``B1, B2`` are the lower a/b parts and ``B3, B4`` the
    upper ones.
    """
    upper_a, upper_b, lower_a, lower_b = spinor.channels(x)
    ua = Quaternion.from_left_j(upper_a, 0j)
    ub = Quaternion.from_left_j(0j, upper_b)
    la = Quaternion.from_left_j(lower_a, 0j)
    lb = Quaternion.from_left_j(0j, lower_b)

    a1, a2, a3, a4 = qconj(ua), qconj(ub), qconj(la), qconj(lb)
    b1, b2, b3, b4 = la, lb, ua, ub
    return {
        "A1B1": a1 * b1,
        "A1B2": a1 * b2,
        "A2B1": a2 * b1,
        "A2B2": a2 * b2,
        "A3B3": a3 * b3,
        "A3B4": a3 * b4,
        "A4B3": a4 * b3,
        "A4B4": a4 * b4,
    }


def density_at(spinor: RegionSpinor, x: float) -> float:
    """Probability density ``Ψ†Ψ = |U|² + |L|²``."""
    return spinor.upper(x).norm2() + spinor.lower(x).norm2()


def conservation_check(sol: ScatteringSolution) -> CurrentReport:
    """Compare the outer-region currents with ``|r|² + |t|² = 1``.

    The currents are sampled one unit outside each delta and cross-checked
    against their closed forms ``2p/(E+m) · (1 − R)`` and ``2p/(E+m) · T``
    (signs mirrored for incidence from the right).
    """
    params = sol.params
    p = dispersion(params.energy, params.m)
    flux = 2.0 * p / (params.energy + params.m)
    reflection = sol.reflection
    transmission = sol.transmission

    j_left = current_at(build_spinor(sol, Region.I), -params.a0 - 1.0)
    j_right = current_at(build_spinor(sol, Region.III), params.a0 + 1.0)

    if sol.incidence is Incidence.LEFT:
        expected = (flux * (1.0 - reflection), flux * transmission)
    else:
        expected = (-flux * transmission, -flux * (1.0 - reflection))
    mismatch = max(abs(j_left - expected[0]), abs(j_right - expected[1]))

    defect = abs(reflection + transmission - 1.0)
    logger.debug("Conservation: R=%.15g T=%.15g defect=%.3e", reflection, transmission, defect)
    return CurrentReport(
        j_left=j_left,
        j_right=j_right,
        reflection=reflection,
        transmission=transmission,
        defect=defect,
        formula_mismatch=mismatch,
    )
