"""Constants used across the scattering modules.

This module centralizes tolerances, guards and canonical parameter sets so
the solver, the observables, the oracle and the CLI agree on them.
"""

# ============================================================================
# Matching system layout
# ============================================================================

# Fixed order of the unknowns; downstream code indexes by label only.
UNKNOWN_ORDER = ("r", "rt", "c1", "c2", "c3", "c4", "t", "tt")

# Row labels in assembly order (channel, condition, interface).
ROW_LABELS = (
    "a-continuity@-a0",
    "b-continuity@-a0",
    "a-continuity@+a0",
    "b-continuity@+a0",
    "a-jump@-a0",
    "b-jump@-a0",
    "a-jump@+a0",
    "b-jump@+a0",
)

# ============================================================================
# Numerical guards
# ============================================================================

MAX_EVANESCENT_EXPONENT = 300.0  # e^300 ~ 1e130, well inside double range
SINGULAR_PIVOT_RATIO = 1e-13  # relative to the largest scaled entry
RESIDUAL_TOLERANCE = 1e-10  # residual <= tol * (1 + max|rhs|)
VERIFY_TOLERANCE = 1e-9  # scaled violation accepted by verify_matching
THRESHOLD_MARGIN = 1e-6  # E <= m * (1 + margin) is treated as threshold

# ============================================================================
# Regularized-delta oracle
# ============================================================================

ORACLE_STEPS_PER_WIDTH = 20  # h = epsilon / 20
ORACLE_TAIL_WIDTHS = 10.0  # potential-free beyond a0 + 10 * epsilon
ORACLE_MAX_WIDTH_RATIO = 1.0 / 20.0  # epsilon <= a0 / 20
ORACLE_TRUNCATION_LIMIT = 1e-8
ORACLE_WINDOW_SAMPLES = 512

# ============================================================================
# Sweeps
# ============================================================================

MIN_FLUCTUATION_SAMPLES = 50
PLATEAU_TOLERANCE = 1e-12
CSV_HEADER = ("axis_value", "R", "T", "sum", "defect")
SWEEP_AXES = ("E", "Va", "Vb", "a0")

# Energy sweeps start just above the threshold E = m.
FIGURE_ENERGY_START = 1.001
FIGURE_ENERGY_STOP = 4.0
FIGURE_FIXED_ENERGY = 2.0
FIGURE_STEPS = 200
FIGURE_FAMILY_STEPS = 400
FIGURE_VA_FAMILY = (0.5, 1.0, 2.0)
FIGURE_VB_FAMILY = (0.5, 1.0, 2.0)
FIGURE_A0_FAMILY = (1.0, 2.0, 4.0)
