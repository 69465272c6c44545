"""Simulation of polarization-entangled photon pair experiments.

Jones-calculus state preparation with a quarter- and half-wave plate on one
arm, coincidence-probability landscapes over polarizer-angle grids, CHSH
analysis with deterministic angle optimization, and a seeded Monte Carlo
photon-counting pipeline with a realistic detector model.
"""

__version__ = "0.1.0"

from .chsh import (  # noqa: F401
    TSIRELSON,
    ChshAngles,
    ChshResult,
    correlation_E,
    optimize_angles,
    s_value,
    sweep_qwp_vs_s,
)
from .coincidence import (  # noqa: F401
    AngleGrid,
    Landscape,
    closed_form,
    compare_landscapes,
    default_grid,
    ideal_form,
    landscape,
    normalize,
    probability,
)
from .jones import compose, hwp, lift_to_arm, polarizer, qwp  # noqa: F401
from .montecarlo import (  # noqa: F401
    DetectorModel,
    EventStream,
    RunStats,
    SourceModel,
    apply_dead_time,
    correlate,
    dynamic_sweep,
    estimate_S,
    run_experiment,
    simulate_setting,
)
from .states import (  # noqa: F401
    BELL_KINDS,
    CalibrationError,
    PreparationConfig,
    bell_state,
    calibrate_crystal_phase,
    phase_shifted_state,
    relative_phase,
)
