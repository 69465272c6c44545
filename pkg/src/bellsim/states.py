"""Two-photon polarization states and the waveplate preparation pipeline.

States are unit-norm complex 4-vectors over the basis (HH, HV, VH, VV).
The source emits the pair (|H1 V2> + e^{i alpha0} |V1 H2>)/sqrt(2); the
intrinsic phase alpha0 is a calibrated parameter, not a hard-coded constant.
Preparation sends photon 2 through a half-wave plate and then a quarter-wave
plate (HWP first, closer to the source).
"""

import math
from dataclasses import dataclass

import numpy as np

from . import jones

BELL_KINDS = ("psi_plus", "psi_minus", "phi_plus", "phi_minus")

_SQRT2 = math.sqrt(2.0)

_BELL_AMPS = {
    "psi_plus": (0.0, 1.0, 1.0, 0.0),
    "psi_minus": (0.0, 1.0, -1.0, 0.0),
    "phi_plus": (1.0, 0.0, 0.0, 1.0),
    "phi_minus": (1.0, 0.0, 0.0, -1.0),
}


class CalibrationError(RuntimeError):
    """No crystal phase reproduces the expected reference landscape."""


def bell_state(kind):
    """Amplitudes of one of the four Bell states psi+-, phi+-."""
    if kind not in _BELL_AMPS:
        raise ValueError(f"kind must be one of {BELL_KINDS}, got {kind!r}")
    return np.array(_BELL_AMPS[kind], dtype=complex) / _SQRT2


def phase_shifted_state(alpha):
    """(|H1 V2> + e^{i alpha} |V1 H2>)/sqrt(2) for any relative phase alpha."""
    if not np.isfinite(alpha):
        raise ValueError(f"alpha must be finite, got {alpha!r}")
    return np.array([0.0, 1.0, np.exp(1j * alpha), 0.0]) / _SQRT2


@dataclass(frozen=True)
class PreparationConfig:
    """Waveplate angles plus the calibrated crystal phase, all in radians."""

    theta_qwp: float
    beta: float = 0.0
    alpha0: float = 0.0

    def __post_init__(self):
        for name in ("theta_qwp", "beta", "alpha0"):
            if not np.isfinite(getattr(self, name)):
                raise ValueError(f"{name} must be finite")


def prepare(config):
    """Run the raw crystal pair through the waveplates on arm 2.

    Applies M = qwp(theta_qwp) @ hwp(beta) to photon 2 of
    (|H1 V2> + e^{i alpha0} |V1 H2>)/sqrt(2) and renormalizes (a no-op up to
    rounding, the plates are unitary).
    """
    crystal = np.array([0.0, 1.0, np.exp(1j * config.alpha0), 0.0]) / _SQRT2
    m = jones.compose(jones.qwp(config.theta_qwp), jones.hwp(config.beta))
    amp = jones.lift_to_arm(m, 2) @ crystal
    return amp / np.linalg.norm(amp)


def wrap_angle(x):
    """Wrap an angle to (-pi, pi]."""
    w = x % (2 * math.pi)
    if w > math.pi:
        w -= 2 * math.pi
    return w


def relative_phase(state):
    """Phase of the VH amplitude relative to the HV amplitude, in (-pi, pi].

    Only meaningful for psi-type states; raises for states whose cross
    amplitudes vanish (phi-type).
    """
    amp = np.asarray(state, dtype=complex)
    hv, vh = amp[1], amp[2]
    if abs(hv) <= 1e-12 or abs(vh) <= 1e-12:
        raise ValueError(
            "degenerate state: HV and VH amplitudes must both be nonzero "
            f"(|HV|={abs(hv):.3g}, |VH|={abs(vh):.3g})"
        )
    return wrap_angle(float(np.angle(vh) - np.angle(hv)))


def calibrate_crystal_phase(tol=1e-6):
    """Crystal phase alpha0 for which the theta_qwp=0, beta=0 preparation has
    a coincidence landscape proportional to sin^2(theta1 + theta2).

    Deterministic: scans the candidate phases {0, +-pi/2, pi} on the default
    21x21 grid, then refines the best one by bounded scalar minimization when
    no candidate is already exact. Raises CalibrationError if the residual
    never drops below ``tol``.
    """
    from scipy.optimize import minimize_scalar

    from .coincidence import AngleGrid, compare_landscapes, landscape

    grid = AngleGrid(0.0, math.pi, math.pi / 20)
    target = landscape(lambda t1, t2: math.sin(t1 + t2) ** 2, grid)

    def residual(alpha0):
        prepared = landscape(prepare(PreparationConfig(0.0, 0.0, alpha0)), grid)
        return compare_landscapes(target, prepared)[1]

    candidates = (0.0, math.pi / 2, -math.pi / 2, math.pi)
    best = min(candidates, key=residual)
    best_res = residual(best)
    if best_res >= 1e-12:
        res = minimize_scalar(
            residual,
            bounds=(best - 0.4, best + 0.4),
            method="bounded",
            options={"xatol": 1e-12},
        )
        if residual(res.x) < best_res:
            best, best_res = wrap_angle(float(res.x)), float(res.fun)
    if best_res > tol:
        raise CalibrationError(
            f"no crystal phase reaches residual < {tol:g} (best {best_res:.3g} "
            f"at alpha0={best:.6f}); operator conventions are inconsistent"
        )
    return best
