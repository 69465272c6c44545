"""Coincidence probabilities, angle-grid landscapes, and contrast normalization.

The operator engine (projectors applied to the prepared state) is canonical.
The shifted-sine closed forms in ``closed_form`` are a secondary model family
kept for cross-validation; their printed coefficient exists in two variants
("i" and "two_i"), selectable per call.
"""

import math
from dataclasses import dataclass, field

import numpy as np

from . import jones
from .states import BELL_KINDS

NORMALIZE_MODES = ("per-theta1-scan", "per-theta2-scan", "global-max")
CLOSED_FORM_CONVENTIONS = ("i", "two_i")


@dataclass(frozen=True)
class AngleGrid:
    """Inclusive arithmetic grid start, start+step, ..., stop (radians)."""

    start: float
    stop: float
    step: float

    def __post_init__(self):
        if not (np.isfinite(self.start) and np.isfinite(self.stop) and np.isfinite(self.step)):
            raise ValueError("grid bounds and step must be finite")
        if self.step <= 0:
            raise ValueError(f"step must be > 0, got {self.step!r}")
        if self.stop < self.start:
            raise ValueError("stop must be >= start")

    def points(self):
        n = int(math.floor((self.stop - self.start) / self.step + 1e-9)) + 1
        return self.start + self.step * np.arange(n)


def default_grid():
    """The standard scan: 0..pi inclusive in steps of pi/20 (21 points)."""
    return AngleGrid(0.0, math.pi, math.pi / 20)


@dataclass
class Landscape:
    """Coincidence values over a theta1 x theta2 grid (rows are theta1)."""

    theta1_axis: np.ndarray
    theta2_axis: np.ndarray
    values: np.ndarray
    normalized: bool = False


def probability(state, theta1, theta2):
    """Joint pass-pass probability behind polarizers at theta1 (arm 1) and
    theta2 (arm 2), via the two-photon projector.

    Requires a normalized state; for maximally entangled inputs the value
    lies in [0, 1/2].
    """
    amp = np.asarray(state, dtype=complex)
    norm = float(np.real(np.vdot(amp, amp)))
    if abs(norm - 1.0) > 1e-9:
        raise ValueError(f"state is not normalized (norm^2 = {norm!r})")
    proj = jones.lift_to_arm(jones.polarizer(theta1), 1) @ jones.lift_to_arm(
        jones.polarizer(theta2), 2
    )
    v = proj @ amp
    return float(np.real(np.vdot(v, v)))


def ideal_form(kind, theta1, theta2):
    """Textbook coincidence forms for the four Bell states.

    sin^2(t1+t2), sin^2(t1-t2), cos^2(t1-t2), cos^2(t1+t2) for
    psi+, psi-, phi+, phi- respectively.
    """
    if kind == "psi_plus":
        return math.sin(theta1 + theta2) ** 2
    if kind == "psi_minus":
        return math.sin(theta1 - theta2) ** 2
    if kind == "phi_plus":
        return math.cos(theta1 - theta2) ** 2
    if kind == "phi_minus":
        return math.cos(theta1 + theta2) ** 2
    raise ValueError(f"kind must be one of {BELL_KINDS}, got {kind!r}")


def closed_form(kind, theta1, theta2, gamma, convention="i"):
    """Shifted-sine closed-form coincidence model, evaluated verbatim.

    ``gamma`` is the retarder phase parameter (half the quarter-wave-plate
    angle). ``convention`` selects the printed coefficient on the first term:
    "i" gives weight 1, "two_i" gives weight 4 after squaring. Example for
    psi_plus: |coef*sin(2g - t1 + t2) + sin(2g + t1 + t2)|^2.
    """
    if convention == "i":
        coef = 1j
    elif convention == "two_i":
        coef = 2j
    else:
        raise ValueError(f"convention must be one of {CLOSED_FORM_CONVENTIONS}, got {convention!r}")
    g2 = 2.0 * gamma
    if kind == "psi_plus":
        z = coef * math.sin(g2 - theta1 + theta2) + math.sin(g2 + theta1 + theta2)
    elif kind == "psi_minus":
        z = coef * math.sin(-g2 + theta1 + theta2) - math.sin(g2 + theta1 - theta2)
    elif kind == "phi_plus":
        z = coef * math.cos(-g2 + theta1 + theta2) + math.cos(g2 + theta1 - theta2)
    elif kind == "phi_minus":
        z = coef * math.cos(g2 - theta1 + theta2) + math.cos(g2 + theta1 + theta2)
    else:
        raise ValueError(f"kind must be one of {BELL_KINDS}, got {kind!r}")
    return abs(z) ** 2


def landscape(source, grid1, grid2=None):
    """Raw (unnormalized) landscape of a state or of a callable f(t1, t2).

    Rows are indexed by theta1, columns by theta2.
    """
    if grid2 is None:
        grid2 = grid1
    t1 = grid1.points()
    t2 = grid2.points()
    if t1.size == 0 or t2.size == 0:
        raise ValueError("grid is empty")
    if callable(source):
        fn = source
    else:
        state = np.asarray(source, dtype=complex)
        fn = lambda a, b: probability(state, a, b)  # noqa: E731
    values = np.empty((t1.size, t2.size))
    for i, a in enumerate(t1):
        for j, b in enumerate(t2):
            values[i, j] = fn(a, b)
    return Landscape(t1, t2, values, normalized=False)


def _stretch(vec):
    lo, hi = vec.min(), vec.max()
    if hi - lo <= 0.0:
        return np.zeros_like(vec)  # constant scans map to 0, never abort
    return (vec - lo) / (hi - lo)


def normalize(land, mode="per-theta2-scan"):
    """Contrast-normalize a landscape.

    "per-theta2-scan" rescales each fixed-theta2 column (a scan over theta1)
    linearly onto [0, 1]; "per-theta1-scan" does the same for rows;
    "global-max" divides by the grid maximum. Idempotent in every mode.
    """
    if land.values.size == 0:
        raise ValueError("empty landscape")
    v = land.values
    if mode == "per-theta2-scan":
        out = np.column_stack([_stretch(v[:, j]) for j in range(v.shape[1])])
    elif mode == "per-theta1-scan":
        out = np.vstack([_stretch(v[i, :]) for i in range(v.shape[0])])
    elif mode == "global-max":
        m = v.max()
        out = v / m if m > 0 else np.zeros_like(v)
    else:
        raise ValueError(f"mode must be one of {NORMALIZE_MODES}, got {mode!r}")
    return Landscape(land.theta1_axis.copy(), land.theta2_axis.copy(), out, normalized=True)


def compare_landscapes(a, b):
    """Best global scale s minimizing max|a - s*b|, with the achieved deviation.

    Returns (scale, deviation). Grids must match exactly.
    """
    from scipy.optimize import minimize_scalar

    if a.theta1_axis.shape != b.theta1_axis.shape or a.theta2_axis.shape != b.theta2_axis.shape:
        raise ValueError("grid mismatch: landscapes have different shapes")
    if not (np.array_equal(a.theta1_axis, b.theta1_axis) and np.array_equal(a.theta2_axis, b.theta2_axis)):
        raise ValueError("grid mismatch: landscapes use different axes")
    av = a.values.ravel()
    bv = b.values.ravel()

    def dev(s):
        return float(np.max(np.abs(av - s * bv)))

    bb = float(bv @ bv)
    s0 = float(av @ bv) / bb if bb > 0 else 0.0
    half = 10.0 * abs(s0) + 1.0
    res = minimize_scalar(dev, bounds=(s0 - half, s0 + half), method="bounded",
                          options={"xatol": 1e-14})
    best = min((float(res.x), s0), key=dev)
    return best, dev(best)
