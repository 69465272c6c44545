"""CHSH correlation E, S-parameter assembly, and measurement-angle search.

The correlation is the scale-free ratio
E = (C1 + C2 - C3 - C4) / (C1 + C2 + C3 + C4) over the four coincidence
values at (a, b), (a+90, b+90), (a, b+90), (a+90, b), and
S = E(t1, t2) - E(t1', t2) + E(t1, t2') + E(t1', t2') with the minus on the
(t1', t2) term. One code path computes every E.
"""

import math
from dataclasses import dataclass

import numpy as np

from .coincidence import probability

HALF_PI = math.pi / 2
TSIRELSON = 2.0 * math.sqrt(2.0)


@dataclass(frozen=True)
class ChshAngles:
    """The measurement quadruple (theta1, theta1', theta2, theta2'), radians.

    Orthogonal complements are always derived as theta + pi/2, never stored.
    """

    theta1: float
    theta1_prime: float
    theta2: float
    theta2_prime: float

    def __post_init__(self):
        for name in ("theta1", "theta1_prime", "theta2", "theta2_prime"):
            if not np.isfinite(getattr(self, name)):
                raise ValueError(f"{name} must be finite")

    def as_tuple(self):
        return (self.theta1, self.theta1_prime, self.theta2, self.theta2_prime)


@dataclass
class ChshResult:
    e_values: tuple
    s: float
    violates: bool
    angles: ChshAngles


def correlation_E(counts):
    """E from the four coincidence values (counts or probabilities)."""
    c1, c2, c3, c4 = (float(c) for c in counts)
    for c in (c1, c2, c3, c4):
        if c < 0:
            raise ValueError(f"coincidence values must be non-negative, got {c!r}")
    denom = c1 + c2 + c3 + c4
    if denom <= 0:
        raise ZeroDivisionError("no counts at this setting (zero denominator)")
    return (c1 + c2 - c3 - c4) / denom


def _count_function(source):
    if callable(source):
        return source
    state = np.asarray(source, dtype=complex)
    return lambda a, b: probability(state, a, b)


def _e_at(count_fn, x, y):
    counts = (
        count_fn(x, y),
        count_fn(x + HALF_PI, y + HALF_PI),
        count_fn(x, y + HALF_PI),
        count_fn(x + HALF_PI, y),
    )
    return correlation_E(counts)


def s_value(source, angles):
    """Assemble the four correlations and S for a state or count function."""
    count_fn = _count_function(source)
    t1, t1p, t2, t2p = angles.as_tuple()
    pairs = ((t1, t2), (t1p, t2), (t1, t2p), (t1p, t2p))
    es = []
    for x, y in pairs:
        try:
            es.append(_e_at(count_fn, x, y))
        except ZeroDivisionError as exc:
            raise ZeroDivisionError(
                f"zero total counts at setting pair (theta_a={x:.6f}, theta_b={y:.6f})"
            ) from exc
    s = es[0] - es[1] + es[2] + es[3]
    return ChshResult(tuple(es), s, abs(s) > 2.0, angles)


def _amplitude_grids(amp2, angles):
    """|amplitude|^2 grids at (par/perp x par/perp) analyzer orientations."""
    c, s = np.cos(angles), np.sin(angles)
    u_par = np.vstack((c, s))
    u_perp = np.vstack((-s, c))
    grids = {}
    for xa, ua in (("p", u_par), ("q", u_perp)):
        for yb, ub in (("p", u_par), ("q", u_perp)):
            a = ua.T @ (amp2 @ ub)
            grids[xa + yb] = np.abs(a) ** 2
    return grids


def _e_grid(state, angles):
    """Correlation E(a, b) for every pair of grid angles, vectorized."""
    amp2 = np.asarray(state, dtype=complex).reshape(2, 2)
    g = _amplitude_grids(amp2, angles)
    num = g["pp"] + g["qq"] - g["pq"] - g["qp"]
    den = g["pp"] + g["qq"] + g["pq"] + g["qp"]
    return num / den


def _fast_e(m, x, y):
    """Scalar E for the 2x2 amplitude matrix m, used by the refiner."""
    cx, sx = math.cos(x), math.sin(x)
    cy, sy = math.cos(y), math.sin(y)
    ps = []
    for ux in ((cx, sx), (-sx, cx)):
        row0 = ux[0] * m[0, 0] + ux[1] * m[1, 0]
        row1 = ux[0] * m[0, 1] + ux[1] * m[1, 1]
        for uy in ((cy, sy), (-sy, cy)):
            a = row0 * uy[0] + row1 * uy[1]
            ps.append((a.real * a.real + a.imag * a.imag))
    num = ps[0] + ps[3] - ps[1] - ps[2]
    den = ps[0] + ps[3] + ps[1] + ps[2]
    return num / den


def _fast_s(m, quad):
    a, ap, b, bp = quad
    return _fast_e(m, a, b) - _fast_e(m, ap, b) + _fast_e(m, a, bp) + _fast_e(m, ap, bp)


def optimize_angles(state, seed_grid_step=math.pi / 36):
    """Deterministic search for the angle quadruple maximizing |S|.

    Coarse grid over [0, pi)^4 at ``seed_grid_step``, then coordinate descent
    with step halving down to 1e-8 rad. Among coarse-grid ties (relative
    1e-9), quadruples whose S sign matches the sign of the equal-angle H/V
    correlation E(0, 0) are preferred (that is the sign the experiment
    reports), then the lexicographically smallest quadruple wins.
    """
    if seed_grid_step <= 0:
        raise ValueError("seed_grid_step must be > 0")
    amp = np.asarray(state, dtype=complex)
    norm = float(np.real(np.vdot(amp, amp)))
    if abs(norm - 1.0) > 1e-9:
        raise ValueError(f"state is not normalized (norm^2 = {norm!r})")
    m = amp.reshape(2, 2)

    n = max(int(math.ceil(math.pi / seed_grid_step)), 2)
    grid = np.arange(n) * (math.pi / n)
    e = _e_grid(amp, grid)
    s_tensor = (
        e[:, None, :, None] - e[None, :, :, None] + e[:, None, None, :] + e[None, :, None, :]
    )
    abs_s = np.abs(s_tensor)
    peak = float(abs_s.max())
    ties = abs_s >= peak - 1e-9 * max(peak, 1.0)

    e00 = _fast_e(m, 0.0, 0.0)
    target = 0.0 if abs(e00) <= 1e-9 else math.copysign(1.0, e00)
    if target != 0.0:
        signed = ties & (np.sign(s_tensor) == target)
        if signed.any():
            ties = signed
    flat = int(np.argmax(ties.ravel()))  # first True = lexicographically smallest
    quad = [grid[k] for k in np.unravel_index(flat, s_tensor.shape)]

    best = abs(_fast_s(m, quad))
    step = seed_grid_step
    while step > 1e-8:
        improved = False
        for k in range(4):
            for delta in (step, -step):
                while True:
                    cand = list(quad)
                    cand[k] += delta
                    v = abs(_fast_s(m, cand))
                    if v > best:
                        quad, best = cand, v
                        improved = True
                    else:
                        break
        if not improved:
            step *= 0.5

    return s_value(amp, ChshAngles(*quad))


def sweep_qwp_vs_s(beta, qwp_angles, alpha0=None, seed_grid_step=math.pi / 36):
    """Profile of maximal |S| versus the quarter-wave-plate angle.

    Prepares the state for each angle with the calibrated crystal phase
    (computed once when ``alpha0`` is None) and runs the full optimizer.
    """
    from .states import PreparationConfig, calibrate_crystal_phase, prepare

    if alpha0 is None:
        alpha0 = calibrate_crystal_phase()
    profile = []
    for theta in qwp_angles:
        state = prepare(PreparationConfig(theta, beta, alpha0))
        result = optimize_angles(state, seed_grid_step=seed_grid_step)
        profile.append((float(theta), abs(result.s)))
    return profile
