"""2x2 Jones operators for polarizers and wave plates, plus two-photon lifting.

Basis convention used throughout the package: H = (1, 0), V = (0, 1).
Two-photon amplitude vectors are ordered (HH, HV, VH, VV), photon 1 major.
All angles are radians.
"""

import numpy as np

_I2 = np.eye(2, dtype=complex)


def _require_finite(name, value):
    if not np.isfinite(value):
        raise ValueError(f"{name} must be a finite angle in radians, got {value!r}")


def polarizer(theta):
    """Projector onto linear polarization at angle ``theta``.

    [[cos^2 t, sin t cos t],
     [sin t cos t, sin^2 t]]

    Hermitian, idempotent, trace 1.
    """
    _require_finite("theta", theta)
    c, s = np.cos(theta), np.sin(theta)
    return np.array([[c * c, s * c], [s * c, s * s]], dtype=complex)


def qwp(theta_qwp):
    """Quarter-wave plate with fast axis at ``theta_qwp``.

    exp(-i pi/4) * [[cos^2 t + i sin^2 t, (1-i) sin t cos t],
                    [(1-i) sin t cos t, sin^2 t + i cos^2 t]]

    Unitary; pi-periodic in the axis angle. The global phase is kept so the
    closed form is testable element by element.
    """
    _require_finite("theta_qwp", theta_qwp)
    c, s = np.cos(theta_qwp), np.sin(theta_qwp)
    m = np.array(
        [[c * c + 1j * s * s, (1.0 - 1j) * s * c],
         [(1.0 - 1j) * s * c, s * s + 1j * c * c]]
    )
    return np.exp(-1j * np.pi / 4) * m


def hwp(beta):
    """Half-wave plate with fast axis at ``beta``.

    exp(-i pi/2) * [[cos 2b, sin 2b],
                    [sin 2b, -cos 2b]]

    Unitary; an involution up to the global phase (hwp @ hwp = -identity).
    """
    _require_finite("beta", beta)
    c2, s2 = np.cos(2 * beta), np.sin(2 * beta)
    return np.exp(-1j * np.pi / 2) * np.array([[c2, s2], [s2, -c2]], dtype=complex)


def compose(a, b):
    """Operator product a @ b (b is applied to the light first)."""
    return np.asarray(a, dtype=complex) @ np.asarray(b, dtype=complex)


def lift_to_arm(op, arm):
    """Embed a one-photon operator into the two-photon space.

    arm 1 -> op (x) identity, arm 2 -> identity (x) op, in the
    (HH, HV, VH, VV) basis order.
    """
    op = np.asarray(op, dtype=complex)
    if arm == 1:
        return np.kron(op, _I2)
    if arm == 2:
        return np.kron(_I2, op)
    raise ValueError(f"arm must be 1 or 2, got {arm!r}")
