"""Qubit-level algebra: Euler angles, Hadamard, and CNOT assembled from a controlled phase."""

from __future__ import annotations

from typing import NamedTuple

import numpy as np

SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)
BASIS_LABELS = ("00", "01", "10", "11")


class EulerAngles(NamedTuple):
    a1: float
    a2: float
    a3: float
    phase: float

    def matrix(self) -> np.ndarray:
        return np.exp(1j * self.phase) * rot_z(self.a1) @ rot_y(self.a2) @ rot_z(self.a3)


def rot_z(a: float) -> np.ndarray:
    """exp(i a sigma_z)."""
    return np.diag([np.exp(1j * a), np.exp(-1j * a)])


def rot_y(a: float) -> np.ndarray:
    """exp(i a sigma_y)."""
    c, s = np.cos(a), np.sin(a)
    return np.array([[c, s], [-s, c]], dtype=complex)


def euler_decompose(U, tol: float = 1e-12) -> EulerAngles:
    """``U = e^{i phase} exp(i a1 sz) exp(i a2 sy) exp(i a3 sz)`` with a2 in [0, pi/2]."""
    U = np.asarray(U, dtype=complex)
    if U.shape != (2, 2) or not np.allclose(U @ U.conj().T, np.eye(2), atol=1e-10):
        raise ValueError("euler_decompose needs a 2x2 unitary")
    phase = float(np.angle(np.linalg.det(U)) / 2)
    V = U * np.exp(-1j * phase)
    a2 = float(np.arctan2(abs(V[0, 1]), abs(V[0, 0])))
    plus = float(np.angle(V[0, 0])) if abs(V[0, 0]) > tol else 0.0
    minus = float(np.angle(V[0, 1])) if abs(V[0, 1]) > tol else 0.0
    angles = EulerAngles((plus + minus) / 2, a2, (plus - minus) / 2, phase)
    # det fixes the phase only up to pi; absorb a leftover sign into it
    if np.abs(angles.matrix() - U).max() > 1e-9:
        angles = angles._replace(phase=phase + np.pi)
    return angles


def hadamard() -> np.ndarray:
    return (SIGMA_X + SIGMA_Z) / np.sqrt(2)


def controlled_z(phi: float = np.pi) -> np.ndarray:
    return np.diag([1, 1, 1, np.exp(1j * phi)]).astype(complex)


def on_qubit(op, qubit: int) -> np.ndarray:
    """Two-qubit operator with ``op`` on ``qubit`` (0 = first/control, 1 = second/target)."""
    return np.kron(op, np.eye(2)) if qubit == 0 else np.kron(np.eye(2), op)


def cnot_from_cz() -> np.ndarray:
    """Hadamard on the target, controlled-pi phase, Hadamard on the target."""
    H = on_qubit(hadamard(), 1)
    return H @ controlled_z(np.pi) @ H


def truth_table(U, tol: float = 1e-12) -> dict:
    """Map each computational basis label to its image as {label: amplitude} (nonzero entries only)."""
    U = np.asarray(U)
    out = {}
    for i, a in enumerate(BASIS_LABELS):
        out[a] = {b: complex(U[j, i]) for j, b in enumerate(BASIS_LABELS) if abs(U[j, i]) > tol}
    return out
