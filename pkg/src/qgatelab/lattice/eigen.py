"""Extremal eigenpairs of sparse Hermitian operators by restarted Lanczos."""

from __future__ import annotations

from typing import Callable, NamedTuple

import numpy as np
from scipy.linalg import eigh_tridiagonal


class GroundState(NamedTuple):
    energy: float
    vector: np.ndarray
    residual: float
    iterations: int
    converged: bool


class ConvergenceError(ArithmeticError):
    pass


def lanczos_ground_state(matvec: Callable[[np.ndarray], np.ndarray], dim: int, tol: float = 1e-9,
                         max_iter: int = 5000, krylov: int = 80, seed: int = 7,
                         v0: np.ndarray | None = None) -> GroundState:
    """Lowest eigenpair via Lanczos with full reorthogonalization, restarted from the current Ritz vector.

    Converged when ``||H x - E x|| < tol``.  ``max_iter`` bounds the total
    number of matrix-vector products.
    """
    if dim == 1:
        e = float(np.real(matvec(np.ones(1))[0]))
        return GroundState(e, np.ones(1), 0.0, 1, True)
    rng = np.random.default_rng(seed)
    v = rng.standard_normal(dim) if v0 is None else np.asarray(v0, dtype=float).copy()
    v /= np.linalg.norm(v)
    m = min(krylov, dim)
    used = 0
    best = None
    while used < max_iter:
        V = np.zeros((m + 1, dim))
        V[0] = v
        alpha, beta = [], []
        for j in range(m):
            w = np.real(matvec(V[j]))
            used += 1
            a = float(V[j] @ w)
            w -= a * V[j]
            if j:
                w -= beta[-1] * V[j - 1]
            for _ in range(2):
                w -= V[:j + 1].T @ (V[:j + 1] @ w)
            alpha.append(a)
            b = float(np.linalg.norm(w))
            if b < 1e-13 or used >= max_iter:
                break
            beta.append(b)
            V[j + 1] = w / b
        k = len(alpha)
        theta, y = eigh_tridiagonal(np.array(alpha), np.array(beta[:k - 1]), select="i", select_range=(0, 0))
        x = V[:k].T @ y[:, 0]
        x /= np.linalg.norm(x)
        r = float(np.linalg.norm(np.real(matvec(x)) - theta[0] * x))
        used += 1
        best = GroundState(float(theta[0]), x, r, used, r < tol)
        if r < tol:
            return best
        v = x
    raise ConvergenceError(f"Lanczos did not converge in {max_iter} products (residual {best.residual:.2e})")


def dense_ground_state(H: np.ndarray) -> tuple[float, np.ndarray]:
    w, U = np.linalg.eigh(H)
    return float(w[0]), U[:, 0]
