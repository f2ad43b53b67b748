"""Ground states, site statistics and the superfluid/Mott crossover scan."""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple, Sequence

import numpy as np

from ..fock_core import FIXED_TOTAL, StateVector
from .couplings import CRITICAL_RATIO
from .eigen import lanczos_ground_state
from .hubbard import BHParams, SparseHamiltonian, build_bh_hamiltonian, hop_pairs


def ground_state(H: SparseHamiltonian, tol: float = 1e-9, max_iter: int = 20000, v0=None) -> tuple[float, StateVector]:
    res = lanczos_ground_state(H.matvec, H.dimension, tol=tol, max_iter=max_iter, v0=v0)
    vec = res.vector
    # fix the sign so results do not depend on the start vector
    k = int(np.argmax(np.abs(vec)))
    vec = vec * np.sign(vec[k])
    return res.energy, StateVector(H.basis, vec)


class SiteStatistics(NamedTuple):
    mean: np.ndarray
    variance: np.ndarray


def site_statistics(psi: StateVector) -> SiteStatistics:
    if psi.basis.truncation.kind != FIXED_TOTAL:
        raise ValueError("site statistics need a fixed-particle-number basis")
    prob = np.abs(psi.amplitudes) ** 2
    prob = prob / prob.sum()
    occ = psi.basis.occupations
    mean = prob @ occ
    var = np.maximum(prob @ occ ** 2 - mean ** 2, 0.0)
    return SiteStatistics(mean, var)


def one_body_density(psi: StateVector) -> np.ndarray:
    """``rho[i, j] = <a_i^dag a_j>``."""
    basis = psi.basis
    c = psi.amplitudes
    W = basis.mode_count
    rho = np.zeros((W, W), dtype=complex)
    rho[np.diag_indices(W)] = (np.abs(c) ** 2) @ basis.occupations
    for i in range(W):
        for j in range(W):
            if i != j:
                dst, src, v = hop_pairs(basis, i, j)
                rho[i, j] = np.sum(np.conj(c[dst]) * v * c[src])
    return rho


def condensate_fraction(psi: StateVector) -> float:
    """Largest eigenvalue of the one-body density matrix divided by the particle number."""
    return float(np.linalg.eigvalsh(one_body_density(psi))[-1] / psi.basis.cutoff)


def open_chain_orbital(sites: int) -> np.ndarray:
    """Lowest single-particle orbital of the open tight-binding chain."""
    k = np.arange(1, sites + 1)
    phi = np.sin(np.pi * k / (sites + 1))
    return phi / np.linalg.norm(phi)


@dataclass
class ScanResult:
    rows: list
    threshold: float
    crossing: float | None
    reference_ratio: float = CRITICAL_RATIO

    def columns(self) -> tuple:
        return ("U_over_J", "max_site_variance", "mean_site_variance", "condensate_fraction", "energy")


def transition_scan(ratios: Sequence[float], sites: int, atoms: int, boundary: str = "open",
                    threshold: float = 0.1, tol: float = 1e-8) -> ScanResult:
    """Ground-state statistics over U/J (J = 1); ``crossing`` is where the largest site
    variance first falls below ``threshold`` (log-linear interpolation)."""
    rows = []
    v0 = None
    for r in sorted(float(x) for x in ratios):
        H = build_bh_hamiltonian(BHParams(r, 1.0, sites, atoms, boundary))
        E, psi = ground_state(H, tol=tol, v0=v0)
        v0 = psi.amplitudes.real
        st = site_statistics(psi)
        rows.append({"U_over_J": r, "max_site_variance": float(st.variance.max()),
                     "mean_site_variance": float(st.variance.mean()),
                     "condensate_fraction": condensate_fraction(psi), "energy": E})
    crossing = None
    for a, b in zip(rows, rows[1:]):
        va, vb = a["max_site_variance"], b["max_site_variance"]
        if va >= threshold > vb:
            la, lb = np.log(a["U_over_J"]), np.log(b["U_over_J"])
            crossing = float(np.exp(la + (threshold - va) * (lb - la) / (vb - va)))
            break
    return ScanResult(rows, threshold, crossing)
