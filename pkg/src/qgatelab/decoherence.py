"""Imperfect components: absorbing beam splitters, lossy detectors, and mixed single-photon sources."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from itertools import product
from typing import NamedTuple, Sequence

import numpy as np
from scipy.linalg import expm, logm

from .conditional import conditional_operator, is_proportional_to_unitary
from .fock_core import DensityOperator, FockBasis, enumerate_basis, ladder_matrix, max_total, partial_trace
from .interferometer import NetworkDescription, compose_network, lift_to_fock

BALANCE_TOL = 1e-10
ABSORPTION_FLOOR = 1e-12


@dataclass(frozen=True, eq=False)
class LossyBeamSplitter:
    """Transmission ``T`` and absorption ``A`` (2x2 each) with ``T T^dag + A A^dag = I``."""

    T: np.ndarray
    A: np.ndarray

    def __post_init__(self):
        T = np.array(self.T, dtype=complex).reshape(2, 2)
        A = np.array(self.A, dtype=complex).reshape(2, 2)
        balance = T @ T.conj().T + A @ A.conj().T - np.eye(2)
        if np.abs(balance).max() > BALANCE_TOL:
            raise ValueError(f"T T^dag + A A^dag deviates from identity by {np.abs(balance).max():.3e}")
        object.__setattr__(self, "T", T)
        object.__setattr__(self, "A", A)

    @classmethod
    def scalar(cls, t: complex, U=None) -> "LossyBeamSplitter":
        """``T = t U`` and ``A = sqrt(1 - |t|^2) I`` for a lossless 2x2 unitary ``U``."""
        U = np.eye(2) if U is None else np.asarray(U, dtype=complex)
        return cls(t * U, np.sqrt(1 - abs(t) ** 2) * np.eye(2))

    @classmethod
    def random(cls, rng: np.random.Generator, max_loss: float = 1.0) -> "LossyBeamSplitter":
        from .interferometer import random_unitary

        U, V, W = (random_unitary(2, rng) for _ in range(3))
        theta = rng.uniform(0, np.arcsin(np.sqrt(max_loss)), 2)
        return cls(U @ np.diag(np.cos(theta)) @ V, U @ np.diag(np.sin(theta)) @ W)

    @property
    def absorption(self) -> float:
        return float(np.abs(self.A).max())


def _cs_blocks(bs: LossyBeamSplitter):
    # shared eigenbasis of T T^dag and A A^dag (so C and S commute exactly); the singular
    # values come from vector norms, which stays accurate when either block is tiny
    _, Q = np.linalg.eigh(bs.T @ bs.T.conj().T - bs.A @ bs.A.conj().T)
    c = np.linalg.norm(bs.T.conj().T @ Q, axis=0)
    s = np.linalg.norm(bs.A.conj().T @ Q, axis=0)
    C = Q @ np.diag(c) @ Q.conj().T
    S = Q @ np.diag(s) @ Q.conj().T
    return C, S, Q, c, s


def _polar_unitary(M, P, Q, p):
    """Unitary ``V`` with ``M = P V`` where ``P = Q diag(p) Q^dag``; arbitrary on the kernel of ``P``."""
    inv = np.array([1 / x if x > 1e-12 else 0.0 for x in p])
    V = Q @ np.diag(inv) @ Q.conj().T @ M
    if np.all(p > 1e-12):
        return V
    # complete the partial isometry on the null space
    U_svd, s, Vh = np.linalg.svd(M)
    return U_svd @ Vh if np.allclose(P @ (U_svd @ Vh), M, atol=1e-10) else V


def su4_embed(bs: LossyBeamSplitter) -> np.ndarray:
    """Unitary 4x4 over (mode 1, mode 2, absorber 3, absorber 4).

    Blocks: ``[[T, A], [-S C^-1 T, C S^-1 A]]`` with ``C = sqrt(T T^dag)``,
    ``S = sqrt(A A^dag)``.  When ``C`` is singular the polar form
    ``C^-1 T -> V_T`` (``T = C V_T``) is used instead.
    """
    if bs.absorption < ABSORPTION_FLOOR:
        raise ValueError("beam splitter has no absorption; use the lossless path (compose T directly)")
    C, S, Q, c, s = _cs_blocks(bs)
    V_T = _polar_unitary(bs.T, C, Q, c)
    V_A = _polar_unitary(bs.A, S, Q, s)
    out = np.zeros((4, 4), dtype=complex)
    out[:2, :2] = bs.T
    out[:2, 2:] = bs.A
    out[2:, :2] = -S @ V_T
    out[2:, 2:] = C @ V_A
    if np.abs(out @ out.conj().T - np.eye(4)).max() > 1e-9:
        raise ArithmeticError("SU(4) embedding lost unitarity")
    return out


def _two_mode_basis(rho: DensityOperator) -> FockBasis:
    basis = rho.basis
    if basis.mode_count != 2 or basis.truncation.kind != "max_total":
        raise ValueError("lossy channel acts on a two-mode max_total basis")
    return basis


def apply_lossy_channel(rho: DensityOperator, bs: LossyBeamSplitter) -> DensityOperator:
    """Absorbers start in vacuum; evolve with the lifted 4x4 unitary and trace them out."""
    basis = _two_mode_basis(rho)
    if bs.absorption < ABSORPTION_FLOOR:
        U = lift_to_fock(bs.T, basis)
        return DensityOperator(basis, U @ rho.matrix @ U.conj().T, rho.truncation_loss)
    big = enumerate_basis(4, max_total(basis.cutoff))
    embed = np.array([big.index(s + (0, 0)) for s in basis.states])
    rho4 = np.zeros((big.size, big.size), dtype=complex)
    rho4[np.ix_(embed, embed)] = rho.matrix
    U = lift_to_fock(su4_embed(bs), big)
    out = DensityOperator(big, U @ rho4 @ U.conj().T, rho.truncation_loss)
    return partial_trace(out, [0, 1])


def quadratic_generator(M, basis: FockBasis) -> np.ndarray:
    """Fock matrix of ``sum_kl a_k^dag M[k, l] a_l``."""
    ups = [ladder_matrix(basis, k, "creation") for k in range(basis.mode_count)]
    downs = [ladder_matrix(basis, k, "annihilation") for k in range(basis.mode_count)]
    G = np.zeros((basis.size, basis.size), dtype=complex)
    for k in range(basis.mode_count):
        for l in range(basis.mode_count):
            if M[k, l] != 0:
                G += M[k, l] * ups[k] @ downs[l]
    return G


@dataclass(frozen=True, eq=False)
class KrausFamily:
    """Discretized continuous Kraus family ``W = W_T exp(-v . a)``, ``v = alpha^dag S C^-1 T``.

    ``weights`` already include the ``exp(-|alpha|^2)`` Gaussian and the
    ``1/pi^2`` measure, so the channel is ``sum_i weights[i] W_i rho W_i^dag``.
    """

    basis: FockBasis
    transmission: np.ndarray
    absorber: np.ndarray | None
    nodes: np.ndarray
    weights: np.ndarray
    _lowering: tuple = field(default=(), repr=False)

    def __len__(self) -> int:
        return len(self.weights)

    def _v(self, nodes) -> np.ndarray:
        # v_l = sum_k conj(alpha_k) M[k, l]
        return np.conj(nodes) @ self.absorber

    def _monomials(self):
        return [(j, k) for j in range(self.basis.cutoff + 1) for k in range(self.basis.cutoff + 1 - j)]

    def operator(self, i: int) -> np.ndarray:
        if self.absorber is None:
            return self.transmission
        v = self._v(self.nodes[i:i + 1])[0]
        a1, a2 = self._lowering
        X = -(v[0] * a1 + v[1] * a2)
        E = np.eye(self.basis.size, dtype=complex)
        term = E.copy()
        for p in range(1, self.basis.cutoff + 1):
            term = term @ X / p
            E = E + term
        return self.transmission @ E

    def operators(self) -> list:
        return [(float(self.weights[i]), self.operator(i)) for i in range(len(self))]

    def _moment_matrix(self, chunk: int = 1 << 15) -> np.ndarray:
        mono = self._monomials()
        Mom = np.zeros((len(mono), len(mono)), dtype=complex)
        for start in range(0, len(self.weights), chunk):
            v = self._v(self.nodes[start:start + chunk])
            w = self.weights[start:start + chunk]
            mu = np.array([(-v[:, 0]) ** j * (-v[:, 1]) ** k / (math.factorial(j) * math.factorial(k))
                           for j, k in mono])
            Mom += (mu * w) @ mu.conj().T
        return Mom

    def _mono_ops(self):
        a1, a2 = self._lowering
        return [np.linalg.matrix_power(a1, j) @ np.linalg.matrix_power(a2, k) for j, k in self._monomials()]

    def apply(self, rho: DensityOperator) -> DensityOperator:
        if rho.basis != self.basis:
            raise ValueError(f"Kraus family lives on {self.basis!r}, state on {rho.basis!r}")
        W = self.transmission
        if self.absorber is None:
            return DensityOperator(self.basis, W @ rho.matrix @ W.conj().T, rho.truncation_loss)
        Mom = self._moment_matrix()
        ops = self._mono_ops()
        inner = np.zeros_like(rho.matrix)
        for a, Oa in enumerate(ops):
            left = Oa @ rho.matrix
            for b, Ob in enumerate(ops):
                if Mom[a, b] != 0:
                    inner += Mom[a, b] * left @ Ob.conj().T
        return DensityOperator(self.basis, W @ inner @ W.conj().T, rho.truncation_loss)

    def apply_explicit(self, rho: DensityOperator) -> DensityOperator:
        """Literal ``sum_i w_i W_i rho W_i^dag``; only sensible for small grids."""
        out = np.zeros_like(rho.matrix)
        for w, W in self.operators():
            out += w * W @ rho.matrix @ W.conj().T
        return DensityOperator(self.basis, out, rho.truncation_loss)

    def completeness(self) -> np.ndarray:
        """``sum_i w_i W_i^dag W_i``."""
        W = self.transmission
        G = W.conj().T @ W
        if self.absorber is None:
            return G
        Mom = self._moment_matrix()
        ops = self._mono_ops()
        out = np.zeros_like(G)
        for a, Oa in enumerate(ops):
            for b, Ob in enumerate(ops):
                out += np.conj(Mom[a, b]) * Oa.conj().T @ G @ Ob
        return out


def kraus_family(bs: LossyBeamSplitter, cutoff: int = 2, points: int = 32) -> KrausFamily:
    """Gauss-Hermite discretization of the coherent-state Kraus family on ``points`` nodes per real axis."""
    basis = enumerate_basis(2, max_total(cutoff))
    if abs(np.linalg.det(bs.T)) < 1e-12:
        raise ValueError("T is singular, so log T is undefined; use apply_lossy_channel instead")
    phi_T = 1j * logm(bs.T)
    transmission = expm(-1j * quadratic_generator(phi_T, basis))
    if bs.absorption < ABSORPTION_FLOOR:
        return KrausFamily(basis, transmission, None, np.zeros((1, 2), dtype=complex), np.ones(1))
    C, S, *_ = _cs_blocks(bs)
    absorber = S @ np.linalg.solve(C, bs.T)
    x, w = np.polynomial.hermite.hermgauss(points)
    g = np.meshgrid(x, x, x, x, indexing="ij")
    gw = np.meshgrid(w, w, w, w, indexing="ij")
    nodes = np.stack([(g[0] + 1j * g[1]).ravel(), (g[2] + 1j * g[3]).ravel()], axis=1)
    weights = (gw[0] * gw[1] * gw[2] * gw[3]).ravel() / np.pi ** 2
    lowering = (ladder_matrix(basis, 0, "annihilation"), ladder_matrix(basis, 1, "annihilation"))
    return KrausFamily(basis, transmission, absorber, nodes, weights, lowering)


@dataclass(frozen=True)
class DetectorModel:
    eta: float
    cutoff: int = 4

    def __post_init__(self):
        if not 0.0 <= self.eta <= 1.0:
            raise ValueError(f"detector efficiency must lie in [0, 1], got {self.eta}")


@dataclass(frozen=True)
class SourceModel:
    p: float

    def __post_init__(self):
        if not 0.0 <= self.p <= 1.0:
            raise ValueError(f"source efficiency must lie in [0, 1], got {self.p}")


def click_probability(eta: float, k: int, n: int) -> float:
    """Probability that ``k`` incident photons register as ``n`` counts."""
    if n > k:
        return 0.0
    return math.comb(k, n) * eta ** n * (1 - eta) ** (k - n)


def detector_povm(d: DetectorModel, n: int) -> np.ndarray:
    """Diagonal POVM element for ``n`` counts on photon numbers ``0..cutoff``."""
    if not 0 <= n <= d.cutoff:
        raise ValueError(f"count {n} outside 0..{d.cutoff}")
    return np.diag([click_probability(d.eta, k, n) for k in range(d.cutoff + 1)])


def imperfect_source(s: SourceModel) -> DensityOperator:
    basis = enumerate_basis(1, max_total(1))
    return DensityOperator(basis, np.diag([1 - s.p, s.p]))


def emitted_distribution(s: SourceModel, m: int) -> list:
    """Photon-number distribution of a mode meant to carry ``m`` photons, each emitted with probability p."""
    return [math.comb(m, k) * s.p ** k * (1 - s.p) ** (m - k) for k in range(m + 1)]


class FidelityEstimate(NamedTuple):
    mean: float
    stderr: float
    success_mean: float
    samples: int


def _embed_rows(Y, out_basis: FockBasis) -> np.ndarray:
    rows = np.array([out_basis.index(s) for s in Y.out_basis.states], dtype=int)
    out = np.zeros((out_basis.size, Y.matrix.shape[1]), dtype=complex)
    out[rows] = Y.matrix
    return out


def noisy_outcome_operators(L, ancilla: Sequence[int], pattern: Sequence[int], signal_modes: Sequence[int],
                            cutoff: int, s: SourceModel, d: DetectorModel):
    """Weighted conditional operators whose incoherent sum is the heralded (unnormalized) output map.

    Returns ``(ops, out_basis)`` with ``ops`` of shape (R, d_out, d_in).
    """
    out_basis = enumerate_basis(len(signal_modes), max_total(cutoff + sum(ancilla)))
    ops = []
    for actual in product(*(range(m + 1) for m in ancilla)):
        p_src = math.prod(emitted_distribution(s, m)[k] for m, k in zip(ancilla, actual))
        if p_src == 0.0:
            continue
        photons = cutoff + sum(actual)
        for incident in product(*(range(n, photons + 1) for n in pattern)):
            if sum(incident) > photons:
                continue
            p_det = math.prod(click_probability(d.eta, k, n) for k, n in zip(incident, pattern))
            if p_det == 0.0:
                continue
            Y = conditional_operator(L, actual, incident, signal_modes, cutoff)
            if not np.any(Y.matrix):
                continue
            ops.append(np.sqrt(p_src * p_det) * _embed_rows(Y, out_basis))
    return np.array(ops), out_basis


def haar_states(dim: int, samples: int, seed: int) -> np.ndarray:
    rng = np.random.default_rng(seed)
    z = rng.standard_normal((samples, dim)) + 1j * rng.standard_normal((samples, dim))
    return z / np.linalg.norm(z, axis=1, keepdims=True)


def average_gate_fidelity(L, ancilla, pattern, signal_modes, cutoff, s: SourceModel, d: DetectorModel,
                          samples: int = 2000, seed: int = 1234, states: np.ndarray | None = None) -> FidelityEstimate:
    """Monte-Carlo mean of the heralded output fidelity over Haar-random signal states.

    The ideal output is ``Y psi / ||Y psi||`` for the perfect-resource
    conditional operator ``Y``, which must be proportional to a unitary.
    The actual output is normalized by its heralding probability.
    """
    if isinstance(L, NetworkDescription):
        L = compose_network(L)
    ideal = conditional_operator(L, ancilla, pattern, signal_modes, cutoff)
    check = is_proportional_to_unitary(ideal, 1e-6)
    if not check.proportional:
        raise ValueError(f"ideal gate is not proportional to a unitary (deviation {check.deviation:.2e})")
    ops, out_basis = noisy_outcome_operators(L, ancilla, pattern, signal_modes, cutoff, s, d)
    if states is None:
        states = haar_states(ideal.signal_dim, samples, seed)
    target = states @ _embed_rows(ideal, out_basis).T
    target /= np.linalg.norm(target, axis=1, keepdims=True)
    if len(ops) == 0:
        raise ValueError("zero heralding probability for every sample")
    outs = np.einsum("rij,sj->sri", ops, states)
    success = np.einsum("sri,sri->s", outs.conj(), outs).real
    if np.all(success <= 0):
        raise ValueError("zero heralding probability for every sample")
    overlap = np.einsum("si,sri->sr", target.conj(), outs)
    # fidelity is at most 1; clip the rounding excess so a perfect gate averages to exactly 1
    fid = np.minimum(np.sum(np.abs(overlap) ** 2, axis=1) / success, 1.0)
    n = len(fid)
    mean = math.fsum(fid) / n
    var = math.fsum((fid - mean) ** 2) / max(n - 1, 1)
    return FidelityEstimate(mean, math.sqrt(var / n), math.fsum(success) / n, n)


def fidelity_sweep(L, ancilla, pattern, signal_modes, cutoff, ps: Sequence[float], etas: Sequence[float],
                   samples: int = 2000, seed: int = 1234) -> list[dict]:
    """Grid of average fidelities; the same signal samples are reused at every grid point."""
    if isinstance(L, NetworkDescription):
        L = compose_network(L)
    dim = enumerate_basis(len(signal_modes), max_total(cutoff)).size
    states = haar_states(dim, samples, seed)
    rows = []
    for p in ps:
        for eta in etas:
            est = average_gate_fidelity(L, ancilla, pattern, signal_modes, cutoff, SourceModel(p),
                                        DetectorModel(eta), states=states)
            rows.append({"p": float(p), "eta": float(eta), "F_mean": est.mean, "F_stderr": est.stderr,
                         "success_prob_mean": est.success_mean, "samples": samples, "seed": seed})
    return rows


def threshold_crossing(inefficiency: Sequence[float], infidelity: Sequence[float], threshold: float = 1e-3):
    """Linear interpolation of the inefficiency at which ``1 - F`` first reaches ``threshold``."""
    x = np.asarray(inefficiency, dtype=float)
    y = np.asarray(infidelity, dtype=float)
    order = np.argsort(x)
    x, y = x[order], y[order]
    for i in range(1, len(x)):
        if y[i - 1] < threshold <= y[i]:
            return float(x[i - 1] + (threshold - y[i - 1]) * (x[i] - x[i - 1]) / (y[i] - y[i - 1]))
    return None
