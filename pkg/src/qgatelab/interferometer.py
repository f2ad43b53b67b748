"""Beam-splitter networks, their triangular factorization, and the Fock-space lift.

Convention: a lossless beam splitter on modes (i, j) has the 2x2 block
``[[T, R], [-conj(R), conj(T)]]``.  A mode matrix ``L`` acts on creation
operators as ``a_i^dag -> sum_k L[k, i] a_k^dag``, so column ``i`` holds the
output amplitudes of a photon entering mode ``i``.  Networks are listed in
the order light traverses them; ``compose_network`` returns
``E_last @ ... @ E_first``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

import numpy as np

from .fock_core import FockBasis, StateVector
from .permanent import transition_amplitude

UNITARY_TOL = 1e-10


@dataclass(frozen=True)
class BeamSplitterParams:
    T: complex
    R: complex

    def __post_init__(self):
        object.__setattr__(self, "T", complex(self.T))
        object.__setattr__(self, "R", complex(self.R))

    @classmethod
    def from_angles(cls, theta: float, phi_t: float = 0.0, phi_r: float = 0.0) -> "BeamSplitterParams":
        return cls(np.cos(theta) * np.exp(1j * phi_t), np.sin(theta) * np.exp(1j * phi_r))

    @property
    def is_lossless(self) -> bool:
        return abs(abs(self.T) ** 2 + abs(self.R) ** 2 - 1.0) <= 1e-12

    def matrix(self) -> np.ndarray:
        T, R = self.T, self.R
        return np.array([[T, R], [-R.conjugate(), T.conjugate()]])


@dataclass(frozen=True)
class BeamSplitter:
    i: int
    j: int
    params: BeamSplitterParams


@dataclass(frozen=True)
class PhaseShift:
    i: int
    theta: float


Element = Union[BeamSplitter, PhaseShift]


@dataclass(frozen=True)
class NetworkDescription:
    mode_count: int
    elements: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "elements", tuple(self.elements))
        for el in self.elements:
            idx = (el.i, el.j) if isinstance(el, BeamSplitter) else (el.i,)
            for m in idx:
                if not 0 <= m < self.mode_count:
                    raise ValueError(f"element {el} references mode {m} outside 0..{self.mode_count - 1}")
            if isinstance(el, BeamSplitter) and el.i == el.j:
                raise ValueError(f"beam splitter needs two distinct modes, got ({el.i}, {el.j})")

    @property
    def beam_splitter_count(self) -> int:
        return sum(isinstance(el, BeamSplitter) for el in self.elements)

    def to_dict(self) -> dict:
        out = []
        for el in self.elements:
            if isinstance(el, BeamSplitter):
                T, R = el.params.T, el.params.R
                out.append({"type": "bs", "i": el.i, "j": el.j, "T": [T.real, T.imag], "R": [R.real, R.imag]})
            else:
                out.append({"type": "phase", "i": el.i, "theta": float(el.theta)})
        return {"modes": self.mode_count, "elements": out}

    @classmethod
    def from_dict(cls, data: dict) -> "NetworkDescription":
        elements = []
        for k, el in enumerate(data.get("elements", [])):
            kind = el.get("type")
            if kind == "bs":
                params = BeamSplitterParams(complex(*el["T"]), complex(*el["R"]))
                elements.append(BeamSplitter(int(el["i"]), int(el["j"]), params))
            elif kind == "phase":
                elements.append(PhaseShift(int(el["i"]), float(el["theta"])))
            else:
                raise ValueError(f"elements[{k}].type must be 'bs' or 'phase', got {kind!r}")
        return cls(int(data["modes"]), tuple(elements))


def is_unitary(L, tol: float = UNITARY_TOL) -> bool:
    L = np.asarray(L)
    return L.ndim == 2 and L.shape[0] == L.shape[1] and np.allclose(L @ L.conj().T, np.eye(L.shape[0]), atol=tol, rtol=0)


def embed_block(block, i: int, j: int, n: int) -> np.ndarray:
    out = np.eye(n, dtype=complex)
    out[np.ix_([i, j], [i, j])] = block
    return out


def element_matrix(el: Element, n: int) -> np.ndarray:
    if isinstance(el, BeamSplitter):
        return embed_block(el.params.matrix(), el.i, el.j, n)
    out = np.eye(n, dtype=complex)
    out[el.i, el.i] = np.exp(1j * el.theta)
    return out


def compose_network(desc: NetworkDescription) -> np.ndarray:
    L = np.eye(desc.mode_count, dtype=complex)
    for el in desc.elements:
        L = element_matrix(el, desc.mode_count) @ L
    return L


def reck_decompose(U, tol: float = 1e-8, skip_tol: float = 1e-14) -> tuple[NetworkDescription, float]:
    """Factor a unitary into nearest-neighbour beam splitters and phases.

    Returns ``(network, global_phase)`` with
    ``exp(1j * global_phase) * compose_network(network) == U``.
    At most N(N-1)/2 beam splitters are used; trivial ones are omitted.
    """
    U = np.asarray(U, dtype=complex)
    n = U.shape[0]
    if not is_unitary(U, tol):
        raise ValueError("reck_decompose needs a unitary matrix")
    W = U.copy()
    nulling = []
    for c in range(n - 1):
        for r in range(n - 1, c, -1):
            a, b = W[r - 1, c], W[r, c]
            if abs(b) < skip_tol:
                continue
            nrm = np.hypot(abs(a), abs(b))
            G = BeamSplitterParams(np.conj(a) / nrm, np.conj(b) / nrm)
            W = embed_block(G.matrix(), r - 1, r, n) @ W
            W[r, c] = 0.0
            nulling.append((r - 1, r, G))
    diag = np.diag(W)
    global_phase = float(np.angle(diag[0]))
    elements: list = []
    for k in range(n):
        theta = float(np.angle(diag[k])) - global_phase
        theta = (theta + np.pi) % (2 * np.pi) - np.pi
        if abs(theta) > skip_tol:
            elements.append(PhaseShift(k, theta))
    # U = G_1^dag ... G_m^dag D, so G_m^dag is traversed first after D
    for i, j, G in reversed(nulling):
        elements.append(BeamSplitter(i, j, BeamSplitterParams(np.conj(G.T), -G.R)))
    return NetworkDescription(n, tuple(elements)), global_phase


def lift_to_fock(L, basis: FockBasis) -> np.ndarray:
    """Fock-space matrix of the mode transformation ``L`` on ``basis``.

    ``<m|U|n> = per(L[m, n]) / sqrt(prod n_i! prod m_j!)``; the result is
    block diagonal in total photon number.
    """
    L = np.asarray(L, dtype=complex)
    if L.shape != (basis.mode_count, basis.mode_count):
        raise ValueError(f"mode matrix {L.shape} does not match a {basis.mode_count}-mode basis")
    out = np.zeros((basis.size, basis.size), dtype=complex)
    for total in np.unique(basis.totals):
        idx = basis.sector(total)
        for a in idx:
            for b in idx:
                out[a, b] = transition_amplitude(L, basis.states[b], basis.states[a])
    return out


def _pair_operator(params: BeamSplitterParams, total: int) -> np.ndarray:
    """Normal-ordered factor product T^n1 exp(-R* a2^dag a1) exp(R a1^dag a2) T^-n2 on a fixed total.

    Pair basis: (total - k, k) for k = 0..total.
    """
    T, R = params.T, params.R
    dim = total + 1
    # raise_1 = a1^dag a2 : (n1, n2) -> (n1 + 1, n2 - 1), i.e. k -> k - 1
    raise_1 = np.zeros((dim, dim), dtype=complex)
    for k in range(1, dim):
        n1, n2 = total - k, k
        raise_1[k - 1, k] = np.sqrt((n1 + 1) * n2)
    raise_2 = raise_1.T.copy()

    def exp_nilpotent(X):
        out = np.eye(dim, dtype=complex)
        term = np.eye(dim, dtype=complex)
        for p in range(1, dim):
            term = term @ X / p
            out = out + term
        return out

    n2 = np.arange(dim)
    n1 = total - n2
    left = np.diag([T ** int(m) if m > 0 else 1.0 for m in n1])
    right = np.diag([T ** (-int(m)) if m > 0 else 1.0 for m in n2])
    return left @ exp_nilpotent(-np.conj(R) * raise_2) @ exp_nilpotent(R * raise_1) @ right


def apply_bs_factored(state: StateVector, bs: BeamSplitterParams, modes: tuple[int, int]) -> StateVector:
    """Apply a lossless beam splitter through its normal-ordered factorization."""
    i, j = modes
    basis = state.basis
    if i == j:
        raise ValueError("beam splitter modes must be distinct")
    if not bs.is_lossless:
        raise ValueError("apply_bs_factored needs a lossless beam splitter")
    amps = state.amplitudes
    if bs.T == 0:
        occupied = basis.occupations[np.abs(amps) > 0, j]
        if np.any(occupied > 0):
            raise ValueError("T = 0 with photons in the second mode: the T^-n2 factor diverges")
    out = np.zeros(basis.size, dtype=complex)
    groups: dict = {}
    for idx, occ in enumerate(basis.states):
        rest = tuple(occ[m] for m in range(basis.mode_count) if m not in (i, j))
        groups.setdefault((rest, occ[i] + occ[j]), []).append(idx)
    cache: dict = {}
    for (rest, total), members in groups.items():
        if total not in cache:
            cache[total] = _pair_operator(bs, total)
        op = cache[total]
        vec = np.zeros(total + 1, dtype=complex)
        slots = {}
        for idx in members:
            k = basis.states[idx][j]
            vec[k] = amps[idx]
            slots[k] = idx
        res = op @ vec
        for k, idx in slots.items():
            out[idx] = res[k]
    return StateVector(basis, out, state.truncation_loss)


def fifty_fifty() -> BeamSplitterParams:
    return BeamSplitterParams(1 / np.sqrt(2), 1 / np.sqrt(2))


def random_unitary(n: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-distributed unitary via QR of a complex Ginibre matrix."""
    Z = (rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))) / np.sqrt(2)
    Q, Rm = np.linalg.qr(Z)
    d = np.diag(Rm)
    return Q * (d / np.abs(d))
