"""Measurement-conditioned operators on signal modes.

Ancillas are prepared in Fock states on every non-signal mode, the whole
register goes through a mode transformation, and the non-signal modes are
projected onto a detection pattern.  What is left is a (generally
non-unitary) operator ``Y`` on the signal modes; the heralding probability
for an input ``psi`` is ``||Y psi||^2``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from math import factorial
from typing import NamedTuple, Sequence

import numpy as np

from .fock_core import FockBasis, StateVector, enumerate_basis, max_total, _compositions
from .interferometer import NetworkDescription, compose_network, is_unitary
from .permanent import transition_amplitude

NORM_TOL = 1e-9


@dataclass(frozen=True, eq=False)
class ConditionalOperator:
    """``matrix[k_out, k_in]`` maps signal Fock states of ``in_basis`` to ``out_basis``."""

    matrix: np.ndarray
    in_basis: FockBasis
    out_basis: FockBasis

    @property
    def signal_dim(self) -> int:
        return self.in_basis.size

    def operator_norm(self) -> float:
        return float(np.linalg.norm(self.matrix, 2)) if self.matrix.size else 0.0

    def square(self) -> np.ndarray:
        """Restriction to output states that also lie in the input space."""
        rows = [self.out_basis.index(s) for s in self.in_basis.states if s in self.out_basis]
        cols = [i for i, s in enumerate(self.in_basis.states) if s in self.out_basis]
        sq = np.zeros((self.in_basis.size, self.in_basis.size), dtype=complex)
        sq[np.ix_(cols, np.arange(self.in_basis.size))] = self.matrix[rows, :]
        return sq

    def apply(self, psi) -> np.ndarray:
        vec = psi.amplitudes if isinstance(psi, StateVector) else np.asarray(psi, dtype=complex)
        if vec.shape[0] != self.signal_dim:
            raise ValueError(f"state of dimension {vec.shape[0]} does not match signal dimension {self.signal_dim}")
        return self.matrix @ vec


def _split_modes(n_modes: int, signal_modes: Sequence[int]) -> tuple[list, list]:
    signal = [int(m) for m in signal_modes]
    if len(set(signal)) != len(signal):
        raise ValueError(f"signal modes overlap: {signal}")
    if any(not 0 <= m < n_modes for m in signal):
        raise ValueError(f"signal modes {signal} outside 0..{n_modes - 1}")
    if not signal:
        raise ValueError("at least one signal mode is required")
    others = [m for m in range(n_modes) if m not in signal]
    return signal, others


def _assemble(n_modes, signal, others, sig_occ, anc_occ):
    occ = [0] * n_modes
    for m, n in zip(signal, sig_occ):
        occ[m] = n
    for m, n in zip(others, anc_occ):
        occ[m] = n
    return occ


def conditional_operator(L, ancilla: Sequence[int], pattern: Sequence[int], signal_modes: Sequence[int],
                         signal_cutoff: int) -> ConditionalOperator:
    """Conditional operator for ancilla Fock input ``ancilla`` and detection ``pattern``.

    ``ancilla`` and ``pattern`` list photon numbers of the non-signal modes in
    increasing mode order.  Input signal states carry at most
    ``signal_cutoff`` photons; the output space is enlarged by the net
    number of photons the ancillas leave behind, so no amplitude is cut off.
    """
    if isinstance(L, NetworkDescription):
        L = compose_network(L)
    L = np.asarray(L, dtype=complex)
    n_modes = L.shape[0]
    signal, others = _split_modes(n_modes, signal_modes)
    ancilla = [int(n) for n in ancilla]
    pattern = [int(n) for n in pattern]
    if len(ancilla) != len(others) or len(pattern) != len(others):
        raise ValueError(
            f"ancilla ({len(ancilla)}) and pattern ({len(pattern)}) must list all {len(others)} non-signal modes"
        )
    if min(ancilla + pattern, default=0) < 0:
        raise ValueError("photon numbers must be non-negative")
    if signal_cutoff < 0:
        raise ValueError(f"signal_cutoff must be >= 0, got {signal_cutoff}")
    shift = sum(ancilla) - sum(pattern)
    in_basis = enumerate_basis(len(signal), max_total(signal_cutoff))
    out_basis = enumerate_basis(len(signal), max_total(max(0, signal_cutoff + shift)))
    Y = np.zeros((out_basis.size, in_basis.size), dtype=complex)
    for k, s_in in enumerate(in_basis.states):
        n_in = _assemble(n_modes, signal, others, s_in, ancilla)
        target = sum(s_in) + shift
        if target < 0:
            continue
        for s_out in _compositions(target, len(signal)):
            n_out = _assemble(n_modes, signal, others, s_out, pattern)
            Y[out_basis.index(s_out), k] = transition_amplitude(L, n_in, n_out)
    op = ConditionalOperator(Y, in_basis, out_basis)
    if is_unitary(L, 1e-9) and op.operator_norm() > 1 + NORM_TOL:
        raise ArithmeticError(f"conditional operator norm {op.operator_norm()} exceeds 1")
    return op


def outcome_operators(L, ancilla: Sequence[int], signal_modes: Sequence[int], signal_cutoff: int) -> dict:
    """Conditional operators for every detection pattern reachable from ``ancilla``."""
    if isinstance(L, NetworkDescription):
        L = compose_network(L)
    L = np.asarray(L, dtype=complex)
    signal, others = _split_modes(L.shape[0], signal_modes)
    max_detect = signal_cutoff + sum(ancilla)
    out = {}
    for pattern in product(range(max_detect + 1), repeat=len(others)):
        if sum(pattern) <= max_detect:
            out[pattern] = conditional_operator(L, ancilla, pattern, signal, signal_cutoff)
    return out


def success_probability(Y: ConditionalOperator, psi) -> float:
    out = Y.apply(psi)
    return float(np.vdot(out, out).real)


class Proportionality(NamedTuple):
    proportional: bool
    scale: float
    deviation: float


def is_proportional_to_unitary(Y, tol: float = 1e-6) -> Proportionality:
    """Check ``Y^dag Y == c I``; ``c`` is the state-independent success probability."""
    M = Y.matrix if isinstance(Y, ConditionalOperator) else np.asarray(Y, dtype=complex)
    G = M.conj().T @ M
    c = float(np.trace(G).real / G.shape[0])
    dev = float(np.abs(G - c * np.eye(G.shape[0])).max())
    return Proportionality(dev <= tol and c > tol, c, dev)


SPECIAL_CASES = ("all-singles-detect-vacuum", "vacuum-detect-singles", "singles-detect-singles")


class SpecialCaseFit(NamedTuple):
    case: str
    coefficients: tuple
    ratio: complex
    residual: float
    matches: bool


def special_case_operator(L, case: str, signal_cutoff: int | None = None, tol: float = 1e-9) -> SpecialCaseFit:
    """Compare the conditional operator of one of the three textbook preparations with its closed form.

    Signal is mode 0, ancillas are modes 1..N-1 and ``t = L[0, 0]``:

    * ``all-singles-detect-vacuum``: ``Y = kappa (a^dag)^(N-1) t^n``
    * ``vacuum-detect-singles``: ``Y = kappa t^n a^(N-1)``
    * ``singles-detect-singles``: ``Y = t^n P(n)`` with ``P`` of degree N-1

    ``coefficients`` holds ``kappa`` for the first two and the polynomial
    coefficients (ascending powers) for the third.
    """
    L = np.asarray(L, dtype=complex)
    N = L.shape[0]
    k = N - 1
    if case not in SPECIAL_CASES:
        raise ValueError(f"case must be one of {SPECIAL_CASES}, got {case!r}")
    if signal_cutoff is None:
        signal_cutoff = N + 2
    t = L[0, 0]
    if abs(t) < 1e-12:
        raise ValueError("closed forms need L[0, 0] != 0")
    if case == "all-singles-detect-vacuum":
        Y = conditional_operator(L, [1] * k, [0] * k, [0], signal_cutoff).matrix
        model = np.zeros_like(Y)
        r0 = Y[k, 0]
        for n in range(signal_cutoff + 1):
            model[n + k, n] = r0 * np.sqrt(factorial(n + k) / factorial(n) / factorial(k)) * t ** n
        kappa = r0 / np.sqrt(factorial(k))
        coeffs = (complex(kappa),)
    elif case == "vacuum-detect-singles":
        Y = conditional_operator(L, [0] * k, [1] * k, [0], signal_cutoff).matrix
        model = np.zeros_like(Y)
        rk = Y[0, k] if signal_cutoff >= k else 0.0
        for n in range(k, signal_cutoff + 1):
            model[n - k, n] = rk * np.sqrt(factorial(n) / factorial(n - k) / factorial(k)) * t ** (n - k)
        kappa = rk / np.sqrt(factorial(k))
        coeffs = (complex(kappa),)
    else:
        Y = conditional_operator(L, [1] * k, [1] * k, [0], signal_cutoff).matrix
        n = np.arange(signal_cutoff + 1)
        g = np.diag(Y) / t ** n
        V = np.vander(n.astype(float), k + 1, increasing=True).astype(complex)
        poly, *_ = np.linalg.lstsq(V, g, rcond=None)
        model = np.diag(t ** n * (V @ poly))
        coeffs = tuple(complex(c) for c in poly)
    residual = float(np.abs(Y - model).max())
    return SpecialCaseFit(case, coeffs, complex(t), residual, residual <= tol)


@dataclass
class Scenario:
    """A heralded-gate setup as read from JSON."""

    network: NetworkDescription
    ancilla: list
    pattern: list
    signal_modes: list
    cutoff: int
    input_amplitudes: list | None = field(default=None)

    @classmethod
    def from_dict(cls, data: dict) -> "Scenario":
        for key in ("network", "ancilla", "pattern", "signal_modes", "cutoff"):
            if key not in data:
                raise KeyError(key)
        inp = data.get("input")
        if inp is not None:
            inp = [complex(re, im) for re, im in inp]
        return cls(NetworkDescription.from_dict(data["network"]), [int(n) for n in data["ancilla"]],
                   [int(n) for n in data["pattern"]], [int(m) for m in data["signal_modes"]],
                   int(data["cutoff"]), inp)

    def to_dict(self) -> dict:
        out = {"network": self.network.to_dict(), "ancilla": list(self.ancilla), "pattern": list(self.pattern),
               "signal_modes": list(self.signal_modes), "cutoff": self.cutoff}
        if self.input_amplitudes is not None:
            out["input"] = [[c.real, c.imag] for c in self.input_amplitudes]
        return out

    def operator(self) -> ConditionalOperator:
        return conditional_operator(compose_network(self.network), self.ancilla, self.pattern,
                                    self.signal_modes, self.cutoff)
