"""Truncated multimode bosonic Fock spaces.

Basis order: sectors of increasing total occupation, and inside each sector
occupation vectors in descending lexicographic order.  A fixed-total basis
is a single sector, e.g. two modes with two particles gives
``(2, 0), (1, 1), (0, 2)``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import lru_cache
from math import comb
from typing import Iterable, Sequence

import numpy as np

MAX_BASIS_SIZE = 2_000_000

MAX_TOTAL = "max_total"
FIXED_TOTAL = "fixed_total"


@dataclass(frozen=True)
class Truncation:
    """``max_total``: at most ``n`` quanta in total.  ``fixed_total``: exactly ``n``."""

    kind: str
    n: int

    def __post_init__(self):
        if self.kind not in (MAX_TOTAL, FIXED_TOTAL):
            raise ValueError(f"unknown truncation kind {self.kind!r}")
        if self.n < 0:
            raise ValueError(f"truncation parameter must be >= 0, got {self.n}")

    def to_dict(self) -> dict:
        return {"kind": self.kind, "n": self.n}


def max_total(n: int) -> Truncation:
    return Truncation(MAX_TOTAL, n)


def fixed_total(n: int) -> Truncation:
    return Truncation(FIXED_TOTAL, n)


def basis_size(mode_count: int, truncation: Truncation) -> int:
    if truncation.kind == MAX_TOTAL:
        return comb(mode_count + truncation.n, truncation.n)
    return comb(truncation.n + mode_count - 1, truncation.n)


def _compositions(total: int, parts: int):
    # descending lexicographic order
    if parts == 1:
        yield (total,)
        return
    for first in range(total, -1, -1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


class FockBasis:
    """Bijection between occupation vectors and dense indices."""

    def __init__(self, mode_count: int, truncation: Truncation, max_size: int = MAX_BASIS_SIZE):
        if mode_count < 1:
            raise ValueError(f"mode_count must be >= 1, got {mode_count}")
        size = basis_size(mode_count, truncation)
        if size > max_size:
            raise ValueError(
                f"basis of {mode_count} modes with {truncation.kind}={truncation.n} "
                f"has {size} states, above the limit of {max_size}"
            )
        self.mode_count = mode_count
        self.truncation = truncation
        if truncation.kind == MAX_TOTAL:
            totals = range(truncation.n + 1)
        else:
            totals = [truncation.n]
        states = [s for t in totals for s in _compositions(t, mode_count)]
        self.states = tuple(states)
        self._index = {s: i for i, s in enumerate(states)}
        self.occupations = np.array(states, dtype=np.int64).reshape(len(states), mode_count)
        self.occupations.flags.writeable = False
        self.totals = self.occupations.sum(axis=1)
        self.totals.flags.writeable = False

    @property
    def size(self) -> int:
        return len(self.states)

    def __len__(self) -> int:
        return len(self.states)

    @property
    def cutoff(self) -> int:
        """Largest total occupation present in the basis."""
        return self.truncation.n

    def index(self, state: Sequence[int]) -> int:
        return self._index[tuple(int(n) for n in state)]

    def __contains__(self, state) -> bool:
        return tuple(int(n) for n in state) in self._index

    def state(self, i: int) -> tuple:
        return self.states[i]

    def sector(self, total: int) -> np.ndarray:
        """Indices of all basis states with the given total occupation."""
        return np.flatnonzero(self.totals == total)

    def __eq__(self, other) -> bool:
        if not isinstance(other, FockBasis):
            return NotImplemented
        return self.mode_count == other.mode_count and self.truncation == other.truncation

    def __hash__(self) -> int:
        return hash((self.mode_count, self.truncation))

    def __repr__(self) -> str:
        return f"FockBasis(modes={self.mode_count}, {self.truncation.kind}={self.truncation.n}, size={self.size})"


@lru_cache(maxsize=64)
def enumerate_basis(mode_count: int, truncation: Truncation) -> FockBasis:
    return FockBasis(mode_count, truncation)


def _check_occupation(occupations: Iterable[int]) -> tuple:
    occ = tuple(int(n) for n in occupations)
    if any(n < 0 for n in occ):
        raise ValueError(f"occupations must be non-negative, got {occ}")
    return occ


@dataclass(frozen=True, eq=False)
class StateVector:
    basis: FockBasis
    amplitudes: np.ndarray
    truncation_loss: float = 0.0

    def __post_init__(self):
        amps = np.asarray(self.amplitudes, dtype=complex)
        if amps.shape != (self.basis.size,):
            raise ValueError(f"expected {self.basis.size} amplitudes, got shape {amps.shape}")
        amps = amps.copy()
        amps.flags.writeable = False
        object.__setattr__(self, "amplitudes", amps)

    @classmethod
    def fock(cls, basis: FockBasis, occupations: Sequence[int], amplitude: complex = 1.0) -> "StateVector":
        amps = np.zeros(basis.size, dtype=complex)
        amps[basis.index(_check_occupation(occupations))] = amplitude
        return cls(basis, amps)

    @classmethod
    def superposition(cls, basis: FockBasis, terms: dict) -> "StateVector":
        amps = np.zeros(basis.size, dtype=complex)
        for occ, c in terms.items():
            amps[basis.index(_check_occupation(occ))] += c
        return cls(basis, amps)

    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def normalize(self) -> "StateVector":
        nrm = self.norm()
        if nrm == 0.0:
            raise ValueError("cannot normalize the zero vector")
        return StateVector(self.basis, self.amplitudes / nrm, self.truncation_loss)

    def amplitude(self, occupations: Sequence[int]) -> complex:
        return complex(self.amplitudes[self.basis.index(occupations)])

    def to_json(self) -> str:
        return json.dumps(state_to_dict(self))

    @classmethod
    def from_json(cls, text: str) -> "StateVector":
        return state_from_dict(json.loads(text))


def state_to_dict(state: StateVector) -> dict:
    return {
        "modes": state.basis.mode_count,
        "truncation": state.basis.truncation.to_dict(),
        "amplitudes": [[float(c.real), float(c.imag)] for c in state.amplitudes],
    }


def state_from_dict(data: dict) -> StateVector:
    trunc = Truncation(data["truncation"]["kind"], int(data["truncation"]["n"]))
    basis = enumerate_basis(int(data["modes"]), trunc)
    amps = np.array([complex(re, im) for re, im in data["amplitudes"]])
    return StateVector(basis, amps)


@dataclass(frozen=True, eq=False)
class DensityOperator:
    basis: FockBasis
    matrix: np.ndarray
    truncation_loss: float = 0.0

    def __post_init__(self):
        mat = np.array(self.matrix, dtype=complex)
        if mat.shape != (self.basis.size, self.basis.size):
            raise ValueError(f"expected a {self.basis.size}x{self.basis.size} matrix, got {mat.shape}")
        mat.flags.writeable = False
        object.__setattr__(self, "matrix", mat)

    @classmethod
    def pure(cls, state: StateVector) -> "DensityOperator":
        v = state.amplitudes
        return cls(state.basis, np.outer(v, v.conj()), state.truncation_loss)

    def trace(self) -> complex:
        return complex(np.trace(self.matrix))

    def is_hermitian(self, atol: float = 1e-12) -> bool:
        return bool(np.allclose(self.matrix, self.matrix.conj().T, atol=atol, rtol=0))

    def min_eigenvalue(self) -> float:
        return float(np.linalg.eigvalsh((self.matrix + self.matrix.conj().T) / 2).min())


def ladder_matrix(basis: FockBasis, mode: int, kind: str) -> np.ndarray:
    """Dense matrix of a creation or annihilation operator, truncated to ``basis``.

    Matrix elements that would leave the basis are simply absent.
    """
    if not 0 <= mode < basis.mode_count:
        raise IndexError(f"mode {mode} out of range for {basis.mode_count} modes")
    if kind not in ("creation", "annihilation"):
        raise ValueError(f"kind must be 'creation' or 'annihilation', got {kind!r}")
    step = 1 if kind == "creation" else -1
    out = np.zeros((basis.size, basis.size))
    for j, occ in enumerate(basis.states):
        n = occ[mode]
        if step < 0 and n == 0:
            continue
        target = list(occ)
        target[mode] = n + step
        target = tuple(target)
        if target in basis:
            out[basis.index(target), j] = np.sqrt(n + 1) if step > 0 else np.sqrt(n)
    return out


def number_matrix(basis: FockBasis, mode: int) -> np.ndarray:
    return np.diag(basis.occupations[:, mode].astype(float))


def apply_ladder(state: StateVector, mode: int, kind: str) -> StateVector:
    """Apply a creation/annihilation operator.

    Amplitude pushed above the cutoff is dropped; its squared norm is
    recorded in ``truncation_loss`` of the result.
    """
    basis = state.basis
    if basis.truncation.kind != MAX_TOTAL:
        raise ValueError("ladder operators change the particle number; use a max_total basis")
    if not 0 <= mode < basis.mode_count:
        raise IndexError(f"mode {mode} out of range for {basis.mode_count} modes")
    out = np.zeros(basis.size, dtype=complex)
    dropped = 0.0
    for j, occ in enumerate(basis.states):
        c = state.amplitudes[j]
        if c == 0:
            continue
        n = occ[mode]
        if kind == "creation":
            target, factor = n + 1, np.sqrt(n + 1)
        elif kind == "annihilation":
            if n == 0:
                continue
            target, factor = n - 1, np.sqrt(n)
        else:
            raise ValueError(f"kind must be 'creation' or 'annihilation', got {kind!r}")
        new = occ[:mode] + (target,) + occ[mode + 1:]
        if new in basis:
            out[basis.index(new)] += factor * c
        else:
            dropped += abs(factor * c) ** 2
    return StateVector(basis, out, state.truncation_loss + dropped)


def _product_map(a: FockBasis, b: FockBasis, cutoff: int):
    if a.truncation.kind != MAX_TOTAL or b.truncation.kind != MAX_TOTAL:
        raise ValueError("tensor_product needs max_total truncations on both factors")
    basis = enumerate_basis(a.mode_count + b.mode_count, max_total(cutoff))
    ia, ib, ic = [], [], []
    for i, sa in enumerate(a.states):
        for j, sb in enumerate(b.states):
            s = sa + sb
            if s in basis:
                ia.append(i)
                ib.append(j)
                ic.append(basis.index(s))
    return basis, np.array(ia, dtype=int), np.array(ib, dtype=int), np.array(ic, dtype=int)


def tensor_product(a, b, cutoff: int | None = None):
    """Product of two states or two density operators on disjoint modes.

    The combined basis keeps at most ``cutoff`` quanta (default: the sum of
    both cutoffs, which is lossless).  Dropped weight is reported in
    ``truncation_loss``.
    """
    if type(a) is not type(b):
        raise TypeError("tensor_product needs two StateVectors or two DensityOperators")
    if cutoff is None:
        cutoff = a.basis.cutoff + b.basis.cutoff
    basis, ia, ib, ic = _product_map(a.basis, b.basis, cutoff)
    if isinstance(a, StateVector):
        full = np.outer(a.amplitudes, b.amplitudes)
        out = np.zeros(basis.size, dtype=complex)
        out[ic] = full[ia, ib]
        dropped = max(0.0, float(np.sum(np.abs(full) ** 2) - np.sum(np.abs(out) ** 2)))
        return StateVector(basis, out, a.truncation_loss + b.truncation_loss + dropped)
    out = np.zeros((basis.size, basis.size), dtype=complex)
    out[np.ix_(ic, ic)] = a.matrix[np.ix_(ia, ia)] * b.matrix[np.ix_(ib, ib)]
    dropped = max(0.0, float((a.trace() * b.trace()).real - np.trace(out).real))
    return DensityOperator(basis, out, a.truncation_loss + b.truncation_loss + dropped)


def partial_trace(rho: DensityOperator, keep: Iterable[int]) -> DensityOperator:
    """Trace out every mode not in ``keep``; kept modes retain their relative order."""
    keep = sorted(set(int(k) for k in keep))
    basis = rho.basis
    if not keep:
        raise ValueError("keep must name at least one mode")
    if keep[0] < 0 or keep[-1] >= basis.mode_count:
        raise IndexError(f"keep {keep} not within {basis.mode_count} modes")
    drop = [m for m in range(basis.mode_count) if m not in keep]
    reduced = enumerate_basis(len(keep), max_total(basis.cutoff))
    kept_idx = np.array([reduced.index(basis.occupations[i, keep]) for i in range(basis.size)])
    groups: dict = {}
    for i in range(basis.size):
        groups.setdefault(tuple(basis.occupations[i, drop]), []).append(i)
    out = np.zeros((reduced.size, reduced.size), dtype=complex)
    for members in groups.values():
        members = np.array(members)
        k = kept_idx[members]
        out[np.ix_(k, k)] += rho.matrix[np.ix_(members, members)]
    return DensityOperator(reduced, out, rho.truncation_loss)


def state_fidelity(rho: DensityOperator, psi: StateVector) -> float:
    """Overlap <psi|rho|psi>."""
    if rho.basis != psi.basis:
        raise ValueError(f"basis mismatch: {rho.basis!r} vs {psi.basis!r}")
    v = psi.amplitudes
    return float(np.real(v.conj() @ rho.matrix @ v))
