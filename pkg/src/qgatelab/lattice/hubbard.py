"""Bose-Hubbard Hamiltonians in the occupation-number basis, plus the few-level gate models."""

from __future__ import annotations

from dataclasses import dataclass
from math import comb

import numpy as np
import scipy.sparse as sp

from ..fock_core import FockBasis, StateVector, enumerate_basis, fixed_total

MAX_DIMENSION = 200_000


@dataclass(frozen=True)
class BHParams:
    U: float
    J: float
    sites: int
    atoms: int
    boundary: str = "open"

    def __post_init__(self):
        if self.U < 0 or self.J < 0:
            raise ValueError("U and J must be non-negative")
        if self.sites < 2:
            raise ValueError(f"need at least 2 sites, got {self.sites}")
        if self.atoms < 1:
            raise ValueError(f"need at least 1 atom, got {self.atoms}")
        if self.boundary not in ("open", "periodic"):
            raise ValueError(f"boundary must be 'open' or 'periodic', got {self.boundary!r}")

    @property
    def dimension(self) -> int:
        return comb(self.atoms + self.sites - 1, self.atoms)

    def bonds(self) -> list[tuple[int, int]]:
        out = [(i, i + 1) for i in range(self.sites - 1)]
        if self.boundary == "periodic" and self.sites > 2:
            out.append((self.sites - 1, 0))
        return out


class _Ranker:
    """Vectorized lookup from occupation rows to basis indices."""

    def __init__(self, basis: FockBasis):
        self.base = basis.cutoff + 1
        self.weights = self.base ** np.arange(basis.mode_count - 1, -1, -1, dtype=np.int64)
        codes = basis.occupations @ self.weights
        self.order = np.argsort(codes)
        self.sorted = codes[self.order]

    def __call__(self, occ: np.ndarray) -> np.ndarray:
        pos = np.searchsorted(self.sorted, occ @ self.weights)
        return self.order[pos]


def hop_pairs(basis: FockBasis, i: int, j: int):
    """Rows, cols, values of ``a_i^dag a_j`` (i != j) on a fixed-total basis."""
    occ = basis.occupations
    src = np.flatnonzero(occ[:, j] > 0)
    new = occ[src].copy()
    new[:, j] -= 1
    new[:, i] += 1
    dst = _Ranker(basis)(new)
    vals = np.sqrt(occ[src, j] * (occ[src, i] + 1.0))
    return dst, src, vals


@dataclass(frozen=True, eq=False)
class SparseHamiltonian:
    """Hermitian operator stored once as its upper triangle (diagonal included)."""

    basis: FockBasis
    upper: sp.csr_matrix

    @property
    def dimension(self) -> int:
        return self.basis.size

    @property
    def diagonal(self) -> np.ndarray:
        return self.upper.diagonal()

    def matvec(self, x: np.ndarray) -> np.ndarray:
        return self.upper @ x + self.upper.T.conj() @ x - self.diagonal * x

    def to_sparse(self) -> sp.csr_matrix:
        return (self.upper + self.upper.T.conj() - sp.diags(self.diagonal)).tocsr()

    def to_dense(self) -> np.ndarray:
        return self.to_sparse().toarray()


def bh_basis(params: BHParams) -> FockBasis:
    if params.dimension > MAX_DIMENSION:
        raise ValueError(f"Hilbert space of dimension {params.dimension} exceeds the limit {MAX_DIMENSION}")
    return enumerate_basis(params.sites, fixed_total(params.atoms))


def build_bh_hamiltonian(params: BHParams) -> SparseHamiltonian:
    """``(U/2) sum n_i (n_i - 1) - J sum (a_i^dag a_{i+1} + h.c.)`` on the sector of ``atoms`` particles."""
    basis = bh_basis(params)
    occ = basis.occupations
    diag = 0.5 * params.U * np.sum(occ * (occ - 1), axis=1)
    rows, cols, vals = [np.arange(basis.size)], [np.arange(basis.size)], [diag.astype(float)]
    if params.J != 0:
        for i, j in params.bonds():
            # each a_i^dag a_j element pairs with its adjoint; store it once in the upper triangle
            dst, src, v = hop_pairs(basis, i, j)
            rows.append(np.minimum(dst, src))
            cols.append(np.maximum(dst, src))
            vals.append(-params.J * v)
    r = np.concatenate(rows)
    c = np.concatenate(cols)
    v = np.concatenate(vals)
    upper = sp.coo_matrix((v, (r, c)), shape=(basis.size, basis.size)).tocsr()
    return SparseHamiltonian(basis, upper)


# ---------------------------------------------------------------- two species

@dataclass(frozen=True)
class TwoSpeciesParams:
    U_aa: float
    U_ab: float
    U_bb: float
    J_a: float = 0.0
    J_b: float = 0.0
    J_R: float = 0.0

    def __post_init__(self):
        for name in ("U_aa", "U_ab", "U_bb", "J_a", "J_b", "J_R"):
            if getattr(self, name) < 0:
                raise ValueError(f"{name} must be non-negative")


def effective_Hbb(J_b: float, U_bb: float, bosonic: bool = False) -> np.ndarray:
    """Basis {|01;01>, |02;00>, |00;02>}.

    ``bosonic=False`` gives the matrix with plain ``-J_b`` couplings; the
    occupation-number Hamiltonian has ``-sqrt(2) J_b`` there (``bosonic=True``).
    """
    g = -J_b * (np.sqrt(2.0) if bosonic else 1.0)
    return np.array([[0, g, g], [g, U_bb, 0], [g, 0, U_bb]], dtype=float)


def effective_Hab2(J_b: float, U_ab: float) -> np.ndarray:
    """Basis {|1,0;0,1>, |1,1;0,0>}."""
    return np.array([[0, -J_b], [-J_b, U_ab]], dtype=float)


def effective_Hab4(J_a: float, J_b: float, U_ab: float) -> np.ndarray:
    """Basis {|1,1;0,0>, |1,0;0,1>, |0,1;1,0>, |0,0;1,1>}, with the couplings labelled as printed.

    In the occupation-number model the entries tagged ``J_a`` here are
    b-hops and vice versa, i.e. the physical matrix is
    ``effective_Hab4(J_b, J_a, U_ab)``.
    """
    return np.array([
        [U_ab, -J_a, -J_b, 0],
        [-J_a, 0, 0, -J_b],
        [-J_b, 0, 0, -J_a],
        [0, -J_b, -J_a, U_ab],
    ], dtype=float)


def two_site_two_species(p: TwoSpeciesParams, n_a: int, n_b: int, include_raman: bool = False):
    """Full two-site Hamiltonian from the two-species Bose-Hubbard form.

    Modes are ordered (a1, b1, a2, b2) so occupations read |n_a1, n_b1; n_a2, n_b2>.
    Without the Raman term the species numbers are conserved and the basis is
    the (n_a, n_b) sector; with it, the total ``n_a + n_b`` sector.
    Returns ``(H, states)``.
    """
    total = n_a + n_b
    basis = enumerate_basis(4, fixed_total(total))
    occ = basis.occupations
    if include_raman:
        idx = np.arange(basis.size)
    else:
        idx = np.flatnonzero((occ[:, 0] + occ[:, 2] == n_a) & (occ[:, 1] + occ[:, 3] == n_b))
    pos = {int(k): m for m, k in enumerate(idx)}
    H = np.zeros((len(idx), len(idx)))
    for m, k in enumerate(idx):
        a1, b1, a2, b2 = occ[k]
        H[m, m] = sum(0.5 * p.U_aa * na * (na - 1) + p.U_ab * na * nb + 0.5 * p.U_bb * nb * (nb - 1)
                      for na, nb in ((a1, b1), (a2, b2)))
    hops = [(0, 2, p.J_a), (1, 3, p.J_b)]
    if include_raman:
        hops += [(0, 1, p.J_R), (2, 3, p.J_R)]
    for i, j, J in hops:
        if J == 0:
            continue
        for dst_op, src_op in ((i, j), (j, i)):
            dst, src, vals = hop_pairs(basis, dst_op, src_op)
            for d, s, v in zip(dst, src, vals):
                if int(d) in pos and int(s) in pos:
                    H[pos[int(d)], pos[int(s)]] -= J * v
    return H, [tuple(int(n) for n in occ[k]) for k in idx]


def restrict(H: np.ndarray, states: list, keep: list) -> np.ndarray:
    sel = [states.index(tuple(s)) for s in keep]
    return H[np.ix_(sel, sel)]


def state_vector(basis: FockBasis, amplitudes) -> StateVector:
    return StateVector(basis, np.asarray(amplitudes, dtype=complex))
