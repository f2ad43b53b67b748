"""Matrix permanents and the multiphoton amplitudes built from them."""

from __future__ import annotations

from functools import lru_cache
from itertools import permutations
from math import factorial, prod
from typing import Sequence

import numpy as np

NAIVE_LIMIT = 10
RYSER_LIMIT = 30


def _square(M) -> np.ndarray:
    M = np.asarray(M, dtype=complex)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise ValueError(f"permanent needs a square matrix, got shape {M.shape}")
    return M


@lru_cache(maxsize=None)
def _perm_table(n: int) -> np.ndarray:
    return np.array(list(permutations(range(n))), dtype=np.int8).reshape(-1, n)


def permanent_naive(M) -> complex:
    """Sum over the full symmetric group S_n of prod_i M[i, sigma(i)]."""
    M = _square(M)
    n = M.shape[0]
    if n > NAIVE_LIMIT:
        raise ValueError(f"permanent_naive is limited to n <= {NAIVE_LIMIT}, got n = {n}")
    if n == 0:
        return 1.0 + 0j
    if n > 8:
        # expand along the first row so the permutation table stays small
        rest = np.arange(1, n)
        return complex(sum(M[0, j] * permanent_naive(M[np.ix_(rest, np.delete(np.arange(n), j))])
                           for j in range(n)))
    perms = _perm_table(n)
    return complex(np.prod(M[np.arange(n), perms], axis=1).sum())


def permanent_ryser(M) -> complex:
    """Ryser's inclusion-exclusion formula with Gray-code subset order, O(2^n n)."""
    M = _square(M)
    n = M.shape[0]
    if n > RYSER_LIMIT:
        raise ValueError(f"permanent_ryser is limited to n <= {RYSER_LIMIT}, got n = {n}")
    if n == 0:
        return 1.0 + 0j
    row_sums = np.zeros(n, dtype=complex)
    in_set = np.zeros(n, dtype=bool)
    total = 0j
    sign = 1
    for k in range(1, 1 << n):
        j = (k & -k).bit_length() - 1
        if in_set[j]:
            row_sums -= M[:, j]
        else:
            row_sums += M[:, j]
        in_set[j] = not in_set[j]
        sign = -sign
        total += sign * np.prod(row_sums)
    return complex((-1) ** n * total)


def permanent(M) -> complex:
    M = _square(M)
    n = M.shape[0]
    if n == 0:
        return 1.0 + 0j
    if n == 1:
        return complex(M[0, 0])
    if n == 2:
        return complex(M[0, 0] * M[1, 1] + M[0, 1] * M[1, 0])
    if n == 3:
        return complex(
            M[0, 0] * (M[1, 1] * M[2, 2] + M[1, 2] * M[2, 1])
            + M[0, 1] * (M[1, 0] * M[2, 2] + M[1, 2] * M[2, 0])
            + M[0, 2] * (M[1, 0] * M[2, 1] + M[1, 1] * M[2, 0])
        )
    return permanent_ryser(M)


def subpermanent(M, delete_row: int, delete_col: int) -> complex:
    """Permanent of ``M`` with one row and one column removed (zero-based indices)."""
    M = _square(M)
    n = M.shape[0]
    if n < 2:
        raise ValueError("subpermanent needs n >= 2")
    if not (0 <= delete_row < n and 0 <= delete_col < n):
        raise IndexError(f"({delete_row}|{delete_col}) out of range for n = {n}")
    minor = np.delete(np.delete(M, delete_row, axis=0), delete_col, axis=1)
    return permanent(minor)


def repeated_index_matrix(L, n_out: Sequence[int], n_in: Sequence[int]) -> np.ndarray:
    """Row k of ``L`` repeated n_out[k] times, column i repeated n_in[i] times."""
    L = np.asarray(L)
    rows = np.repeat(np.arange(L.shape[0]), n_out)
    cols = np.repeat(np.arange(L.shape[1]), n_in)
    return L[np.ix_(rows, cols)]


def transition_amplitude(L, n_in: Sequence[int], n_out: Sequence[int]) -> complex:
    """<n_out| U(L) |n_in> for the mode transformation a_i^dag -> sum_k L[k, i] a_k^dag.

    Works for any square matrix ``L``; for unitary ``L`` it is the Fock-space
    matrix element of the interferometer.
    """
    L = np.asarray(L, dtype=complex)
    n_in = [int(n) for n in n_in]
    n_out = [int(n) for n in n_out]
    if len(n_in) != L.shape[1] or len(n_out) != L.shape[0]:
        raise ValueError(f"occupation lengths {len(n_out)}, {len(n_in)} do not match matrix {L.shape}")
    if sum(n_in) != sum(n_out):
        raise ValueError(f"photon number mismatch: {sum(n_in)} in, {sum(n_out)} out")
    if sum(n_in) == 0:
        return 1.0 + 0j
    norm = np.sqrt(float(prod(factorial(n) for n in n_in) * prod(factorial(n) for n in n_out)))
    return permanent(repeated_index_matrix(L, n_out, n_in)) / norm
