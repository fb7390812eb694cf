"""Exact rank over Q(zeta_L).

Two independent routes: the regular representation over Z handed to FLINT, and a
hand-written Gaussian elimination on CycNumber entries for small matrices.
"""
from __future__ import annotations

import numpy as np
import flint

from .scalars import CycNumber, companion_powers, power_table, totient


def cyclic_to_field(A: np.ndarray, L: int) -> np.ndarray:
    """Last axis: Z[t]/(t^L - 1) -> power-basis coordinates of Z[zeta_L]."""
    return A @ power_table(L)


def regular_representation(A: np.ndarray, L: int) -> np.ndarray:
    """(r, c, phi) power-basis entries -> (r*phi, c*phi) integer matrix."""
    C = companion_powers(L)  # C[k] = multiplication by zeta^k
    r, c, phi = A.shape
    big = np.einsum("rck,kij->ricj", A, C)
    return big.reshape(r * phi, c * phi)


def rank_cyclotomic(A: np.ndarray, L: int) -> int:
    """Rank over Q(zeta_L) of a matrix whose entries are given in Z[t]/(t^L - 1).

    The regular representation over Q is the direct sum of the phi(L) Galois
    conjugates of A, all of the same rank.
    """
    r, c, _ = A.shape
    if r == 0 or c == 0:
        return 0
    F = cyclotomic_nonzero_trim(cyclotomic_to_dense(A, L))
    if F.shape[0] == 0 or F.shape[1] == 0:
        return 0
    phi = totient(L)
    M = regular_representation(F, L)
    total = flint.fmpz_mat(M.tolist()).rank()
    if total % phi:
        raise ArithmeticError("regular representation rank not divisible by phi(L)")
    return total // phi


def cyclotomic_to_dense(A: np.ndarray, L: int) -> np.ndarray:
    return cyclic_to_field(A, L)


def cyclotomic_nonzero_trim(F: np.ndarray) -> np.ndarray:
    """Drop zero rows and columns (they do not affect the rank)."""
    nz = F.any(axis=2)
    rows = nz.any(axis=1)
    cols = nz.any(axis=0)
    return F[rows][:, cols]


def cyc_matrix_from_dense(F: np.ndarray, L: int) -> list[list[CycNumber]]:
    return [[CycNumber(L, [int(x) for x in F[i, j]]) for j in range(F.shape[1])] for i in range(F.shape[0])]


def rank_gauss(M: list[list[CycNumber]]) -> int:
    """Plain Gaussian elimination over Q(zeta_L)."""
    rows = [list(r) for r in M]
    if not rows:
        return 0
    ncols = len(rows[0])
    rank = 0
    for col in range(ncols):
        piv = next((r for r in range(rank, len(rows)) if not rows[r][col].is_zero()), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        inv = rows[rank][col].inverse()
        prow = [x * inv for x in rows[rank]]
        rows[rank] = prow
        for r in range(len(rows)):
            if r != rank and not rows[r][col].is_zero():
                f = rows[r][col]
                rows[r] = [a - f * b for a, b in zip(rows[r], prow)]
        rank += 1
        if rank == len(rows):
            break
    return rank


def rank_cyclotomic_gauss(A: np.ndarray, L: int) -> int:
    F = cyclotomic_to_dense(A, L)
    return rank_gauss(cyc_matrix_from_dense(F, L))
