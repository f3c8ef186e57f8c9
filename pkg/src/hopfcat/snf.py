"""Smith normal form over the integers, with unimodular transforms.

Matrices are numpy arrays of dtype ``object`` holding Python ints, so the
arithmetic is exact regardless of intermediate growth.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np


def int_matrix(rows, shape: tuple | None = None) -> np.ndarray:
    if shape is not None and (shape[0] == 0 or shape[1] == 0):
        return np.zeros(shape, dtype=object)
    a = np.array(rows, dtype=object)
    if a.ndim != 2:
        raise ValueError("expected a 2-dimensional matrix")
    return a


def identity(n: int) -> np.ndarray:
    a = np.zeros((n, n), dtype=object)
    for i in range(n):
        a[i, i] = 1
    return a


@dataclass
class SmithForm:
    """``U @ M @ V == D`` with D diagonal; ``diagonal`` holds the nonzero entries."""

    diagonal: list
    U: np.ndarray
    U_inv: np.ndarray
    V: np.ndarray
    V_inv: np.ndarray

    @property
    def rank(self) -> int:
        return len(self.diagonal)

    def matrix(self, shape) -> np.ndarray:
        D = np.zeros(shape, dtype=object)
        for i, d in enumerate(self.diagonal):
            D[i, i] = d
        return D


def smith_normal_form(M) -> SmithForm:
    A = np.array(M, dtype=object, copy=True)
    if A.ndim != 2:
        raise ValueError("expected a 2-dimensional matrix")
    m, n = A.shape
    U, Ui, V, Vi = identity(m), identity(m), identity(n), identity(n)

    def swap_rows(i, j):
        if i != j:
            A[[i, j]] = A[[j, i]]
            U[[i, j]] = U[[j, i]]
            Ui[:, [i, j]] = Ui[:, [j, i]]

    def swap_cols(i, j):
        if i != j:
            A[:, [i, j]] = A[:, [j, i]]
            V[:, [i, j]] = V[:, [j, i]]
            Vi[[i, j]] = Vi[[j, i]]

    def add_row(i, t, q):  # row_i += q * row_t
        A[i] += q * A[t]
        U[i] += q * U[t]
        Ui[:, t] -= q * Ui[:, i]

    def add_col(j, t, q):  # col_j += q * col_t
        A[:, j] += q * A[:, t]
        V[:, j] += q * V[:, t]
        Vi[t] -= q * Vi[j]

    diagonal = []
    for t in range(min(m, n)):
        sub = A[t:, t:]
        nz = np.argwhere(sub != 0)
        if len(nz) == 0:
            break
        best = min(nz, key=lambda ij: abs(sub[ij[0], ij[1]]))
        swap_rows(t, t + best[0])
        swap_cols(t, t + best[1])
        while True:
            p = A[t, t]
            for i in np.nonzero(A[t + 1:, t] != 0)[0] + t + 1:
                add_row(i, t, -(A[i, t] // p))
            for j in np.nonzero(A[t, t + 1:] != 0)[0] + t + 1:
                add_col(j, t, -(A[t, j] // p))
            rest_col = np.nonzero(A[t + 1:, t] != 0)[0]
            rest_row = np.nonzero(A[t, t + 1:] != 0)[0]
            if len(rest_col) or len(rest_row):
                cands = [(abs(A[i + t + 1, t]), 0, i + t + 1) for i in rest_col]
                cands += [(abs(A[t, j + t + 1]), 1, j + t + 1) for j in rest_row]
                _, axis, k = min(cands)
                if axis == 0:
                    swap_rows(t, k)
                else:
                    swap_cols(t, k)
                continue
            if abs(p) != 1:
                bad = np.argwhere(A[t + 1:, t + 1:] % p != 0)
                if len(bad):
                    add_row(t, bad[0][0] + t + 1, 1)
                    continue
            break
        if A[t, t] < 0:
            A[t] = -A[t]
            U[t] = -U[t]
            Ui[:, t] = -Ui[:, t]
        diagonal.append(A[t, t])
    return SmithForm([int(d) for d in diagonal], U, Ui, V, Vi)


def invariant_factors(M) -> list:
    return smith_normal_form(M).diagonal
