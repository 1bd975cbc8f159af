"""Gaussian elimination over a prime field on small dense integer matrices."""

from __future__ import annotations

import numpy as np


def rref(matrix: np.ndarray, q: int) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form mod ``q`` and the pivot columns; zero rows dropped."""
    a = np.array(matrix, dtype=np.int64) % q
    rows, cols = a.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(a[r:, c])[0]
        if nz.size == 0:
            continue
        p = r + int(nz[0])
        if p != r:
            a[[r, p]] = a[[p, r]]
        a[r] = a[r] * pow(int(a[r, c]), -1, q) % q
        others = np.nonzero(a[:, c])[0]
        others = others[others != r]
        if others.size:
            a[others] = (a[others] - np.outer(a[others, c], a[r])) % q
        pivots.append(c)
        r += 1
    return a[:r], pivots


def rank(matrix: np.ndarray, q: int) -> int:
    return len(rref(matrix, q)[1])


class RowSpace:
    """Membership oracle for the row space of a matrix over F_q."""

    def __init__(self, matrix: np.ndarray, q: int):
        self.q = q
        self.basis, self.pivots = rref(matrix, q)

    @property
    def dimension(self) -> int:
        return len(self.pivots)

    def __contains__(self, vector) -> bool:
        v = np.asarray(vector, dtype=np.int64) % self.q
        if self.pivots:
            v = (v - v[self.pivots] @ self.basis) % self.q
        return not v.any()
