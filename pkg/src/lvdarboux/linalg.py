"""Exact linear algebra kernels for the Darboux search.

``nullspace`` works on integer matrices with fraction-free (Bareiss)
elimination and only divides when normalizing the final basis.
``batch_rank_mod_p`` is a vectorized rank computation over GF(p) used to
discard candidate systems that have a trivial kernel; since the rank mod p
never exceeds the rank over Q, a full modular rank proves the rational
kernel is trivial.
"""

from __future__ import annotations

from fractions import Fraction
from math import lcm
from typing import Sequence

import numpy as np

PRIME = 2_147_483_647  # 2**31 - 1; products of two residues fit in int64


def integer_rows(rows: Sequence[Sequence[Fraction]]) -> list[list[int]]:
    """Scale each row by the lcm of its denominators (row space unchanged)."""
    out = []
    for row in rows:
        d = lcm(*(Fraction(v).denominator for v in row)) if row else 1
        out.append([int(Fraction(v) * d) for v in row])
    return out


def echelon(rows: list[list[int]]) -> tuple[list[list[int]], list[int]]:
    """Bareiss elimination to row echelon form. Returns (rows, pivot columns)."""
    a = [list(r) for r in rows if any(r)]
    if not a:
        return [], []
    ncols = len(a[0])
    pivots: list[int] = []
    prev = 1
    k = 0
    for col in range(ncols):
        if k == len(a):
            break
        sel = next((i for i in range(k, len(a)) if a[i][col]), None)
        if sel is None:
            continue
        a[k], a[sel] = a[sel], a[k]
        piv = a[k][col]
        for i in range(k + 1, len(a)):
            lead = a[i][col]
            row = a[i]
            prow = a[k]
            for j in range(col, ncols):
                row[j] = (row[j] * piv - lead * prow[j]) // prev
        prev = piv
        pivots.append(col)
        k += 1
    return a[:k], pivots


def rank(rows: list[list[int]]) -> int:
    return len(echelon(rows)[1])


def rref(rows: Sequence[Sequence[Fraction]]) -> list[list[Fraction]]:
    """Reduced row echelon form with monic pivots, zero rows dropped."""
    ech, pivots = echelon(integer_rows(rows))
    red = [[Fraction(v) for v in row] for row in ech]
    for k in range(len(red) - 1, -1, -1):
        col = pivots[k]
        pv = red[k][col]
        red[k] = [v / pv for v in red[k]]
        for i in range(k):
            f = red[i][col]
            if f:
                red[i] = [x - f * y for x, y in zip(red[i], red[k])]
    return red


def nullspace(rows: list[list[int]], ncols: int) -> list[list[Fraction]]:
    """Kernel basis of an integer matrix, returned in RREF (monic pivots)."""
    red = rref(rows) if rows else []
    pivots = [next(j for j, v in enumerate(row) if v) for row in red]
    free = [j for j in range(ncols) if j not in set(pivots)]
    basis = []
    for fcol in free:
        v = [Fraction(0)] * ncols
        v[fcol] = Fraction(1)
        for row, pcol in zip(red, pivots):
            v[pcol] = -row[fcol]
        basis.append(v)
    return rref(basis) if basis else []


def batch_rank_mod_p(mats: np.ndarray, p: int = PRIME) -> np.ndarray:
    """Ranks over GF(p) of a stack of integer matrices with shape (K, R, C)."""
    a = np.mod(np.asarray(mats, dtype=np.int64), p)
    K, R, C = a.shape
    ranks = np.zeros(K, dtype=np.int64)
    idx = np.arange(K)
    rows = np.arange(R)
    for col in range(C):
        eligible = (a[:, :, col] != 0) & (rows[None, :] >= ranks[:, None])
        has = eligible.any(axis=1)
        if not has.any():
            continue
        sel = np.argmax(eligible, axis=1)
        k = idx[has]
        rk = ranks[has]
        src = sel[has]
        tmp = a[k, rk, :].copy()
        a[k, rk, :] = a[k, src, :]
        a[k, src, :] = tmp
        pivot_rows = a[idx, np.minimum(ranks, R - 1), :]
        piv = pivot_rows[:, col]
        below = (rows[None, :] > ranks[:, None]) & has[:, None]
        lead = a[:, :, col]
        upd = (a * piv[:, None, None] - lead[:, :, None] * pivot_rows[:, None, :]) % p
        a = np.where(below[:, :, None], upd, a)
        ranks = ranks + has
    return ranks
