"""Small dense linear algebra over ``Fraction`` plus float counterparts."""

from __future__ import annotations

from fractions import Fraction

import numpy as np

RANK_RTOL = 1e-9


def rref(rows):
    """Reduced row echelon form over the rationals; returns ``(rows, pivots)``."""
    m = [[Fraction(x) for x in r] for r in rows]
    if not m:
        return m, []
    ncol = len(m[0])
    pivots = []
    r = 0
    for c in range(ncol):
        piv = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        pv = m[r][c]
        m[r] = [x / pv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def exact_rank(rows) -> int:
    return len(rref(rows)[1])


def exact_nullspace(rows, ncol=None):
    """Basis of ``{x : rows @ x = 0}``, one vector per free column."""
    ncol = len(rows[0]) if rows else ncol
    red, pivots = rref(rows)
    free = [c for c in range(ncol) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncol
        v[f] = Fraction(1)
        for row, p in zip(red, pivots):
            v[p] = -row[f]
        basis.append(v)
    return basis


def float_rank(mat, rtol=RANK_RTOL) -> int:
    a = np.asarray(mat, dtype=complex)
    if a.size == 0:
        return 0
    sv = np.linalg.svd(a, compute_uv=False)
    return int(np.sum(sv > rtol * max(sv[0], 1e-300)))


def float_nullspace(mat, rtol=RANK_RTOL):
    a = np.asarray(mat, dtype=complex)
    _, sv, vh = np.linalg.svd(a)
    rank = int(np.sum(sv > rtol * max(sv[0], 1e-300))) if sv.size else 0
    return [row.conj() for row in vh[rank:]]
