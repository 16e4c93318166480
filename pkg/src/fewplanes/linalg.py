"""Exact linear algebra over cyclotomic scalars.

Matrices are lists of rows of Scalars.  Elimination is plain Gaussian
reduction with exact division: every pivot decision is a structural
zero-test, so there is no tolerance anywhere.
"""

from __future__ import annotations

from .cyclotomic import Scalar


def _coerce_row(row):
    return [Scalar.coerce(x) for x in row]


def rref(rows):
    """Reduced row echelon form; returns (rref_rows, pivot_columns)."""
    m = [_coerce_row(r) for r in rows]
    if not m:
        return [], []
    ncols = len(m[0])
    pivots = []
    rank = 0
    for col in range(ncols):
        pivot = next((r for r in range(rank, len(m)) if m[r][col]), None)
        if pivot is None:
            continue
        m[rank], m[pivot] = m[pivot], m[rank]
        inv = m[rank][col].inverse()
        m[rank] = [x * inv for x in m[rank]]
        for r in range(len(m)):
            if r != rank and m[r][col]:
                f = m[r][col]
                m[r] = [x - f * y for x, y in zip(m[r], m[rank])]
        pivots.append(col)
        rank += 1
        if rank == len(m):
            break
    return m, pivots


def rank(rows) -> int:
    return len(rref(rows)[1])


def nullspace(rows, ncols=None):
    """Canonical basis of the right null space.

    Basis vectors are indexed by free columns in ascending order; vector j
    has entry 1 at its free column and 0 at the other free columns.
    """
    rows = list(rows)
    if not rows:
        if ncols is None:
            raise ValueError("ncols required for an empty matrix")
        basis = []
        for j in range(ncols):
            v = [Scalar.zero() for _ in range(ncols)]
            v[j] = Scalar.one()
            basis.append(v)
        return basis
    reduced, pivots = rref(rows)
    ncols = len(reduced[0])
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [Scalar.zero() for _ in range(ncols)]
        v[f] = Scalar.one()
        for r, p in enumerate(pivots):
            v[p] = -reduced[r][f]
        basis.append(v)
    return basis


def left_nullspace(rows):
    transposed = [list(col) for col in zip(*rows)]
    return nullspace(transposed, ncols=len(rows))


def solve(rows, rhs):
    """One exact solution of A x = b, or None when inconsistent."""
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    reduced, pivots = rref(aug)
    ncols = len(rows[0])
    if ncols in pivots:
        return None
    x = [Scalar.zero() for _ in range(ncols)]
    for r, p in enumerate(pivots):
        x[p] = reduced[r][ncols]
    return x


def in_span(vectors, candidate) -> bool:
    base = [list(v) for v in vectors]
    return rank(base) == rank(base + [list(candidate)])


def det(rows) -> Scalar:
    m = [_coerce_row(r) for r in rows]
    n = len(m)
    result = Scalar.one()
    for col in range(n):
        pivot = next((r for r in range(col, n) if m[r][col]), None)
        if pivot is None:
            return Scalar.zero()
        if pivot != col:
            m[col], m[pivot] = m[pivot], m[col]
            result = -result
        result = result * m[col][col]
        inv = m[col][col].inverse()
        for r in range(col + 1, n):
            if m[r][col]:
                f = m[r][col] * inv
                m[r] = [x - f * y for x, y in zip(m[r], m[col])]
    return result
