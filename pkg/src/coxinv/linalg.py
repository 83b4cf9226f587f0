"""Small exact linear algebra over :class:`~coxinv.scalars.Scalar` entries.

Matrices are lists of rows.  Everything here is plain Gaussian elimination;
the matrices that occur are at most 8 x 8 (plus a handful of extra rows).
"""

from __future__ import annotations

from typing import Sequence

from .scalars import Field, Scalar

Matrix = list[list[Scalar]]
Vector = tuple[Scalar, ...]


def zero(fld: Field) -> Scalar:
    return Scalar.of(fld, 0)


def one(fld: Field) -> Scalar:
    return Scalar.of(fld, 1)


def identity(fld: Field, n: int) -> Matrix:
    return [[one(fld) if i == j else zero(fld) for j in range(n)] for i in range(n)]


def matmul(a: Sequence[Sequence[Scalar]], b: Sequence[Sequence[Scalar]]) -> Matrix:
    cols = list(zip(*b))
    return [[sum((x * y for x, y in zip(row, col)), zero(row[0].field)) for col in cols] for row in a]


def matvec(a: Sequence[Sequence[Scalar]], v: Sequence[Scalar]) -> Vector:
    return tuple(sum((x * y for x, y in zip(row, v)), zero(v[0].field)) for row in a)


def transpose(a: Sequence[Sequence[Scalar]]) -> Matrix:
    return [list(col) for col in zip(*a)]


def rref(rows: Sequence[Sequence[Scalar]]) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form with zero rows dropped.  Canonical for the row space."""
    m = [list(r) for r in rows]
    if not m:
        return [], []
    ncols = len(m[0])
    pivots: list[int] = []
    r = 0
    for col in range(ncols):
        piv = next((i for i in range(r, len(m)) if not m[i][col].is_zero()), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = m[r][col].inverse()
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and not m[i][col].is_zero():
                f = m[i][col]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(col)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def rank(rows: Sequence[Sequence[Scalar]]) -> int:
    return len(rref(rows)[1])


def nullspace(a: Sequence[Sequence[Scalar]], ncols: int | None = None, fld: Field | None = None) -> list[Vector]:
    """Basis of {x : a x = 0}."""
    if not a:
        if ncols is None or fld is None:
            raise ValueError("empty matrix needs ncols and field")
        return [tuple(one(fld) if i == j else zero(fld) for i in range(ncols)) for j in range(ncols)]
    red, pivots = rref(a)
    n = len(a[0])
    f = a[0][0].field
    free = [j for j in range(n) if j not in pivots]
    basis = []
    for fcol in free:
        v = [zero(f)] * n
        v[fcol] = one(f)
        for row, pcol in zip(red, pivots):
            v[pcol] = -row[fcol]
        basis.append(tuple(v))
    return basis


def solve(a: Sequence[Sequence[Scalar]], b: Sequence[Scalar]) -> Vector:
    """Unique solution of a x = b for square invertible a."""
    n = len(a)
    aug = [list(row) + [bi] for row, bi in zip(a, b)]
    red, pivots = rref(aug)
    if pivots != list(range(n)):
        raise ValueError("matrix is singular")
    return tuple(row[n] for row in red)


def inverse(a: Sequence[Sequence[Scalar]]) -> Matrix:
    n = len(a)
    f = a[0][0].field
    aug = [list(row) + idrow for row, idrow in zip(a, identity(f, n))]
    red, pivots = rref(aug)
    if pivots[:n] != list(range(n)) or len(pivots) < n:
        raise ValueError("matrix is singular")
    return [row[n:] for row in red]


def det(a: Sequence[Sequence[Scalar]]) -> Scalar:
    m = [list(r) for r in a]
    n = len(m)
    f = m[0][0].field
    out = one(f)
    for col in range(n):
        piv = next((i for i in range(col, n) if not m[i][col].is_zero()), None)
        if piv is None:
            return zero(f)
        if piv != col:
            m[col], m[piv] = m[piv], m[col]
            out = -out
        p = m[col][col]
        out = out * p
        inv = p.inverse()
        for i in range(col + 1, n):
            if not m[i][col].is_zero():
                factor = m[i][col] * inv
                m[i] = [x - factor * y for x, y in zip(m[i], m[col])]
    return out


def normalize_direction(v: Sequence[Scalar]) -> Vector | None:
    """Scale ``v`` so its first non-zero entry is 1; ``None`` for the zero vector."""
    lead = next((x for x in v if not x.is_zero()), None)
    if lead is None:
        return None
    inv = lead.inverse()
    return tuple(x * inv for x in v)
