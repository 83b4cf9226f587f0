"""Exact linear algebra over Z[g], the ring generated by a field's integral generator.

Vectors are int64 arrays whose trailing axis holds power-basis coefficients.
Subspaces are kept as bases updated fraction-free, so no rational arithmetic
happens in the inner loops.
"""

from __future__ import annotations

from math import gcd
from typing import Sequence

import numpy as np

from .scalars import Field, Scalar, _reduction_table

GROWTH_LIMIT = 2**40


class IntegralRing:
    """Z[g] for a generator g with monic integer minimal polynomial, elements as int arrays.

    An element is the trailing axis of length ``degree`` holding power-basis
    coefficients; products fold x^k back through the minimal polynomial.
    """

    def __init__(self, fld: Field):
        self.degree = fld.degree
        table = _reduction_table(fld)
        if any(x.denominator != 1 for row in table for x in row):
            raise ValueError(f"minimal polynomial of {fld} is not monic over the integers")
        d = self.degree
        fold = np.zeros((d, d, d), dtype=np.int64)
        for i in range(d):
            for j in range(d):
                fold[i, j] = [int(x) for x in table[i + j]]
        self.fold = fold

    def mul(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        """Elementwise product of two broadcastable element arrays."""
        outer = a[..., :, None] * b[..., None, :]
        return np.einsum("...ij,ijl->...l", outer, self.fold)

    def dot_all(self, rows: np.ndarray, vecs: np.ndarray) -> np.ndarray:
        """rows (r, n, d) against vecs (N, n, d): pairings (r, N, d)."""
        outer = np.einsum("rki,hkj->rhij", rows, vecs)
        return np.einsum("rhij,ijl->rhl", outer, self.fold)

    def identity_basis(self, n: int) -> np.ndarray:
        basis = np.zeros((n, n, self.degree), dtype=np.int64)
        for i in range(n):
            basis[i, i, 0] = 1
        return basis

    def cut(self, basis: np.ndarray, form: np.ndarray) -> np.ndarray:
        """Basis of {v in span(basis) : form . v = 0}; unchanged if the form vanishes there."""
        vals = self.dot_all(basis, form[None])[:, 0, :]  # (r, d)
        nz = np.nonzero(vals.any(axis=1))[0]
        if len(nz) == 0:
            return basis
        p = int(nz[0])
        rows = [primitive(self.mul(vals[p][None, :], basis[i]) - self.mul(vals[i][None, :], basis[p])) for i in range(len(basis)) if i != p]
        new = np.array(rows, dtype=np.int64).reshape(len(rows), *basis.shape[1:])
        if new.size and np.abs(new).max() > GROWTH_LIMIT:
            raise ArithmeticError("coefficient growth in exact elimination")
        return new


def primitive(row: np.ndarray) -> np.ndarray:
    """Divide by the content and fix the sign of the first non-zero coefficient."""
    flat = row.reshape(-1)
    nz = np.nonzero(flat)[0]
    if len(nz) == 0:
        return row
    g = 0
    for x in flat[nz]:
        g = gcd(g, int(x))
    row = row // g
    return -row if flat[nz[0]] < 0 else row


def integral_vectors(vecs: Sequence[Sequence[Scalar]]) -> np.ndarray:
    """Coefficient arrays (N, n, d), each vector rescaled to clear denominators."""
    out = []
    for v in vecs:
        den = 1
        for x in v:
            for c in x.c:
                den = den * c.denominator // gcd(den, c.denominator)
        out.append([[int(c * den) for c in x.c] for x in v])
    return np.array(out, dtype=np.int64)
