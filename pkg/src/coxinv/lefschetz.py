"""Euler characteristic of the fixed set of an anti-holomorphic involution.

For an involution sigma, the fixed points of z -> sigma(conj z) form the real
space V2 + i V1.  Identifying it with V through the two orthogonal
projections, the root alpha removes {v : (alpha, v) = 0 = (sigma alpha, v)},
a subspace of codimension one or two.  The complement's Euler characteristic
follows from the Moebius function of the intersection poset.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .integral import IntegralRing, integral_vectors
from .rootsys import RootSystem
from .scalars import Scalar

DEFAULT_POSET_CAP = 200_000


class PosetCapExceeded(RuntimeError):
    pass


@dataclass
class SubspacePoset:
    """Intersections of removed subspaces, each identified by the generators containing it.

    Element 0 is the whole space.  Every element is the intersection of the
    generators in ``atoms_below[x]``, so x <= y (y is contained in x) iff that
    set grows.  ``bases[x]`` spans the subspace over Z[g].
    """

    ambient_dim: int
    codims: list[int]
    atoms: list[int]
    atoms_below: list[frozenset] = field(repr=False)
    bases: list[np.ndarray] = field(repr=False, default_factory=list)
    moebius: list[int] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.codims)

    def leq(self, x: int, y: int) -> bool:
        return self.atoms_below[x] <= self.atoms_below[y]


def build_poset(ambient_dim: int, atom_rows: Sequence[Sequence[Sequence[Scalar]]], cap: int = DEFAULT_POSET_CAP) -> SubspacePoset:
    """Intersection closure of the given subspaces, each given by condition rows."""
    if not atom_rows:
        return SubspacePoset(ambient_dim, [0], [], [frozenset()], moebius=[1])
    ring = IntegralRing(atom_rows[0][0][0].field)
    forms = [integral_vectors(rows) for rows in atom_rows]
    flat_forms = np.concatenate(forms)
    owner = np.repeat(np.arange(len(forms)), [len(f) for f in forms])

    def generators_containing(basis: np.ndarray) -> frozenset:
        if len(basis) == 0:
            return frozenset(range(len(forms)))
        vanish = ~ring.dot_all(basis, flat_forms).any(axis=(0, 2))
        bad = set(owner[~vanish].tolist())
        return frozenset(a for a in range(len(forms)) if a not in bad)

    def intersect(basis: np.ndarray, a: int) -> np.ndarray:
        for f in forms[a]:
            basis = ring.cut(basis, f)
        return basis

    index: dict[frozenset, int] = {frozenset(): 0}
    bases = [ring.identity_basis(ambient_dim)]
    below: list[frozenset] = [frozenset()]

    def intern(basis: np.ndarray) -> tuple[int, bool]:
        key = generators_containing(basis)
        if key in index:
            return index[key], False
        index[key] = len(bases)
        bases.append(basis)
        below.append(key)
        if len(bases) > cap:
            raise PosetCapExceeded(f"intersection poset exceeds {cap} elements")
        return index[key], True

    # generators equal as subspaces collapse to one element
    atoms: list[int] = []
    reps: dict[int, int] = {}
    for a in range(len(forms)):
        x, _ = intern(intersect(bases[0], a))
        if x not in reps:
            atoms.append(x)
            reps[x] = a
    queue = list(atoms)
    while queue:
        x = queue.pop()
        for a in atoms:
            if reps[a] in below[x]:
                continue
            y, fresh = intern(intersect(bases[x], reps[a]))
            if fresh:
                queue.append(y)
    # containment reported through the element indices of the generators
    atoms_below = [frozenset(x for x in atoms if reps[x] in b) for b in below]
    poset = SubspacePoset(ambient_dim, [ambient_dim - len(b) for b in bases], atoms, atoms_below, bases)
    poset.moebius = _moebius(poset)
    return poset


def _moebius(p: SubspacePoset) -> list[int]:
    order = sorted(range(len(p)), key=lambda x: (p.codims[x], x))
    mu = [0] * len(p)
    done: list[int] = []
    for y in order:
        if y == 0:
            mu[y] = 1
        else:
            mu[y] = -sum(mu[x] for x in done if p.atoms_below[x] < p.atoms_below[y])
        done.append(y)
    return mu


def removed_subspace(rs: RootSystem, sigma: np.ndarray, alpha: int) -> list[tuple[Scalar, ...]]:
    """Conditions (alpha, v) = (sigma alpha, v) = 0 cutting out the subspace removed for alpha."""
    return [_functional(rs, alpha), _functional(rs, int(sigma[alpha]))]


def _functional(rs: RootSystem, alpha: int) -> tuple[Scalar, ...]:
    """v -> (alpha, v) in simple-root coordinates of v: row of the Gram matrix."""
    c = rs.coeffs[alpha]
    zero = Scalar.of(rs.field, 0)
    simple = [rs.roots[i] for i in rs.simple_indices]
    gram_rows = [[rs.inner(a, b) for b in simple] for a in simple]
    return tuple(sum((c[i] * gram_rows[i][j] for i in range(rs.rank)), zero) for j in range(rs.rank))


def build_fixed_arrangement(rs: RootSystem, sigma: np.ndarray, cap: int = DEFAULT_POSET_CAP) -> SubspacePoset:
    """Poset of the subspaces removed from V2 + i V1 by the complexified hyperplanes."""
    if not np.array_equal(sigma[sigma], np.arange(rs.num_roots)):
        raise ValueError("sigma must be an involution")
    atom_rows = [removed_subspace(rs, sigma, a) for a in range(rs.n_pos)]
    return build_poset(rs.rank, atom_rows, cap)


def fixed_set_euler(p: SubspacePoset) -> int:
    """chi of the open complement: sum of mu(0, x) (-1)^codim(x)."""
    return sum(m * (-1) ** c for m, c in zip(p.moebius, p.codims))


def chamber_count(p: SubspacePoset) -> int:
    """Regions of a real hyperplane arrangement, via Zaslavsky's theorem."""
    if any(p.codims[a] != 1 for a in p.atoms):
        raise ValueError("chamber count needs a hyperplane arrangement")
    return sum(abs(m) for m in p.moebius)


def component_count_special(rs: RootSystem, sigma: np.ndarray, cap: int = DEFAULT_POSET_CAP) -> int:
    """Chambers cut out of V2 + i V1 by the root hyperplanes of R1 and R2."""
    funcs = [_functional(rs, a) for a in range(rs.num_roots)]
    rows = [[funcs[a]] for a in range(rs.n_pos) if int(sigma[a]) in (a, rs.neg(a))]
    return chamber_count(build_poset(rs.rank, rows, cap))
