"""Coxeter groups as permutation groups on root indices.

An element ``g`` is stored as the integer array ``p`` with
``roots[p[i]] == g(roots[i])``.  Composition is array indexing,
``(g o h)[i] = g[h[i]]``, and an element is determined by the images of the
simple roots, which is what the lookup keys encode.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from . import linalg
from .rootsys import RootSystem
from .scalars import Scalar

DEFAULT_ORDER_CAP = 2_000_000


class OrderCapExceeded(RuntimeError):
    """Enumeration would produce more elements than the configured cap."""


def _encode(images: np.ndarray, base: int) -> np.ndarray:
    """Pack rows of simple-root images into one uint64 key per row."""
    keys = np.zeros(images.shape[0], dtype=np.uint64)
    b = np.uint64(base)
    for col in range(images.shape[1] - 1, -1, -1):
        keys = keys * b + images[:, col].astype(np.uint64)
    return keys


def perm_length(rs: RootSystem, p: np.ndarray) -> int:
    """Number of positive roots sent to negative roots."""
    return int(np.count_nonzero(p[: rs.n_pos] >= rs.n_pos))


def identity_perm(rs: RootSystem) -> np.ndarray:
    return np.arange(rs.num_roots, dtype=np.int64)


def generated_subgroup(generators: Sequence[np.ndarray], degree: int, cap: int = DEFAULT_ORDER_CAP) -> np.ndarray:
    """All elements of the group generated by ``generators`` (breadth-first)."""
    ident = np.arange(degree, dtype=np.int64)
    elems = {ident.tobytes(): ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for x in frontier:
            for s in generators:
                y = x[s]
                k = y.tobytes()
                if k not in elems:
                    elems[k] = y
                    nxt.append(y)
                    if len(elems) > cap:
                        raise OrderCapExceeded(f"subgroup exceeds {cap} elements")
        frontier = nxt
    return np.array(list(elems.values()), dtype=np.int64).reshape(-1, degree)


def longest_element(rs: RootSystem, J: Iterable[int]) -> np.ndarray:
    """Longest element of the parabolic subgroup W_J, by descent.

    Starting from the identity, multiply on the right by s_j while w(alpha_j)
    is positive; this stops exactly at the element sending every positive root
    of the parabolic subsystem to a negative root.
    """
    J = list(J)
    w = identity_perm(rs)
    sp = rs.simple_perms
    changed = True
    while changed:
        changed = False
        for j in J:
            if w[j] < rs.n_pos:
                w = w[sp[j]]
                changed = True
    return w


def matrix_of(p: np.ndarray, rs: RootSystem) -> list[list[Scalar]]:
    """Exact matrix (ambient coordinates) of the element with root permutation ``p``.

    The map is fixed by the images of the simple roots and acts as the identity
    on the orthogonal complement of the span of the roots.
    """
    fld = rs.field
    n, d = rs.rank, rs.ambient_dim
    simple = [rs.roots[i] for i in rs.simple_indices]
    images = [rs.roots[int(p[i])] for i in rs.simple_indices]
    if n < d:
        if rs.gram is None:
            rows = [list(v) for v in simple]
        else:
            rows = [[rs.inner(v, tuple(Scalar.of(fld, int(k == j)) for k in range(d))) for j in range(d)] for v in simple]
        comp = linalg.nullspace(rows)
    else:
        comp = []
    basis = simple + comp
    imgs = images + comp
    bmat = linalg.transpose(basis)
    cmat = linalg.transpose(imgs)
    return linalg.matmul(cmat, linalg.inverse(bmat))


@dataclass(eq=False)
class Group:
    """Full element list of a Coxeter group with lookup, inverses and classes."""

    rs: RootSystem
    elements: np.ndarray
    lengths: np.ndarray
    _sorted_keys: np.ndarray = field(repr=False, default=None)
    _key_order: np.ndarray = field(repr=False, default=None)

    def __post_init__(self):
        keys = self.keys_of(self.elements)
        self._key_order = np.argsort(keys, kind="stable")
        self._sorted_keys = keys[self._key_order]

    # -- lookup -------------------------------------------------------------

    @property
    def order(self) -> int:
        return len(self.elements)

    def keys_of(self, perms: np.ndarray) -> np.ndarray:
        perms = np.atleast_2d(perms)
        return _encode(perms[:, list(self.rs.simple_indices)], self.rs.num_roots)

    def indices_of(self, perms: np.ndarray) -> np.ndarray:
        keys = self.keys_of(perms)
        pos = np.searchsorted(self._sorted_keys, keys)
        pos = np.minimum(pos, len(self._sorted_keys) - 1)
        if not np.array_equal(self._sorted_keys[pos], keys):
            raise KeyError("permutation is not an element of the group")
        return self._key_order[pos]

    def index_of(self, p: np.ndarray) -> int:
        return int(self.indices_of(p[None, :])[0])

    def __getitem__(self, i: int) -> np.ndarray:
        return self.elements[i]

    def mul(self, i: int, j: int) -> int:
        return self.index_of(self.elements[i][self.elements[j]])

    @cached_property
    def inverse_index(self) -> np.ndarray:
        inv = np.argsort(self.elements, axis=1)
        return self.indices_of(inv)

    @cached_property
    def parity(self) -> np.ndarray:
        """epsilon(g) = (-1)^length(g) for every element."""
        return np.where(self.lengths % 2 == 0, 1, -1)

    @cached_property
    def element_orders(self) -> np.ndarray:
        ident = np.arange(self.rs.num_roots)
        orders = np.zeros(self.order, dtype=np.int64)
        cur = self.elements.copy()
        k = 1
        while (orders == 0).any():
            done = (cur == ident).all(axis=1) & (orders == 0)
            orders[done] = k
            cur = np.take_along_axis(self.elements, cur, axis=1)
            k += 1
        return orders

    # -- conjugacy ------------------------------------------------------------

    def conjugates(self, i: int) -> np.ndarray:
        """Indices of g x g^-1 for every g (with repetition)."""
        x = self.elements[i]
        simple = list(self.rs.simple_indices)
        ginv_simple = self.elements[self.inverse_index][:, simple]
        y_simple = np.take_along_axis(self.elements, x[ginv_simple], axis=1)
        keys = _encode(y_simple, self.rs.num_roots)
        pos = np.searchsorted(self._sorted_keys, keys)
        return self._key_order[pos]

    @cached_property
    def _classes(self) -> tuple[np.ndarray, list[np.ndarray]]:
        class_of = np.full(self.order, -1, dtype=np.int64)
        classes = []
        for i in range(self.order):
            if class_of[i] >= 0:
                continue
            orbit = np.unique(self.conjugates(i))
            class_of[orbit] = len(classes)
            classes.append(orbit)
        return class_of, classes

    @property
    def class_of(self) -> np.ndarray:
        return self._classes[0]

    @property
    def classes(self) -> list[np.ndarray]:
        """Conjugacy classes as sorted index arrays; class ``c`` has representative ``classes[c][0]``."""
        return self._classes[1]

    @property
    def num_classes(self) -> int:
        return len(self.classes)

    @cached_property
    def class_sizes(self) -> tuple[int, ...]:
        return tuple(len(c) for c in self.classes)

    @cached_property
    def class_reps(self) -> tuple[int, ...]:
        return tuple(int(c[0]) for c in self.classes)

    def centralizer(self, i: int) -> np.ndarray:
        x = self.elements[i]
        left = self.elements[:, x]  # g o x
        right = x[self.elements]  # x o g
        return np.nonzero((left == right).all(axis=1))[0]

    def parabolic(self, J: Iterable[int]) -> np.ndarray:
        """Indices of the parabolic subgroup generated by the simple reflections in J."""
        gens = [self.rs.simple_perms[j] for j in J]
        return self.indices_of(generated_subgroup(gens, self.rs.num_roots))

    def subgroup_from_reflections(self, root_indices: Iterable[int]) -> np.ndarray:
        gens = [self.rs.reflection_vector_perm(r) for r in root_indices]
        return self.indices_of(generated_subgroup(gens, self.rs.num_roots))

    def longest_in(self, sub: np.ndarray) -> int:
        """Element of maximal length among the indices ``sub``."""
        sub = np.asarray(sub)
        return int(sub[np.argmax(self.lengths[sub])])

    def stats(self) -> dict:
        return {
            "type": str(self.rs.ctype),
            "order": self.order,
            "num_classes": self.num_classes,
            "class_sizes": list(self.class_sizes),
        }


def generate(rs: RootSystem, order_cap: int = DEFAULT_ORDER_CAP) -> Group:
    """Enumerate the group by breadth-first closure over right multiplication by simple reflections.

    Layer k of the search is exactly the set of elements of length k.
    """
    R = rs.num_roots
    gens = np.stack(rs.simple_perms)
    ident = np.arange(R, dtype=np.int64)
    layers = [ident[None, :]]
    layer_keys = [_encode(ident[None, list(rs.simple_indices)], R)]
    total = 1
    simple = list(rs.simple_indices)
    while True:
        cur = layers[-1]
        cand = cur[:, gens].reshape(-1, R)
        keys = _encode(cand[:, simple], R)
        _, first = np.unique(keys, return_index=True)
        first.sort()
        cand, keys = cand[first], keys[first]
        if len(layers) >= 2:
            fresh = ~np.isin(keys, layer_keys[-2])
            cand, keys = cand[fresh], keys[fresh]
        if len(cand) == 0:
            break
        total += len(cand)
        if total > order_cap:
            raise OrderCapExceeded(f"{rs.ctype} has more than {order_cap} elements")
        layers.append(cand)
        layer_keys.append(keys)
    dtype = np.int16 if R < 2**15 else np.int64
    elements = np.concatenate(layers).astype(dtype)
    lengths = np.concatenate([np.full(len(layer), k) for k, layer in enumerate(layers)])
    return Group(rs=rs, elements=elements, lengths=lengths)
