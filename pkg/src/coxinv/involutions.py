"""Involutions: Richardson normal forms, the (-1)-condition and special involutions.

Every involution is conjugate to the longest element sigma_J of a parabolic
subgroup W_J whose longest element acts as -Id on span(J).  An involution with
(-1)-eigenspace V1 and (+1)-eigenspace V2 is *special* when every root has a
non-zero projection onto V1 or V2 proportional to a root lying in that
eigenspace.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Sequence

import numpy as np

from . import linalg
from .group import Group, identity_perm, longest_element, matrix_of
from .rootsys import CoxeterType, RootSystem, classify, perm_order
from .scalars import Scalar


class NotAnInvolution(ValueError):
    pass


def _check_involution(rs: RootSystem, sigma: np.ndarray) -> None:
    if not np.array_equal(sigma[sigma], np.arange(rs.num_roots)):
        raise NotAnInvolution("element does not square to the identity")


# ---------------------------------------------------------------------------
# (-1)-condition


def subgraph_types(rs: RootSystem, J: Iterable[int]) -> list[tuple[CoxeterType, list[int]]]:
    return classify(sorted(J), rs.coxeter_matrix)


def minus_one_condition(rs: RootSystem, group: Group | None, J: Iterable[int]) -> bool:
    """Whether the longest element of W_J acts as -Id on span(J).

    Two independent routes are evaluated and must agree: the descent-computed
    longest element, and the component types of the Coxeter subgraph checked
    against the list of irreducible types whose longest element is -Id.
    With ``group`` given, the longest element is also taken by maximal length
    over the enumerated parabolic subgroup.
    """
    J = sorted(set(J))
    w0 = longest_element(rs, J)
    direct = all(int(w0[j]) == rs.neg(j) for j in J)
    by_type = all(t.minus_one_allowed() for t, _ in subgraph_types(rs, J))
    if group is not None:
        sub = group.parabolic(J)
        w0_enum = group.elements[group.longest_in(sub)]
        if not np.array_equal(w0_enum, w0):
            raise RuntimeError(f"longest element mismatch for J={J}")
    if direct != by_type:
        raise RuntimeError(f"(-1)-condition routes disagree for J={J}")
    return direct


def sigma_J(rs: RootSystem, J: Iterable[int]) -> np.ndarray:
    return longest_element(rs, sorted(J))


def admissible_subsets(rs: RootSystem) -> list[tuple[int, ...]]:
    """All J satisfying the (-1)-condition, ordered by size then lexicographically."""
    out = []
    for k in range(rs.rank + 1):
        for J in combinations(range(rs.rank), k):
            if minus_one_condition(rs, None, J):
                out.append(J)
    return out


# ---------------------------------------------------------------------------
# eigenspace data


def root_subsystem_simple(rs: RootSystem, members: Sequence[int]) -> list[int]:
    """Simple roots of the positive part of a root subsystem.

    A positive root b of the subsystem is simple exactly when its reflection
    permutes the remaining positive roots of the subsystem.
    """
    pos = sorted(i for i in members if rs.is_positive(i))
    pos_set = set(pos)
    out = []
    for b in pos:
        perm = rs.reflection_vector_perm(b)
        rest = pos_set - {b}
        if all(int(perm[i]) in rest for i in rest):
            out.append(b)
    return out


def subsystem_types(rs: RootSystem, simple: Sequence[int]) -> list[CoxeterType]:
    mat = {}
    for a in simple:
        for b in simple:
            if a == b:
                mat[(a, b)] = 1
            else:
                pa, pb = rs.reflection_vector_perm(a), rs.reflection_vector_perm(b)
                mat[(a, b)] = perm_order(pa[pb])

    class _M:
        def __getitem__(self, a):
            return {b: mat[(a, b)] for b in simple}

    return sorted(t for t, _ in classify(list(simple), _M()))


def _types_order(types: Sequence[CoxeterType]) -> int:
    out = 1
    for t in types:
        out *= t.order
    return out


def type_label(types: Sequence[CoxeterType]) -> str:
    return "+".join(str(t) for t in types) if types else "trivial"


def minus_eigenspace_dim(rs: RootSystem, sigma: np.ndarray) -> int:
    """dim ker(M + I), computed by exact elimination on the matrix of sigma."""
    m = matrix_of(sigma, rs)
    one = Scalar.of(rs.field, 1)
    shifted = [[x + one if i == j else x for j, x in enumerate(row)] for i, row in enumerate(m)]
    return len(linalg.nullspace(shifted))


def is_special(rs: RootSystem, sigma: np.ndarray) -> bool:
    """Projection test for special involutions.

    For each root a, the projections onto V1 and V2 are (a - sigma a)/2 and
    (a + sigma a)/2.  The root passes when one of them is non-zero and
    parallel to a root of R1 = R cap V1 (resp. R2 = R cap V2).
    """
    _check_involution(rs, sigma)
    n = rs.num_roots
    c = rs.coeffs
    r1 = {linalg.normalize_direction(c[i]) for i in range(n) if int(sigma[i]) == rs.neg(i)}
    r2 = {linalg.normalize_direction(c[i]) for i in range(n) if int(sigma[i]) == i}
    for i in range(rs.n_pos):
        j = int(sigma[i])
        if j == i or j == rs.neg(i):
            continue
        a, b = c[i], c[j]
        d1 = linalg.normalize_direction([x - y for x, y in zip(a, b)])
        if d1 is not None and d1 in r1:
            continue
        d2 = linalg.normalize_direction([x + y for x, y in zip(a, b)])
        if d2 is not None and d2 in r2:
            continue
        return False
    return True


@dataclass
class InvolutionClass:
    """A conjugacy class of involutions with its Richardson data."""

    representative: np.ndarray
    J: tuple[int, ...]
    dim_minus: int
    parity: str
    R1_type: tuple[str, ...]
    R2_type: tuple[str, ...]
    special: bool
    G1_order: int
    G2_order: int
    R1: tuple[int, ...] = field(repr=False, default=())
    R2: tuple[int, ...] = field(repr=False, default=())
    R1_simple: tuple[int, ...] = field(repr=False, default=())
    class_index: int | None = None
    size: int | None = None
    admissible_J: tuple[tuple[int, ...], ...] = ()
    consistent: bool = True

    @property
    def is_identity(self) -> bool:
        return len(self.J) == 0

    def to_json(self) -> dict:
        return {
            "J": [j + 1 for j in self.J],
            "dim_minus": self.dim_minus,
            "parity": self.parity,
            "R1_type": list(self.R1_type),
            "R2_type": list(self.R2_type),
            "special": self.special,
            "G1_order": self.G1_order,
            "G2_order": self.G2_order,
            "class_index": self.class_index,
            "class_size": self.size,
        }


def describe(rs: RootSystem, sigma: np.ndarray, J: Sequence[int]) -> InvolutionClass:
    _check_involution(rs, sigma)
    n = rs.num_roots
    R1 = tuple(i for i in range(n) if int(sigma[i]) == rs.neg(i))
    R2 = tuple(i for i in range(n) if int(sigma[i]) == i)
    s1 = root_subsystem_simple(rs, R1)
    s2 = root_subsystem_simple(rs, R2)
    t1 = subsystem_types(rs, s1)
    t2 = subsystem_types(rs, s2)
    dim_minus = len(J)
    return InvolutionClass(
        representative=sigma,
        J=tuple(J),
        dim_minus=dim_minus,
        parity="even" if dim_minus % 2 == 0 else "odd",
        R1_type=tuple(str(t) for t in t1),
        R2_type=tuple(str(t) for t in t2),
        special=is_special(rs, sigma),
        G1_order=_types_order(t1),
        G2_order=_types_order(t2),
        R1=R1,
        R2=R2,
        R1_simple=tuple(s1),
    )


def involution_mask(g: Group) -> np.ndarray:
    sq = np.take_along_axis(g.elements, g.elements, axis=1)
    return (sq == np.arange(g.rs.num_roots)).all(axis=1)


def richardson_classes(g: Group, rs: RootSystem | None = None) -> list[InvolutionClass]:
    """One record per conjugacy class of involutions (identity included), full enumeration.

    Each class is matched with every admissible J whose sigma_J lies in it; a
    class without any J would contradict Richardson's theorem and raises.
    """
    rs = rs or g.rs
    inv_classes = sorted(set(int(c) for c in g.class_of[involution_mask(g)]))
    found: dict[int, list[tuple[int, ...]]] = {c: [] for c in inv_classes}
    for J in admissible_subsets(rs):
        idx = g.index_of(sigma_J(rs, J))
        found[int(g.class_of[idx])].append(J)
    missing = [c for c, js in found.items() if not js]
    if missing:
        raise RuntimeError(f"involution classes without a Richardson form: {missing}")
    out = []
    for c in inv_classes:
        Js = sorted(found[c])
        J = Js[0]
        rec = describe(rs, sigma_J(rs, J), J)
        rec.class_index = c
        rec.size = g.class_sizes[c]
        rec.admissible_J = tuple(Js)
        out.append(rec)
    return out


def invariant_tuple(rs: RootSystem, J: Sequence[int]) -> tuple:
    """Conjugation invariant used to identify classes without enumerating the group."""
    comps = []
    for t, nodes in subgraph_types(rs, J):
        norms = tuple(sorted((rs.norm2(j) for j in nodes), key=lambda s: (float(s), str(s))))
        comps.append((str(t), tuple(str(x) for x in norms)))
    return (len(J), tuple(sorted(comps)))


def rootspace_classes(rs: RootSystem) -> list[InvolutionClass]:
    """Involution classes identified by invariant tuples; no element list is built.

    Records whose J's disagree on specialness are flagged ``consistent=False``.
    """
    groups: dict[tuple, list[tuple[int, ...]]] = {}
    for J in admissible_subsets(rs):
        groups.setdefault(invariant_tuple(rs, J), []).append(J)
    out = []
    for key in sorted(groups, key=lambda k: (k[0], min(groups[k]))):
        Js = sorted(groups[key])
        recs = [describe(rs, sigma_J(rs, J), J) for J in Js]
        rec = recs[0]
        rec.admissible_J = tuple(Js)
        rec.consistent = len({r.special for r in recs}) == 1 and len({(r.R1_type, r.R2_type) for r in recs}) == 1
        rec.special = any(r.special for r in recs)
        out.append(rec)
    return out


@dataclass
class SpecialSet:
    classes: list[InvolutionClass]
    even: list[InvolutionClass]
    odd: list[InvolutionClass]
    mode: str

    def __len__(self) -> int:
        return len(self.classes)


def special_set(g: Group | None, rs: RootSystem) -> SpecialSet:
    """X_G split by parity; ``g=None`` selects rootspace mode."""
    classes = richardson_classes(g, rs) if g is not None else rootspace_classes(rs)
    special = [c for c in classes if c.special]
    return SpecialSet(
        classes=special,
        even=[c for c in special if c.parity == "even"],
        odd=[c for c in special if c.parity == "odd"],
        mode="full" if g is not None else "rootspace",
    )


def verify_centralizer_product(g: Group, cls: InvolutionClass) -> bool:
    """Whether C(sigma) equals the internal direct product G1 x G2."""
    rs = g.rs
    sigma = g.index_of(cls.representative)
    cent = set(int(x) for x in g.centralizer(sigma))
    pos1 = [i for i in cls.R1 if rs.is_positive(i)]
    pos2 = [i for i in cls.R2 if rs.is_positive(i)]
    g1 = g.subgroup_from_reflections(pos1) if pos1 else np.array([g.index_of(identity_perm(rs))])
    g2 = g.subgroup_from_reflections(pos2) if pos2 else np.array([g.index_of(identity_perm(rs))])
    if len(g1) * len(g2) != len(cent):
        return False
    e2 = g.elements[g2]
    products = set()
    for a in g1:
        ea = g.elements[a]
        ab = ea[e2]  # a o b for every b
        ba = np.take_along_axis(e2, np.broadcast_to(ea, e2.shape), axis=1)  # b o a
        if not np.array_equal(ab, ba):
            return False
        products.update(int(x) for x in g.indices_of(ab))
    return products == cent
