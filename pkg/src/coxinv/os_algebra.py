"""Orlik-Solomon algebra of a reflection arrangement, with its no-broken-circuit basis.

Hyperplanes are the positive roots in root-system order.  A sorted tuple
S = (s_1 < ... < s_k) is an nbc monomial iff it is independent and, for each
i, s_i is the smallest hyperplane containing the flat spanned by s_i..s_k.
Arbitrary monomials are rewritten into that basis through the boundary
relation of a dependent set, and the group acts by permuting hyperplanes.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from .characters import ClassFunction
from .group import Group
from .involutions import InvolutionClass
from .rootsys import RootSystem
from .integral import IntegralRing, integral_vectors

Monomial = tuple[int, ...]


def sort_with_sign(items: Sequence[int]) -> tuple[int, Monomial]:
    """Sorted tuple and the sign of the sorting permutation; sign 0 on repeats."""
    seq = list(items)
    sign = 1
    for i in range(1, len(seq)):
        j = i
        while j > 0 and seq[j - 1] > seq[j]:
            seq[j - 1], seq[j] = seq[j], seq[j - 1]
            sign = -sign
            j -= 1
    for a, b in zip(seq, seq[1:]):
        if a == b:
            return 0, tuple(seq)
    return sign, tuple(seq)


@dataclass
class OSElement:
    """Integer combination of nbc monomials."""

    coeffs: dict[Monomial, int] = field(default_factory=dict)

    def __post_init__(self):
        self.coeffs = {k: v for k, v in self.coeffs.items() if v}

    def __add__(self, other: "OSElement") -> "OSElement":
        out = dict(self.coeffs)
        for k, v in other.coeffs.items():
            out[k] = out.get(k, 0) + v
        return OSElement(out)

    def scale(self, c: int) -> "OSElement":
        return OSElement({k: c * v for k, v in self.coeffs.items()})

    def is_zero(self) -> bool:
        return not self.coeffs

    def degrees(self) -> set[int]:
        return {len(k) for k in self.coeffs}

    def __eq__(self, other) -> bool:
        return isinstance(other, OSElement) and self.coeffs == other.coeffs


# ---------------------------------------------------------------------------
# flats


class ArrangementMatroid:
    """Linear matroid of the reflection hyperplanes, in simple-root coordinates.

    A flat is stored through a basis of its annihilator (linear forms on the
    root span vanishing on the flat's hyperplane normals) and identified by
    the set of hyperplanes it contains.  All arithmetic is exact in Z[g]: the
    hyperplane normals are rescaled to have coefficients there, and the
    annihilator rows are updated fraction-free.
    """

    def __init__(self, rs: RootSystem):
        self.rs = rs
        self.num_hyperplanes = rs.n_pos
        self.rank = rs.rank
        self.ring = IntegralRing(rs.field)
        self._V = integral_vectors([rs.coeffs[i] for i in range(rs.n_pos)])
        bottom = self.ring.identity_basis(self.rank)
        self._flat_index: dict[frozenset, int] = {}
        self.flat_members: list[frozenset] = []
        self.flat_min: list[int] = []
        self.flat_rank: list[int] = []
        self._flat_ann: list[np.ndarray] = []
        self._join_memo: dict[tuple[int, int], int] = {}
        self._reduce_memo: dict[str, dict[Monomial, dict[Monomial, int]]] = {"right": {}, "left": {}}
        self._trace_cache: dict[bytes, list[int]] = {}
        self._intern(bottom, 0)
        self.nbc = self._enumerate_nbc()
        self.nbc_index = {S: i for k in range(len(self.nbc)) for i, S in enumerate(self.nbc[k])}

    # -- flats ----------------------------------------------------------------

    def _members(self, ann: np.ndarray) -> frozenset:
        if len(ann) == 0:
            return frozenset(range(self.num_hyperplanes))
        pair = self.ring.dot_all(ann, self._V)
        return frozenset(int(i) for i in np.nonzero(~pair.any(axis=(0, 2)))[0])

    def _intern(self, ann: np.ndarray, rk: int) -> int:
        members = self._members(ann)
        fid = self._flat_index.get(members)
        if fid is None:
            fid = len(self.flat_members)
            self._flat_index[members] = fid
            self.flat_members.append(members)
            self.flat_min.append(min(members) if members else self.num_hyperplanes)
            self.flat_rank.append(rk)
            self._flat_ann.append(ann)
        return fid

    def join(self, fid: int, h: int) -> int:
        """Flat spanned by flat ``fid`` and hyperplane ``h``."""
        if h in self.flat_members[fid]:
            return fid
        key = (fid, h)
        out = self._join_memo.get(key)
        if out is not None:
            return out
        new = self.ring.cut(self._flat_ann[fid], self._V[h])
        out = self._intern(new, self.flat_rank[fid] + 1)
        self._join_memo[key] = out
        return out

    def closure(self, S: Iterable[int]) -> int:
        fid = 0
        for h in S:
            fid = self.join(fid, h)
        return fid

    def is_independent(self, S: Sequence[int]) -> bool:
        return self.flat_rank[self.closure(S)] == len(S)

    def circuits(self, max_size: int | None = None) -> list[Monomial]:
        """Minimal dependent sets of size up to ``max_size`` (default rank + 1)."""
        from itertools import combinations

        max_size = max_size or self.rank + 1
        out = []
        for k in range(2, max_size + 1):
            for C in combinations(range(self.num_hyperplanes), k):
                if not self.is_independent(C) and all(self.is_independent(C[:i] + C[i + 1 :]) for i in range(k)):
                    out.append(C)
        return out

    # -- nbc basis ------------------------------------------------------------

    def _enumerate_nbc(self) -> list[list[Monomial]]:
        levels: list[list[tuple[Monomial, int]]] = [[((), 0)]]
        for _ in range(self.rank):
            nxt = []
            for tail, fid in levels[-1]:
                top = tail[0] if tail else self.num_hyperplanes
                members = self.flat_members[fid]
                for s in range(top):
                    if s in members:
                        continue
                    f2 = self.join(fid, s)
                    if self.flat_min[f2] == s:
                        nxt.append(((s,) + tail, f2))
            nxt.sort()
            levels.append(nxt)
        return [[S for S, _ in lvl] for lvl in levels]

    def betti(self) -> list[int]:
        return [len(b) for b in self.nbc]

    @property
    def dimension(self) -> int:
        return sum(self.betti())

    # -- reduction ------------------------------------------------------------

    def reduce(self, monomial: Sequence[int], sign: int = 1, strategy: str = "right") -> OSElement:
        """nbc expansion of sign * e_{h_1} ... e_{h_k} (factors in the given order)."""
        s, S = sort_with_sign(monomial)
        if s == 0:
            raise ValueError("repeated hyperplane in monomial")
        return OSElement({k: sign * s * v for k, v in self._reduce_sorted(S, strategy).items()})

    def _reduce_sorted(self, S: Monomial, strategy: str = "right") -> dict[Monomial, int]:
        memo = self._reduce_memo[strategy]
        hit = memo.get(S)
        if hit is not None:
            return hit
        k = len(S)
        fids = [0] * (k + 1)
        for i in range(k - 1, -1, -1):
            if S[i] in self.flat_members[fids[i + 1]]:
                memo[S] = {}
                return memo[S]
            fids[i] = self.join(fids[i + 1], S[i])
        order = range(k - 1, -1, -1) if strategy == "right" else range(k)
        pos = next((i for i in order if self.flat_min[fids[i]] < S[i]), None)
        if pos is None:
            memo[S] = {S: 1}
            return memo[S]
        pivot = S[pos]
        h = self.flat_min[fids[pos]]
        _, D = sort_with_sign(S + (h,))
        p = D.index(h)
        out: dict[Monomial, int] = defaultdict(int)
        for j, d in enumerate(D):
            # removing an element left of the pivot leaves h dependent on the tail
            if j == p or d < pivot:
                continue
            coef = -1 if (j + p) % 2 == 0 else 1
            for key, v in self._reduce_sorted(D[:j] + D[j + 1 :], strategy).items():
                out[key] += coef * v
        res = {key: v for key, v in out.items() if v}
        memo[S] = res
        return res

    # -- group action ---------------------------------------------------------

    def hyperplane_map(self, perm: np.ndarray) -> np.ndarray:
        return np.asarray(perm[: self.num_hyperplanes], dtype=np.int64) % self.num_hyperplanes

    def act(self, perm: np.ndarray, element: OSElement) -> OSElement:
        hmap = self.hyperplane_map(perm)
        out = OSElement()
        for S, c in element.coeffs.items():
            out = out + self.reduce([int(hmap[h]) for h in S], c)
        return out

    def to_vector(self, element: OSElement) -> list[int]:
        vec = [0] * self.dimension
        offsets = np.cumsum([0] + self.betti())
        for S, c in element.coeffs.items():
            vec[int(offsets[len(S)]) + self.nbc_index[S]] = c
        return vec


def build_matroid(rs: RootSystem) -> ArrangementMatroid:
    return ArrangementMatroid(rs)


def reduce(m: ArrangementMatroid, monomial: Sequence[int], sign: int = 1) -> OSElement:
    return m.reduce(monomial, sign)


def action_trace(m: ArrangementMatroid, perm: np.ndarray, k: int) -> int:
    """Trace of an element on the degree-k part, in the nbc basis."""
    hmap = m.hyperplane_map(perm)
    total = 0
    for S in m.nbc[k]:
        s, T = sort_with_sign([int(hmap[h]) for h in S])
        total += s * m._reduce_sorted(T).get(S, 0)
    return total


def graded_traces(m: ArrangementMatroid, perm: np.ndarray) -> list[int]:
    key = np.asarray(perm, dtype=np.int64).tobytes()
    hit = m._trace_cache.get(key)
    if hit is None:
        hit = m._trace_cache[key] = [action_trace(m, perm, k) for k in range(m.rank + 1)]
    return list(hit)


def class_traces(m: ArrangementMatroid, g: Group) -> list[list[int]]:
    """Graded traces at every class representative."""
    return [graded_traces(m, g.elements[r]) for r in g.class_reps]


def total_and_twisted_character(m: ArrangementMatroid, g: Group) -> tuple[ClassFunction, ClassFunction]:
    traces = class_traces(m, g)
    total, twisted = [], []
    for r, tr in zip(g.class_reps, traces):
        eps = int(g.parity[r])
        total.append(sum(tr))
        twisted.append(sum(eps**k * t for k, t in enumerate(tr)))
    return ClassFunction(tuple(total), "H*"), ClassFunction(tuple(twisted), "H*_eps")


def invariant_poincare(m: ArrangementMatroid, g: Group) -> list[int]:
    """Dimensions of the invariant subspaces per degree, by character averaging."""
    traces = class_traces(m, g)
    out = []
    for k in range(m.rank + 1):
        s = sum(size * tr[k] for size, tr in zip(g.class_sizes, traces))
        if s % g.order:
            raise ArithmeticError("invariant dimension is not an integer")
        out.append(s // g.order)
    while len(out) > 1 and out[-1] == 0:
        out.pop()
    return out


def omega(m: ArrangementMatroid, cls: InvolutionClass) -> Monomial:
    """Hyperplanes of the simple roots of the (-1)-eigenspace subsystem."""
    return tuple(sorted(cls.R1_simple))


def symmetrize(m: ArrangementMatroid, g: Group, monomial: Sequence[int], twisted: bool = False) -> OSElement:
    acc: dict[Monomial, int] = defaultdict(int)
    for idx in range(g.order):
        hmap = m.hyperplane_map(g.elements[idx])
        s, T = sort_with_sign([int(hmap[h]) for h in monomial])
        if twisted:
            s *= int(g.parity[idx])
        for key, v in m._reduce_sorted(T).items():
            acc[key] += s * v
    return OSElement(dict(acc))


def symmetrize_omega(m: ArrangementMatroid, g: Group, cls: InvolutionClass) -> OSElement:
    """Sum over the group of g applied to the product of the forms of the R1 simple roots."""
    return symmetrize(m, g, omega(m, cls))


def antisymmetrize(m: ArrangementMatroid, g: Group, monomial: Sequence[int]) -> OSElement:
    return symmetrize(m, g, monomial, twisted=True)


def integer_rank(rows: Sequence[Sequence[int]]) -> int:
    m = [[Fraction(x) for x in r] for r in rows if any(r)]
    rank = 0
    ncols = len(m[0]) if m else 0
    for col in range(ncols):
        piv = next((i for i in range(rank, len(m)) if m[i][col] != 0), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        for i in range(rank + 1, len(m)):
            if m[i][col] != 0:
                f = m[i][col] / m[rank][col]
                m[i] = [a - f * b for a, b in zip(m[i], m[rank])]
        rank += 1
    return rank


@dataclass
class ConjectureReport:
    nonzero: list[bool]
    span_rank: int
    expected: int
    invariant_dim: int

    @property
    def holds(self) -> bool:
        return all(self.nonzero) and self.span_rank == self.expected


def symmetrized_span(m: ArrangementMatroid, g: Group, classes: Sequence[InvolutionClass]) -> ConjectureReport:
    elems = [symmetrize_omega(m, g, c) for c in classes]
    rank = integer_rank([m.to_vector(e) for e in elems])
    return ConjectureReport(
        nonzero=[not e.is_zero() for e in elems],
        span_rank=rank,
        expected=len(classes),
        invariant_dim=sum(invariant_poincare(m, g)),
    )


def lefschetz_numbers(m: ArrangementMatroid, g: Group, per_element: bool = False) -> list[int]:
    """Alternating trace sums, per class representative or per element."""
    if per_element:
        return [sum((-1) ** k * t for k, t in enumerate(graded_traces(m, g.elements[i]))) for i in range(g.order)]
    return [sum((-1) ** k * t for k, t in enumerate(tr)) for tr in class_traces(m, g)]


def lefschetz_vanishing(m: ArrangementMatroid, g: Group, per_element: bool = False) -> bool:
    return all(x == 0 for x in lefschetz_numbers(m, g, per_element))
