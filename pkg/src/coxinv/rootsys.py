"""Root systems of the irreducible finite Coxeter types.

Crystallographic types use the usual orthonormal coordinates (A_n lives in the
sum-zero hyperplane of an (n+1)-dimensional space).  H_3, H_4 and the dihedral
types are realised in simple-root coordinates together with a Gram matrix over
the appropriate field.

Roots are ordered once and for all: positive roots first (simple roots in
node order, then by height and reverse-lexicographic coefficients), followed by
their negatives in the same order, so that ``-roots[i] == roots[(i + N) % 2N]``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import combinations
from typing import Sequence

import numpy as np

from .scalars import Field, Scalar, cosine_field, quadratic_field, rational_field, two_cos_pi_over

Vector = tuple[Scalar, ...]

_DEGREES = {
    "E6": (2, 5, 6, 8, 9, 12),
    "E7": (2, 6, 8, 10, 12, 14, 18),
    "E8": (2, 8, 12, 14, 18, 20, 24, 30),
    "F4": (2, 6, 8, 12),
    "H3": (2, 6, 10),
    "H4": (2, 12, 20, 30),
}


class InvalidType(ValueError):
    pass


@dataclass(frozen=True, order=True)
class CoxeterType:
    family: str
    rank: int
    m: int | None = None

    def __post_init__(self):
        f, n = self.family, self.rank
        ok = {
            "A": n >= 1,
            "B": n >= 1,
            "D": n >= 2,
            "E": n in (6, 7, 8),
            "F": n == 4,
            "H": n in (3, 4),
            "I": n == 2 and self.m is not None and self.m >= 3,
        }.get(f, False)
        if not ok:
            raise InvalidType(f"invalid Coxeter type {f}{n}" + (f"({self.m})" if self.m else ""))
        if f != "I" and self.m is not None:
            raise InvalidType("dihedral order only applies to family I")

    @classmethod
    def parse(cls, text: str) -> "CoxeterType":
        s = text.strip().replace(" ", "")
        mt = re.fullmatch(r"I2?[(_]?(\d+)\)?", s, flags=re.IGNORECASE)
        if mt and s[0] in "Ii":
            return cls("I", 2, int(mt.group(1)))
        mt = re.fullmatch(r"([ABDEFHabdefh])_?(\d+)", s)
        if not mt:
            raise InvalidType(f"cannot parse Coxeter type {text!r}")
        return cls(mt.group(1).upper(), int(mt.group(2)))

    def __str__(self) -> str:
        if self.family == "I":
            return f"I2({self.m})"
        return f"{self.family}{self.rank}"

    @property
    def degrees(self) -> tuple[int, ...]:
        f, n = self.family, self.rank
        if f == "A":
            return tuple(range(2, n + 2))
        if f == "B":
            return tuple(range(2, 2 * n + 1, 2))
        if f == "D":
            return tuple(sorted(list(range(2, 2 * n - 1, 2)) + [n]))
        if f == "I":
            return (2, self.m)
        return _DEGREES[str(self)]

    @property
    def exponents(self) -> tuple[int, ...]:
        return tuple(d - 1 for d in self.degrees)

    @property
    def order(self) -> int:
        out = 1
        for d in self.degrees:
            out *= d
        return out

    @property
    def num_positive_roots(self) -> int:
        return sum(self.exponents)

    def minus_one_allowed(self) -> bool:
        """Whether the longest element of this irreducible type is -Id."""
        f, n = self.family, self.rank
        if f == "A":
            return n == 1
        if f == "D":
            return n % 2 == 0
        if f == "E":
            return n in (7, 8)
        if f == "I":
            return self.m % 2 == 0
        return f in ("B", "F", "H")


def field_for(t: CoxeterType) -> Field:
    """Smallest supported field containing the root coordinates of ``t``."""
    if t.family in "ABDEF":
        return rational_field()
    if t.family == "H":
        return quadratic_field(5)
    m = t.m
    # odd m: unit roots, entries 2cos(pi/m); even m: two lengths, entries 2 + 2cos(2pi/m)
    k = m if m % 2 else m // 2
    if k <= 3:
        return rational_field()
    if k == 5:
        return quadratic_field(5)
    return cosine_field(k)


def _unit(n: int, i: int) -> list[Fraction]:
    v = [Fraction(0)] * n
    v[i] = Fraction(1)
    return v


def _simple_data(t: CoxeterType, fld: Field):
    """Simple roots (ambient coordinates) and the Gram matrix (``None`` = identity)."""
    f, n = t.family, t.rank
    S = lambda x: Scalar.of(fld, x)  # noqa: E731
    vecs: list[list[Fraction]] = []
    if f == "A":
        for i in range(n):
            v = _unit(n + 1, i)
            v[i + 1] = Fraction(-1)
            vecs.append(v)
    elif f in "BD":
        for i in range(n - 1):
            v = _unit(n, i)
            v[i + 1] = Fraction(-1)
            vecs.append(v)
        if f == "B":
            vecs.append(_unit(n, n - 1))
        else:
            v = [Fraction(0)] * n
            v[n - 2] = v[n - 1] = Fraction(1)
            vecs.append(v)
    elif f == "E":
        h = Fraction(1, 2)
        e8 = [[h, -h, -h, -h, -h, -h, -h, h]]
        v = [Fraction(0)] * 8
        v[0] = v[1] = Fraction(1)
        e8.append(v)
        for i in range(6):
            v = [Fraction(0)] * 8
            v[i + 1] = Fraction(1)
            v[i] = Fraction(-1)
            e8.append(v)
        vecs = e8[:n]
    elif f == "F":
        h = Fraction(1, 2)
        vecs = [
            [0, 1, -1, 0],
            [0, 0, 1, -1],
            [0, 0, 0, 1],
            [h, -h, -h, -h],
        ]
    if vecs:
        return [tuple(S(x) for x in v) for v in vecs], None
    # Gram-matrix realisations, ambient coordinates = simple-root coordinates
    gram = [[S(0)] * n for _ in range(n)]
    if f == "H":
        phi = two_cos_pi_over(fld, 5)
        for i in range(n):
            gram[i][i] = S(2)
        gram[0][1] = gram[1][0] = -phi
        for i in range(1, n - 1):
            gram[i][i + 1] = gram[i + 1][i] = S(-1)
    else:
        m = t.m
        if m % 2:
            g = two_cos_pi_over(fld, m)
            gram = [[S(2), -g], [-g, S(2)]]
        else:
            lam = two_cos_pi_over(fld, m // 2) + 2
            gram = [[S(2), -lam], [-lam, lam * 2]]
    simple = [tuple(S(int(i == j)) for j in range(n)) for i in range(n)]
    return simple, tuple(tuple(r) for r in gram)


def compose(p: np.ndarray, q: np.ndarray) -> np.ndarray:
    """Permutation composition ``p o q`` (apply q first)."""
    return p[q]


def perm_order(p: np.ndarray) -> int:
    cur = p.copy()
    ident = np.arange(len(p))
    k = 1
    while not np.array_equal(cur, ident):
        cur = p[cur]
        k += 1
    return k


@dataclass(eq=False)
class RootSystem:
    ctype: CoxeterType
    field: Field
    ambient_dim: int
    roots: tuple[Vector, ...]
    coeffs: tuple[Vector, ...]
    n_pos: int
    simple_indices: tuple[int, ...]
    gram: tuple[tuple[Scalar, ...], ...] | None
    cartan: tuple[tuple[Scalar, ...], ...]
    _coeff_index: dict = field(repr=False, default_factory=dict)
    _vector_index: dict = field(repr=False, default_factory=dict)

    @property
    def rank(self) -> int:
        return len(self.simple_indices)

    @property
    def num_roots(self) -> int:
        return len(self.roots)

    @property
    def positive_flags(self) -> tuple[bool, ...]:
        return tuple(i < self.n_pos for i in range(self.num_roots))

    def neg(self, i: int) -> int:
        return (i + self.n_pos) % (2 * self.n_pos)

    def is_positive(self, i: int) -> bool:
        return i < self.n_pos

    def inner(self, u: Sequence[Scalar], v: Sequence[Scalar]) -> Scalar:
        zero = Scalar.of(self.field, 0)
        if self.gram is None:
            return sum((a * b for a, b in zip(u, v)), zero)
        acc = zero
        for i, a in enumerate(u):
            if a:
                row = self.gram[i]
                for j, b in enumerate(v):
                    if b:
                        acc = acc + a * row[j] * b
        return acc

    def norm2(self, i: int) -> Scalar:
        return self.inner(self.roots[i], self.roots[i])

    def reflect(self, root_index: int, v: Sequence[Scalar]) -> Vector:
        """s_a(v) = v - 2 (v, a)/(a, a) a."""
        a = self.roots[root_index]
        c = self.inner(v, a) * 2 / self.inner(a, a)
        return tuple(x - c * y for x, y in zip(v, a))

    def index_of(self, v: Sequence[Scalar]) -> int:
        return self._vector_index[tuple(v)]

    def index_of_coeffs(self, c: Sequence[Scalar]) -> int:
        return self._coeff_index[tuple(c)]

    def height(self, i: int) -> Scalar:
        return sum(self.coeffs[i], Scalar.of(self.field, 0))

    # -- permutation data ----------------------------------------------------

    @cached_property
    def simple_perms(self) -> tuple[np.ndarray, ...]:
        out = []
        n = self.rank
        for j in range(n):
            img = np.empty(self.num_roots, dtype=np.int64)
            for r, c in enumerate(self.coeffs):
                pair = sum((c[i] * self.cartan[i][j] for i in range(n)), Scalar.of(self.field, 0))
                new = list(c)
                new[j] = new[j] - pair
                img[r] = self._coeff_index[tuple(new)]
            out.append(img)
        return tuple(out)

    @cached_property
    def reflection_perms(self) -> tuple[np.ndarray, ...]:
        """Permutation of root indices for the reflection in each positive root."""
        perms: list[np.ndarray | None] = [None] * self.n_pos
        for j, p in enumerate(self.simple_perms):
            perms[j] = p
        # heights increase along the stored order, so s_j(beta) is handled first
        for b in range(self.n_pos):
            if perms[b] is not None:
                continue
            for j, sj in enumerate(self.simple_perms):
                lower = int(sj[b])
                if lower < self.n_pos and perms[lower] is not None and lower != b:
                    perms[b] = sj[perms[lower][sj]]
                    break
            if perms[b] is None:
                raise RuntimeError("reflection could not be reached from simple reflections")
        return tuple(perms)  # type: ignore[arg-type]

    @cached_property
    def coxeter_matrix(self) -> tuple[tuple[int, ...], ...]:
        n = self.rank
        sp = self.simple_perms
        return tuple(tuple(1 if i == j else perm_order(compose(sp[i], sp[j])) for j in range(n)) for i in range(n))

    def reflection_vector_perm(self, i: int) -> np.ndarray:
        """Reflection permutation for any root index (s_{-a} = s_a)."""
        return self.reflection_perms[i % self.n_pos]

    def root_lengths(self) -> list[Scalar]:
        return sorted(set(self.norm2(i) for i in range(self.n_pos)))


def build_root_system(t: CoxeterType | str) -> RootSystem:
    if isinstance(t, str):
        t = CoxeterType.parse(t)
    fld = field_for(t)
    simple, gram = _simple_data(t, fld)
    n = t.rank
    zero = Scalar.of(fld, 0)

    def inner(u, v):
        if gram is None:
            return sum((a * b for a, b in zip(u, v)), zero)
        return sum((u[i] * gram[i][j] * v[j] for i in range(len(u)) for j in range(len(v))), zero)

    cartan = tuple(
        tuple(inner(simple[i], simple[j]) * 2 / inner(simple[j], simple[j]) for j in range(n)) for i in range(n)
    )

    # closure of the simple roots under simple reflections, in coefficient space
    start = [tuple(Scalar.of(fld, int(i == j)) for j in range(n)) for i in range(n)]
    seen = set(start)
    frontier = list(start)
    while frontier:
        nxt = []
        for c in frontier:
            for j in range(n):
                pair = sum((c[i] * cartan[i][j] for i in range(n)), zero)
                if pair.is_zero():
                    continue
                new = list(c)
                new[j] = new[j] - pair
                new = tuple(new)
                if new not in seen:
                    seen.add(new)
                    nxt.append(new)
        frontier = nxt
    # reflections of simple roots give the negatives too
    positive = []
    for c in seen:
        signs = {x.sign() for x in c} - {0}
        if signs == {1}:
            positive.append(c)
        elif signs != {-1}:
            raise RuntimeError("root with mixed-sign coefficients")
    if len(positive) * 2 != len(seen):
        raise RuntimeError("root set is not closed under negation")
    simple_set = set(start)

    def key(c):
        return (0 if c in simple_set else 1, sum(c, zero), tuple(-x for x in c))

    positive.sort(key=key)
    positive = [c for c in start] + [c for c in positive if c not in simple_set]
    coeffs = positive + [tuple(-x for x in c) for c in positive]
    dim = len(simple[0])

    def ambient(c):
        return tuple(sum((c[i] * simple[i][k] for i in range(n)), zero) for k in range(dim))

    roots = [ambient(c) for c in coeffs]
    rs = RootSystem(
        ctype=t,
        field=fld,
        ambient_dim=dim,
        roots=tuple(roots),
        coeffs=tuple(coeffs),
        n_pos=len(positive),
        simple_indices=tuple(range(n)),
        gram=gram,
        cartan=cartan,
    )
    rs._coeff_index.update({c: i for i, c in enumerate(coeffs)})
    rs._vector_index.update({v: i for i, v in enumerate(roots)})
    return rs


# ---------------------------------------------------------------------------
# Coxeter graph classification


def _components(nodes: Sequence[int], mat) -> list[list[int]]:
    left = list(nodes)
    comps = []
    while left:
        stack = [left.pop(0)]
        comp = []
        while stack:
            x = stack.pop()
            comp.append(x)
            for y in list(left):
                if mat[x][y] > 2:
                    left.remove(y)
                    stack.append(y)
        comps.append(sorted(comp))
    return comps


def classify_component(nodes: Sequence[int], mat) -> CoxeterType:
    """Type of a connected Coxeter graph given by its Coxeter matrix entries."""
    k = len(nodes)
    if k == 1:
        return CoxeterType("A", 1)
    edges = [(a, b, mat[a][b]) for a, b in combinations(nodes, 2) if mat[a][b] > 2]
    if len(edges) != k - 1:
        raise InvalidType("Coxeter graph is not a tree")
    if k == 2:
        m = edges[0][2]
        if m == 3:
            return CoxeterType("A", 2)
        if m == 4:
            return CoxeterType("B", 2)
        return CoxeterType("I", 2, m)
    deg = {x: 0 for x in nodes}
    for a, b, _ in edges:
        deg[a] += 1
        deg[b] += 1
    labels = sorted(m for _, _, m in edges)
    branch = [x for x in nodes if deg[x] == 3]
    if max(deg.values()) > 3 or len(branch) > 1:
        raise InvalidType("not a finite Coxeter graph")
    if branch:
        if labels[-1] != 3:
            raise InvalidType("not a finite Coxeter graph")
        b = branch[0]
        arms = []
        for a0 in nodes:
            if mat[b][a0] > 2:
                length, prev, cur = 1, b, a0
                while True:
                    nxt = [y for y in nodes if y not in (prev, cur) and mat[cur][y] > 2]
                    if not nxt:
                        break
                    prev, cur = cur, nxt[0]
                    length += 1
                arms.append(length)
        arms.sort()
        if arms[:2] == [1, 1]:
            return CoxeterType("D", k)
        if arms == [1, 2, 2]:
            return CoxeterType("E", 6)
        if arms == [1, 2, 3]:
            return CoxeterType("E", 7)
        if arms == [1, 2, 4]:
            return CoxeterType("E", 8)
        raise InvalidType("not a finite Coxeter graph")
    # a path: read the labels in path order
    ends = [x for x in nodes if deg[x] == 1]
    path = [ends[0]]
    while len(path) < k:
        path.append(next(y for y in nodes if y not in path and mat[path[-1]][y] > 2))
    seq = [mat[path[i]][path[i + 1]] for i in range(k - 1)]
    if all(x == 3 for x in seq):
        return CoxeterType("A", k)
    if seq == [3, 4, 3]:
        return CoxeterType("F", 4)
    if seq[::-1] > seq:
        seq = seq[::-1]
    if seq[0] == 4 and all(x == 3 for x in seq[1:]):
        return CoxeterType("B", k)
    if seq[0] == 5 and all(x == 3 for x in seq[1:]) and k in (3, 4):
        return CoxeterType("H", k)
    raise InvalidType(f"not a finite Coxeter graph: labels {seq}")


def classify(nodes: Sequence[int], mat) -> list[tuple[CoxeterType, list[int]]]:
    """Irreducible components (type, nodes) of the Coxeter graph on ``nodes``."""
    return [(classify_component(c, mat), c) for c in _components(nodes, mat)]


# ---------------------------------------------------------------------------
# exponents


def _divide_linear(p: list[int], k: int) -> list[int] | None:
    """Divide p(t) by (1 + k t) over the integers, or None if not exact."""
    # p = (1 + k t) q ; solve from the top coefficient down
    deg = len(p) - 1
    q = [0] * deg
    rem = list(p)
    for i in range(deg - 1, -1, -1):
        if rem[i + 1] % k:
            return None
        q[i] = rem[i + 1] // k
        rem[i + 1] -= k * q[i]
        rem[i] -= q[i]
    if any(rem):
        return None
    return q


def exponents_from_poincare(p: Sequence[int]) -> list[int]:
    """Recover the multiset {m_i} with p(t) = prod (1 + m_i t) by trial division."""
    poly = [int(x) for x in p]
    while len(poly) > 1 and poly[-1] == 0:
        poly.pop()
    if not poly or poly[0] != 1:
        raise ValueError("Poincare polynomial must have constant term 1")
    out = []
    while len(poly) > 1:
        bound = max(abs(poly[1]), 1)
        for k in range(1, bound + 1):
            q = _divide_linear(poly, k)
            if q is not None:
                out.append(k)
                poly = q
                break
        else:
            raise ValueError("polynomial does not split into factors (1 + m t)")
    return sorted(out)


def poly_from_exponents(exps: Sequence[int]) -> list[int]:
    poly = [1]
    for m in exps:
        nxt = [0] * (len(poly) + 1)
        for i, c in enumerate(poly):
            nxt[i] += c
            nxt[i + 1] += m * c
        poly = nxt
    return poly
