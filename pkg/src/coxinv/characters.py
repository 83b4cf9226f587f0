"""Virtual characters of a Coxeter group and the special-involution formulas.

Class functions are integer vectors indexed by the group's canonical class
order.  The two headline formulas express the cohomology of the arrangement
complement (plain and sign-twisted) as sums of characters induced from the
order-two subgroups generated by special involutions.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .group import Group
from .involutions import InvolutionClass, SpecialSet


@dataclass(frozen=True)
class ClassFunction:
    values: tuple[int, ...]
    label: str = ""

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(int(v) for v in self.values))

    def __len__(self) -> int:
        return len(self.values)

    def __getitem__(self, c: int) -> int:
        return self.values[c]

    def _check(self, other: "ClassFunction") -> None:
        if len(other) != len(self):
            raise ValueError("class functions of different groups")

    def __add__(self, other: "ClassFunction") -> "ClassFunction":
        self._check(other)
        return ClassFunction(tuple(a + b for a, b in zip(self.values, other.values)), f"({self.label}+{other.label})")

    def __sub__(self, other: "ClassFunction") -> "ClassFunction":
        self._check(other)
        return ClassFunction(tuple(a - b for a, b in zip(self.values, other.values)), f"({self.label}-{other.label})")

    def __neg__(self) -> "ClassFunction":
        return ClassFunction(tuple(-a for a in self.values), f"-{self.label}")

    def scale(self, k: int) -> "ClassFunction":
        return ClassFunction(tuple(k * a for a in self.values), f"{k}*{self.label}")

    __rmul__ = scale

    def __eq__(self, other) -> bool:
        return isinstance(other, ClassFunction) and self.values == other.values

    def __hash__(self) -> int:
        return hash(self.values)

    def inner(self, other: "ClassFunction", g: Group) -> Fraction:
        """<chi, psi> = (1/|G|) sum_c |c| chi(c) psi(c); characters here are real."""
        self._check(other)
        total = sum(size * a * b for size, a, b in zip(g.class_sizes, self.values, other.values))
        return Fraction(total, g.order)


def zero_function(g: Group) -> ClassFunction:
    return ClassFunction((0,) * g.num_classes, "0")


def regular(g: Group) -> ClassFunction:
    ident = g.class_of[g.index_of(np.arange(g.rs.num_roots))]
    return ClassFunction(tuple(g.order if c == ident else 0 for c in range(g.num_classes)), "rho")


def trivial(g: Group) -> ClassFunction:
    return ClassFunction((1,) * g.num_classes, "1")


def alternating(g: Group) -> ClassFunction:
    return ClassFunction(tuple(int(g.parity[r]) for r in g.class_reps), "eps")


def induced_trivial(g: Group, sigma: np.ndarray) -> ClassFunction:
    """Character of the permutation action of G on the cosets of <sigma>.

    Value at a class c is (1/|H|) sum over h in H lying in c of |C(h)|.
    """
    if not np.array_equal(sigma[sigma], np.arange(len(sigma))):
        raise ValueError("sigma must be an involution")
    s = g.index_of(sigma)
    ident = g.index_of(np.arange(len(sigma)))
    H = [ident] if s == ident else [ident, s]
    acc = [Fraction(0)] * g.num_classes
    for h in H:
        c = int(g.class_of[h])
        acc[c] += Fraction(g.order, g.class_sizes[c])  # |C(h)|
    vals = []
    for v in acc:
        v = v / len(H)
        if v.denominator != 1:
            raise ArithmeticError("induced character is not integral")
        vals.append(int(v))
    return ClassFunction(tuple(vals), f"Ind<{s}>")


def _sum_formula(g: Group, classes: Sequence[InvolutionClass], label: str) -> ClassFunction:
    rho = regular(g)
    total = zero_function(g)
    for cls in classes:
        total = total + induced_trivial(g, cls.representative).scale(2) - rho
    return ClassFunction(total.values, label)


def formula_F1(g: Group, X: SpecialSet | Sequence[InvolutionClass]) -> ClassFunction:
    """Sum over special classes of 2 Ind_<sigma>(1) - rho: the cohomology character."""
    classes = X.classes if isinstance(X, SpecialSet) else X
    return _sum_formula(g, classes, "F1")


def formula_F2(g: Group, X_even: SpecialSet | Sequence[InvolutionClass]) -> ClassFunction:
    """Same sum restricted to even special classes: the sign-twisted character."""
    classes = X_even.even if isinstance(X_even, SpecialSet) else X_even
    return _sum_formula(g, classes, "F2")


def poincare_sigma(X: SpecialSet | Sequence[InvolutionClass]) -> list[int]:
    """Coefficient list of sum over special classes of t^dim V^-(sigma)."""
    classes = X.classes if isinstance(X, SpecialSet) else X
    top = max(c.dim_minus for c in classes)
    coeffs = [0] * (top + 1)
    for c in classes:
        coeffs[c.dim_minus] += 1
    return coeffs


def eval_poly(coeffs: Sequence[int], t: int) -> int:
    return sum(c * t**k for k, c in enumerate(coeffs))


def multiplicity_summary(X: SpecialSet) -> tuple[int, int]:
    """(multiplicity of the trivial character, of the sign character) in the cohomology."""
    return len(X.classes), len(X.even) - len(X.odd)
