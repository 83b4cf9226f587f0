"""Exact arithmetic in the small real number fields that carry root coordinates.

Three field descriptors are supported:

* ``rational``       -- Q
* ``quadratic(d)``   -- Q(sqrt d), generator sqrt d
* ``cosine(m)``      -- Q(2cos(pi/m)), generator 2cos(pi/m)

An element is a polynomial in the generator with rational coefficients,
reduced modulo the generator's minimal polynomial.  The coefficient tuple is
therefore a canonical form and equality is plain tuple equality.  Signs are
decided by refining a rational isolating interval of the generator.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

__all__ = [
    "Field",
    "Scalar",
    "FieldMismatch",
    "rational_field",
    "quadratic_field",
    "cosine_field",
    "field_from_descriptor",
    "two_cos_pi_over",
]


class FieldMismatch(TypeError):
    """Raised when two scalars from different fields are combined."""


# ---------------------------------------------------------------------------
# integer polynomial helpers (coefficients low -> high)


def _poly_trim(p: list) -> list:
    while len(p) > 1 and p[-1] == 0:
        p.pop()
    return p


def _poly_mul(a: Sequence[int], b: Sequence[int]) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _poly_trim(out)


def _poly_divexact(a: Sequence[int], b: Sequence[int]) -> list[int]:
    """Exact division of integer polynomials with monic divisor."""
    a = list(a)
    assert b[-1] == 1
    q = [0] * (len(a) - len(b) + 1)
    for k in range(len(q) - 1, -1, -1):
        c = a[k + len(b) - 1]
        q[k] = c
        if c:
            for j, y in enumerate(b):
                a[k + j] -= c * y
    if any(a[: len(b) - 1]):
        raise ArithmeticError("polynomial division is not exact")
    return q


@lru_cache(maxsize=None)
def cyclotomic(n: int) -> tuple[int, ...]:
    """Coefficients of the n-th cyclotomic polynomial."""
    num = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            num = _poly_divexact(num, cyclotomic(d))
    return tuple(num)


def _dickson(j: int) -> list[int]:
    # x^j + x^-j as a polynomial in y = x + 1/x
    prev, cur = [2], [0, 1]
    if j == 0:
        return prev
    for _ in range(j - 1):
        nxt = [0] + cur
        for i, c in enumerate(prev):
            nxt[i] -= c
        prev, cur = cur, _poly_trim(nxt)
    return cur


@lru_cache(maxsize=None)
def cosine_minpoly(m: int) -> tuple[int, ...]:
    """Minimal polynomial of 2cos(pi/m), obtained from the 2m-th cyclotomic polynomial.

    Phi_{2m} is palindromic of even degree 2d, so x^-d Phi_{2m}(x) is a polynomial
    in y = x + 1/x; that polynomial is the minimal polynomial of 2cos(pi/m).
    """
    if m < 2:
        raise ValueError("m must be >= 2")
    phi = cyclotomic(2 * m)
    d = (len(phi) - 1) // 2
    out = [phi[d]]
    for j in range(1, d + 1):
        dj = _dickson(j)
        out += [0] * (len(dj) - len(out))
        for i, c in enumerate(dj):
            out[i] += phi[d + j] * c
    return tuple(_poly_trim(out))


def _eval_int_poly(p: Sequence[int], x: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in reversed(p):
        acc = acc * x + c
    return acc


# ---------------------------------------------------------------------------
# fields


@dataclass(frozen=True)
class Field:
    """Field descriptor.  Instances are interned through the factory functions."""

    kind: str
    param: int = 0
    minpoly: tuple[int, ...] = field(compare=False, repr=False, default=(0, 1))

    @property
    def degree(self) -> int:
        return len(self.minpoly) - 1

    def __str__(self) -> str:
        return "rational" if self.kind == "rational" else f"{self.kind}({self.param})"

    # -- isolating interval of the generator --------------------------------

    def _approx(self) -> float:
        if self.kind == "quadratic":
            return math.sqrt(self.param)
        if self.kind == "cosine":
            return 2 * math.cos(math.pi / self.param)
        return 0.0

    @property
    def _interval_cache(self) -> list:
        return _INTERVALS.setdefault(self, [])

    def generator_interval(self, level: int) -> tuple[Fraction, Fraction]:
        """Rational interval containing the generator, width shrinking with ``level``."""
        cache = self._interval_cache
        if not cache:
            cache.append(self._initial_interval())
        while len(cache) <= level:
            lo, hi = cache[-1]
            mid = (lo + hi) / 2
            v = _eval_int_poly(self.minpoly, mid)
            if v == 0:
                # the generator is irrational whenever degree > 1
                raise ArithmeticError("generator hit a rational point")
            if (v > 0) == (_eval_int_poly(self.minpoly, hi) > 0):
                cache.append((lo, mid))
            else:
                cache.append((mid, hi))
        return cache[level]

    def _initial_interval(self) -> tuple[Fraction, Fraction]:
        approx = self._approx()
        # half the minimal gap to any other root keeps the interval isolating
        roots = [2 * math.cos(k * math.pi / self.param) for k in range(1, 2 * self.param)]
        if self.kind == "quadratic":
            roots = [approx, -approx]
        gaps = [abs(r - approx) for r in roots if abs(r - approx) > 1e-9]
        eps = Fraction(min(gaps) / 4).limit_denominator(10**6) if gaps else Fraction(1, 4)
        centre = Fraction(approx).limit_denominator(10**9)
        lo, hi = centre - eps, centre + eps
        flo = _eval_int_poly(self.minpoly, lo)
        fhi = _eval_int_poly(self.minpoly, hi)
        if flo == 0 or fhi == 0 or (flo > 0) == (fhi > 0):
            raise ArithmeticError(f"could not isolate the generator of {self}")
        return lo, hi


_INTERVALS: dict[Field, list] = {}
_FIELDS: dict[tuple[str, int], Field] = {}


def _intern(kind: str, param: int, minpoly: tuple[int, ...]) -> Field:
    key = (kind, param)
    if key not in _FIELDS:
        _FIELDS[key] = Field(kind, param, minpoly)
    return _FIELDS[key]


def rational_field() -> Field:
    return _intern("rational", 0, (0, 1))


def quadratic_field(d: int) -> Field:
    r = math.isqrt(d)
    if d <= 1 or r * r == d:
        raise ValueError(f"quadratic({d}) needs a non-square d > 1")
    return _intern("quadratic", d, (-d, 0, 1))


def cosine_field(m: int) -> Field:
    poly = cosine_minpoly(m)
    if len(poly) - 1 < 2:
        raise ValueError(f"2cos(pi/{m}) is rational; use the rational field")
    return _intern("cosine", m, poly)


def field_from_descriptor(text: str) -> Field:
    text = text.strip()
    if text == "rational":
        return rational_field()
    for kind, factory in (("quadratic", quadratic_field), ("cosine", cosine_field)):
        if text.startswith(kind + "(") and text.endswith(")"):
            return factory(int(text[len(kind) + 1 : -1]))
    raise ValueError(f"unknown field descriptor {text!r}")


@lru_cache(maxsize=None)
def _reduction_table(fld: Field) -> tuple[tuple[Fraction, ...], ...]:
    """Rows give x^k mod minpoly for k = 0 .. 2*deg - 2."""
    deg = fld.degree
    rows = []
    cur = [Fraction(0)] * deg
    cur[0] = Fraction(1)
    for _ in range(max(2 * deg - 1, 1)):
        rows.append(tuple(cur))
        # multiply by x and reduce
        top = cur[-1]
        cur = [Fraction(0)] + cur[:-1]
        if top:
            for i in range(deg):
                cur[i] -= top * fld.minpoly[i]
    return tuple(rows)


# ---------------------------------------------------------------------------
# scalars


class Scalar:
    """Immutable exact element of a :class:`Field`."""

    __slots__ = ("field", "c", "_hash")

    def __init__(self, fld: Field, coeffs: Iterable = (0,)):
        c = [Fraction(x) for x in coeffs]
        deg = fld.degree
        if len(c) > deg:
            c = _reduce(fld, c)
        c += [Fraction(0)] * (deg - len(c))
        self.field = fld
        self.c = tuple(c)
        self._hash = None

    @classmethod
    def _raw(cls, fld: Field, c: tuple) -> "Scalar":
        obj = object.__new__(cls)
        obj.field = fld
        obj.c = c
        obj._hash = None
        return obj

    # -- constructors ---------------------------------------------------------

    @classmethod
    def of(cls, fld: Field, value) -> "Scalar":
        if isinstance(value, Scalar):
            if value.field is not fld:
                raise FieldMismatch(f"{value.field} vs {fld}")
            return value
        return cls(fld, (value,))

    @classmethod
    def generator(cls, fld: Field) -> "Scalar":
        if fld.degree < 2:
            raise ValueError("rational field has no irrational generator")
        return cls(fld, (0, 1))

    # -- coercion ----------------------------------------------------------------

    def _coerce(self, other) -> "Scalar | None":
        if isinstance(other, Scalar):
            if other.field is not self.field:
                raise FieldMismatch(f"cannot combine {self.field} with {other.field}")
            return other
        if isinstance(other, (int, Fraction)):
            return Scalar._raw(self.field, (Fraction(other),) + (Fraction(0),) * (self.field.degree - 1))
        return None

    # -- arithmetic -------------------------------------------------------------

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Scalar._raw(self.field, tuple(a + b for a, b in zip(self.c, o.c)))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Scalar._raw(self.field, tuple(a - b for a, b in zip(self.c, o.c)))

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __neg__(self):
        return Scalar._raw(self.field, tuple(-a for a in self.c))

    def __pos__(self):
        return self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return Scalar._raw(self.field, tuple(a * other for a in self.c))
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        deg = self.field.degree
        if deg == 1:
            return Scalar._raw(self.field, (self.c[0] * o.c[0],))
        prod = [Fraction(0)] * (2 * deg - 1)
        for i, a in enumerate(self.c):
            if a:
                for j, b in enumerate(o.c):
                    if b:
                        prod[i + j] += a * b
        return Scalar._raw(self.field, tuple(_reduce(self.field, prod)))

    __rmul__ = __mul__

    def inverse(self) -> "Scalar":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero scalar")
        deg = self.field.degree
        if deg == 1:
            return Scalar._raw(self.field, (1 / self.c[0],))
        # solve (multiplication-by-self matrix) * x = e0
        basis = [Scalar._raw(self.field, tuple(Fraction(int(i == k)) for i in range(deg))) for k in range(deg)]
        cols = [(self * b).c for b in basis]
        mat = [[cols[j][i] for j in range(deg)] + [Fraction(int(i == 0))] for i in range(deg)]
        for col in range(deg):
            piv = next(r for r in range(col, deg) if mat[r][col] != 0)
            mat[col], mat[piv] = mat[piv], mat[col]
            pv = mat[col][col]
            mat[col] = [x / pv for x in mat[col]]
            for r in range(deg):
                if r != col and mat[r][col] != 0:
                    f = mat[r][col]
                    mat[r] = [x - f * y for x, y in zip(mat[r], mat[col])]
        return Scalar._raw(self.field, tuple(mat[i][deg] for i in range(deg)))

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("division by zero")
            return Scalar._raw(self.field, tuple(a / other for a in self.c))
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        out = Scalar.of(self.field, 1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    # -- comparisons ------------------------------------------------------------

    def is_zero(self) -> bool:
        return not any(self.c)

    def is_rational(self) -> bool:
        return not any(self.c[1:])

    def to_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is irrational")
        return self.c[0]

    def __eq__(self, other):
        if isinstance(other, Scalar):
            return self.field is other.field and self.c == other.c
        if isinstance(other, (int, Fraction)):
            return self.c[0] == other and not any(self.c[1:])
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            if self.is_rational():
                self._hash = hash(self.c[0])
            else:
                self._hash = hash((self.field.kind, self.field.param, self.c))
        return self._hash

    def __bool__(self):
        return not self.is_zero()

    def sign(self) -> int:
        """Exact sign of the real embedding."""
        if self.is_zero():
            return 0
        if self.is_rational():
            return 1 if self.c[0] > 0 else -1
        level = 0
        while True:
            lo, hi = self.field.generator_interval(level)
            vlo, vhi = _interval_eval(self.c, lo, hi)
            if vlo > 0:
                return 1
            if vhi < 0:
                return -1
            level += 4

    def _cmp(self, other) -> int:
        o = self._coerce(other)
        if o is None:
            raise TypeError(f"cannot compare Scalar with {type(other).__name__}")
        return (self - o).sign()

    def __lt__(self, other):
        return self._cmp(other) < 0

    def __le__(self, other):
        return self._cmp(other) <= 0

    def __gt__(self, other):
        return self._cmp(other) > 0

    def __ge__(self, other):
        return self._cmp(other) >= 0

    def __abs__(self):
        return -self if self.sign() < 0 else self

    def __float__(self):
        g = self.field._approx()
        return float(sum(float(a) * g**i for i, a in enumerate(self.c)))

    # -- display / serialisation ---------------------------------------------------

    def __repr__(self):
        return f"Scalar({self.field}, {[str(a) for a in self.c]})"

    def __str__(self):
        if self.is_rational():
            return str(self.c[0])
        gen = {"quadratic": f"sqrt{self.field.param}", "cosine": f"g{self.field.param}"}[self.field.kind]
        terms = []
        for i, a in enumerate(self.c):
            if a == 0:
                continue
            mono = "" if i == 0 else (gen if i == 1 else f"{gen}^{i}")
            if i == 0:
                terms.append(str(a))
            elif a == 1:
                terms.append(mono)
            elif a == -1:
                terms.append("-" + mono)
            else:
                terms.append(f"{a}*{mono}")
        return " + ".join(terms).replace("+ -", "- ")

    def to_json(self) -> dict:
        return {"field": str(self.field), "coeffs": [str(a) for a in self.c]}

    @classmethod
    def from_json(cls, obj: dict) -> "Scalar":
        return cls(field_from_descriptor(obj["field"]), [Fraction(a) for a in obj["coeffs"]])


def _reduce(fld: Field, coeffs: Sequence[Fraction]) -> list[Fraction]:
    deg = fld.degree
    if len(coeffs) <= deg:
        return list(coeffs) + [Fraction(0)] * (deg - len(coeffs))
    table = _reduction_table(fld)
    if len(coeffs) > len(table):
        # long inputs (only from the public constructor): reduce by repeated division
        c = list(coeffs)
        mp = fld.minpoly
        for k in range(len(c) - 1, deg - 1, -1):
            top = c[k]
            if top:
                c[k] = Fraction(0)
                for i in range(deg):
                    c[k - deg + i] -= top * mp[i]
        return c[:deg]
    out = list(coeffs[:deg])
    for k in range(deg, len(coeffs)):
        a = coeffs[k]
        if a:
            row = table[k]
            for i in range(deg):
                out[i] += a * row[i]
    return out


def _interval_eval(coeffs: Sequence[Fraction], lo: Fraction, hi: Fraction) -> tuple[Fraction, Fraction]:
    """Interval enclosure of sum c_i x^i for x in [lo, hi] with lo > 0."""
    assert lo > 0
    vlo = vhi = Fraction(0)
    plo = phi = Fraction(1)
    for c in coeffs:
        if c > 0:
            vlo += c * plo
            vhi += c * phi
        elif c < 0:
            vlo += c * phi
            vhi += c * plo
        plo *= lo
        phi *= hi
    return vlo, vhi


def two_cos_pi_over(fld: Field, k: int) -> Scalar:
    """The number 2cos(pi/k) as an element of ``fld`` (when it lies there)."""
    if k == 1:
        return Scalar.of(fld, -2)
    if k == 2:
        return Scalar.of(fld, 0)
    if k == 3:
        return Scalar.of(fld, 1)
    if fld.kind == "cosine" and fld.param == k:
        return Scalar.generator(fld)
    if fld.kind == "quadratic":
        d = fld.param
        known = {(5, 5): (Fraction(1, 2), Fraction(1, 2)), (2, 4): (0, 1), (3, 6): (0, 1)}
        if (d, k) in known:
            return Scalar(fld, known[(d, k)])
    if fld.kind == "cosine" and fld.param % k == 0:
        # 2cos(pi/k) = 2cos(j*pi/m) with j = m/k, a Dickson polynomial in the generator
        j = fld.param // k
        poly = _dickson(j)
        g = Scalar.generator(fld)
        acc = Scalar.of(fld, 0)
        for c in reversed(poly):
            acc = acc * g + c
        return acc
    raise ValueError(f"2cos(pi/{k}) is not available in {fld}")
