from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from coxinv import linalg
from coxinv.group import OrderCapExceeded, generate, identity_perm, longest_element, matrix_of, perm_length
from coxinv.scalars import Scalar

from conftest import group, root_system


@pytest.mark.parametrize(
    "name, order, classes",
    [("A2", 6, 3), ("A3", 24, 5), ("A4", 120, 7), ("B2", 8, 5), ("B3", 48, 10), ("D4", 192, 13), ("D5", 1920, 18),
     ("F4", 1152, 25), ("H3", 120, 10), ("I2(5)", 10, 4), ("I2(6)", 12, 6), ("I2(7)", 14, 5), ("I2(8)", 16, 7)],
)
def test_order_and_class_count(name, order, classes):
    g = group(name)
    assert g.order == order == g.rs.ctype.order
    assert g.num_classes == classes
    assert sum(g.class_sizes) == order
    assert all(order % s == 0 for s in g.class_sizes)


def test_s3_class_sizes():
    assert sorted(group("A2").class_sizes) == [1, 2, 3]


@pytest.mark.parametrize("name", ["A3", "B3", "H3", "I2(7)"])
def test_group_closed_and_lengths(name):
    g = group(name)
    e = g.elements.astype(np.int64)
    # closure under multiplication by every generator and under inverses
    for s in g.rs.simple_perms:
        g.indices_of(e[:, s])
    inv = g.elements[g.inverse_index]
    assert (np.take_along_axis(e, inv.astype(np.int64), axis=1) == np.arange(g.rs.num_roots)).all()
    # the perm commutes with negation
    neg = np.array([g.rs.neg(i) for i in range(g.rs.num_roots)])
    assert (e[:, neg] == neg[e]).all()
    assert all(perm_length(g.rs, e[i]) == g.lengths[i] for i in range(g.order))
    assert g.classes[g.class_of[g.index_of(identity_perm(g.rs))]].size == 1


def test_order_cap():
    with pytest.raises(OrderCapExceeded):
        generate(root_system("A3"), order_cap=10)


@pytest.mark.parametrize("n", [3, 4, 5])
def test_transposition_centralizer(n):
    g = group(f"A{n - 1}")
    s = g.index_of(g.rs.simple_perms[0])
    fact = 1
    for k in range(2, n - 1):
        fact *= k
    assert len(g.centralizer(s)) == 2 * fact


@pytest.mark.parametrize("name", ["B3", "D4", "H3"])
def test_class_equation(name):
    g = group(name)
    for c, rep in enumerate(g.class_reps):
        assert len(g.centralizer(rep)) * g.class_sizes[c] == g.order


def test_central_minus_identity_b2():
    g = group("B2")
    w0 = longest_element(g.rs, [0, 1])
    assert (w0 == [g.rs.neg(i) for i in range(g.rs.num_roots)]).all()
    assert len(g.centralizer(g.index_of(w0))) == 8


@pytest.mark.parametrize("name, J, order", [("A3", [], 1), ("A3", [0, 2], 4), ("B3", [1, 2], 8), ("F4", [1, 2], 8), ("H3", [0, 1], 10)])
def test_parabolic_orders(name, J, order):
    g = group(name)
    sub = g.parabolic(J)
    assert len(sub) == order
    # the inversion sets of W_J exhaust the positive roots of R intersect V_J
    rs = g.rs
    in_span = {i for i in range(rs.n_pos) if all(rs.coeffs[i][k].is_zero() for k in range(rs.rank) if k not in J)}
    inverted = set()
    for idx in sub:
        p = g.elements[idx]
        inverted |= {i for i in range(rs.n_pos) if p[i] >= rs.n_pos}
    assert inverted == in_span


@pytest.mark.parametrize("name", ["A2", "B3", "D4", "H3", "I2(8)"])
def test_longest_element_by_descent_matches_max_length(name):
    g = group(name)
    rs = g.rs
    for J in ([0], list(range(rs.rank)), [0, rs.rank - 1]):
        w0 = longest_element(rs, J)
        enum = g.elements[g.longest_in(g.parabolic(J))]
        assert (enum == w0).all()


def test_longest_element_a2_not_minus_identity():
    rs = root_system("A2")
    w0 = longest_element(rs, [0, 1])
    a, b = rs.simple_indices
    assert w0[a] == rs.neg(b) and w0[b] == rs.neg(a)


def _preserves_gram(rs, m):
    basis = [tuple(Scalar.of(rs.field, int(i == j)) for j in range(rs.ambient_dim)) for i in range(rs.ambient_dim)]
    cols = linalg.transpose(m)
    return all(rs.inner(cols[i], cols[j]) == rs.inner(basis[i], basis[j]) for i in range(rs.ambient_dim) for j in range(rs.ambient_dim))


@pytest.mark.parametrize("name", ["A2", "B2", "H3", "I2(5)"])
def test_matrix_basics(name):
    rs = root_system(name)
    ident = matrix_of(identity_perm(rs), rs)
    assert ident == linalg.identity(rs.field, rs.ambient_dim)
    s = matrix_of(rs.simple_perms[0], rs)
    assert linalg.det(s) == -1
    assert _preserves_gram(rs, s)
    # the matrix moves every root as the permutation says
    for i in range(rs.num_roots):
        assert linalg.matvec(s, rs.roots[i]) == rs.roots[int(rs.simple_perms[0][i])]


@settings(max_examples=25, deadline=None)
@given(st.sampled_from(["A3", "B3", "H3", "I2(7)"]), st.data())
def test_matrix_homomorphism_and_parity(name, data):
    g = group(name)
    rs = g.rs
    i = data.draw(st.integers(0, g.order - 1))
    j = data.draw(st.integers(0, g.order - 1))
    x, y = g.elements[i].astype(np.int64), g.elements[j].astype(np.int64)
    mx, my = matrix_of(x, rs), matrix_of(y, rs)
    assert matrix_of(x[y], rs) == linalg.matmul(mx, my)
    assert linalg.det(mx) == int(g.parity[i])
    assert _preserves_gram(rs, mx)


@settings(max_examples=25, deadline=None)
@given(st.sampled_from(["B3", "D4", "F4"]), st.data())
def test_conjugation_stays_in_class(name, data):
    g = group(name)
    i = data.draw(st.integers(0, g.order - 1))
    h = data.draw(st.integers(0, g.order - 1))
    x = g.elements[i].astype(np.int64)
    y = g.elements[h].astype(np.int64)
    yinv = g.elements[g.inverse_index[h]].astype(np.int64)
    conj = g.index_of(y[x[yinv]])
    assert g.class_of[conj] == g.class_of[i]
