from __future__ import annotations

from itertools import combinations

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from coxinv.involutions import (
    NotAnInvolution,
    involution_mask,
    is_special,
    minus_eigenspace_dim,
    minus_one_condition,
    richardson_classes,
    rootspace_classes,
    sigma_J,
    special_set,
    verify_centralizer_product,
)

from conftest import group, root_system

FULL_TYPES = ["A2", "A3", "A4", "B2", "B3", "B4", "D4", "D5", "D6", "F4", "H3", "I2(5)", "I2(6)", "I2(8)", "I2(9)"]


@pytest.mark.parametrize("name", ["A3", "B3", "D4", "H3", "F4", "I2(8)"])
def test_singletons_satisfy_condition(name):
    rs = root_system(name)
    assert all(minus_one_condition(rs, None, [j]) for j in range(rs.rank))


def test_a2_fails_condition():
    assert not minus_one_condition(root_system("A2"), None, [0, 1])
    assert not minus_one_condition(root_system("A4"), None, [1, 2])


def test_full_b2_satisfies_condition():
    assert minus_one_condition(root_system("B2"), None, [0, 1])


@pytest.mark.parametrize("name", ["A4", "B3", "D4", "D5", "F4", "H3", "I2(6)", "I2(7)"])
def test_condition_routes_agree_with_enumeration(name):
    # both internal routes plus the longest element found by enumeration must agree for every J
    rs, g = root_system(name), group(name)
    for k in range(rs.rank + 1):
        for J in combinations(range(rs.rank), k):
            minus_one_condition(rs, g, J)


def test_condition_known_subsets():
    rs = root_system("E7")
    assert minus_one_condition(rs, None, range(7))
    assert minus_one_condition(rs, None, range(1, 7))  # D6
    assert not minus_one_condition(rs, None, range(6))  # E6
    assert not minus_one_condition(root_system("D5"), None, range(5))
    assert minus_one_condition(root_system("D4"), None, range(4))


@pytest.mark.parametrize(
    "name, expected",
    [("A2", 2), ("B2", 4), ("A3", 3), ("B3", 6), ("D4", 7)],
)
def test_number_of_involution_classes(name, expected):
    # oracle: count classes meeting the brute list of elements squaring to the identity
    g = group(name)
    brute = {int(g.class_of[i]) for i in np.nonzero(involution_mask(g))[0]}
    assert len(richardson_classes(g)) == len(brute) == expected


def test_d4_classes_contain_plus_minus():
    g = group("D4")
    dims = sorted(c.dim_minus for c in richardson_classes(g))
    assert dims[0] == 0 and dims[-1] == 4 and dims.count(1) == 1


@pytest.mark.parametrize("name", FULL_TYPES)
def test_richardson_representatives(name):
    rs, g = root_system(name), group(name)
    covered = set()
    for c in richardson_classes(g):
        sig = c.representative
        assert np.array_equal(sig[sig], np.arange(rs.num_roots))
        # -Id on span(J), identity on roots orthogonal to J
        assert all(sig[j] == rs.neg(j) for j in c.J)
        assert minus_eigenspace_dim(rs, sig) == c.dim_minus == len(c.J)
        assert c.parity == ("even" if c.dim_minus % 2 == 0 else "odd")
        covered.add(c.class_index)
    assert covered == {int(x) for x in g.class_of[involution_mask(g)]}


def test_special_examples():
    rs = root_system("A3")
    assert is_special(rs, np.arange(rs.num_roots))
    assert not is_special(rs, sigma_J(rs, [0, 2]))
    b2 = root_system("B2")
    assert is_special(b2, sigma_J(b2, [1]))
    assert is_special(b2, sigma_J(b2, [0]))


def test_not_an_involution():
    rs = root_system("A2")
    with pytest.raises(NotAnInvolution):
        is_special(rs, rs.simple_perms[0][rs.simple_perms[1]])


@pytest.mark.parametrize(
    "name, size",
    [("A2", 2), ("A4", 2), ("B2", 4), ("B3", 6), ("B4", 8), ("D4", 4), ("D5", 2), ("D6", 4), ("F4", 8), ("H3", 4),
     ("I2(5)", 2), ("I2(6)", 4), ("I2(8)", 4), ("I2(9)", 2)],
)
def test_special_set_sizes(name, size):
    X = special_set(group(name), root_system(name))
    assert len(X) == size
    assert len(X.even) == len(X.odd) == size // 2


@pytest.mark.parametrize("name", ["A3", "B3", "D4", "H3", "F4"])
def test_centralizer_is_product(name):
    g = group(name)
    for c in special_set(g, g.rs).classes:
        assert verify_centralizer_product(g, c)
        assert len(g.centralizer(g.index_of(c.representative))) == c.G1_order * c.G2_order


def test_d5_non_special_centralizer_gap():
    g = group("D5")
    [c] = [c for c in richardson_classes(g) if c.J == (0, 3, 4)]
    assert not c.special
    assert not verify_centralizer_product(g, c)
    assert len(g.centralizer(g.index_of(c.representative))) == 2 * c.G1_order * c.G2_order


def test_identity_centralizer_product():
    g = group("B3")
    ident = [c for c in richardson_classes(g) if c.is_identity][0]
    assert ident.G1_order == 1 and ident.G2_order == g.order
    assert verify_centralizer_product(g, ident)


@pytest.mark.parametrize("name", ["B4", "D4", "D6", "F4", "H3", "E6", "I2(8)"])
def test_subgroup_orders_match_generated(name):
    g = group(name)
    rs = g.rs
    for c in richardson_classes(g):
        pos1 = [i for i in c.R1 if rs.is_positive(i)]
        pos2 = [i for i in c.R2 if rs.is_positive(i)]
        assert (len(g.subgroup_from_reflections(pos1)) if pos1 else 1) == c.G1_order
        assert (len(g.subgroup_from_reflections(pos2)) if pos2 else 1) == c.G2_order


@pytest.mark.parametrize("name", ["B3", "B4", "D4", "D6", "F4", "H3", "E6", "I2(8)", "I2(12)"])
def test_rootspace_mode_matches_full_on_special_classes(name):
    g = group(name)
    full = {c.J: c for c in richardson_classes(g) if c.special}
    rsp = [c for c in rootspace_classes(g.rs) if c.special]
    assert {c.J for c in rsp} == set(full)
    for c in rsp:
        assert c.consistent
        # every J grouped under one invariant tuple really lies in a single conjugacy class
        assert {int(g.class_of[g.index_of(sigma_J(g.rs, J))]) for J in c.admissible_J} == {full[c.J].class_index}


@pytest.mark.parametrize(
    "name, types",
    [("E7", {(): ("E7",), (0,): ("D6",), (1, 2, 3, 4, 5, 6): ("A1",), tuple(range(7)): ()}),
     ("E8", {(): ("E8",), (0,): ("E7",), tuple(range(7)): ("A1",), tuple(range(8)): ()})],
)
def test_rootspace_e7_e8(name, types):
    X = special_set(None, root_system(name))
    assert X.mode == "rootspace"
    assert {c.J: c.R2_type for c in X.classes} == types
    assert all(c.consistent for c in X.classes)


@settings(max_examples=30, deadline=None)
@given(st.sampled_from(["A3", "B3", "D4", "H3"]), st.data())
def test_specialness_is_class_function(name, data):
    g = group(name)
    classes = richardson_classes(g)
    c = data.draw(st.sampled_from(classes))
    h = data.draw(st.integers(0, g.order - 1))
    y = g.elements[h].astype(np.int64)
    yinv = g.elements[g.inverse_index[h]].astype(np.int64)
    conj = y[c.representative[yinv]]
    assert is_special(g.rs, conj) == c.special
