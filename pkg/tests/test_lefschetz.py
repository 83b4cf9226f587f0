from __future__ import annotations

from math import factorial

import numpy as np
import pytest

from coxinv.involutions import richardson_classes, sigma_J
from coxinv.lefschetz import (
    PosetCapExceeded,
    build_fixed_arrangement,
    chamber_count,
    component_count_special,
    fixed_set_euler,
)
from coxinv.os_algebra import graded_traces

from conftest import group, matroid, root_system


def test_s3_transposition():
    rs = root_system("A2")
    p = build_fixed_arrangement(rs, rs.simple_perms[0])
    assert len(p) == 3
    assert sorted(p.moebius) == [-1, 0, 1]
    assert fixed_set_euler(p) == 2


def test_s4_double_transposition():
    rs = root_system("A3")
    assert fixed_set_euler(build_fixed_arrangement(rs, sigma_J(rs, [0, 2]))) == 0


@pytest.mark.parametrize("name", ["A2", "A3", "B3", "H3", "I2(7)"])
def test_identity_gives_group_order(name):
    rs = root_system(name)
    p = build_fixed_arrangement(rs, np.arange(rs.num_roots))
    # the identity removes complexified hyperplanes: the complex complement has chi 0
    assert sum(p.moebius) == 0
    # the real fixed set is the chamber complement
    assert fixed_set_euler(p) == rs.ctype.order


@pytest.mark.parametrize("name", ["B2", "B3", "D4", "H3", "F4"])
def test_minus_identity_gives_group_order(name):
    rs = root_system(name)
    p = build_fixed_arrangement(rs, sigma_J(rs, range(rs.rank)))
    assert fixed_set_euler(p) == rs.ctype.order


def test_b2_simple_reflection():
    rs = root_system("B2")
    assert fixed_set_euler(build_fixed_arrangement(rs, sigma_J(rs, [0]))) == 4


@pytest.mark.parametrize("n", [3, 4, 5])
def test_transposition_in_symmetric_group(n):
    rs = root_system(f"A{n - 1}")
    assert fixed_set_euler(build_fixed_arrangement(rs, rs.simple_perms[0])) == 2 * factorial(n - 2)


@pytest.mark.parametrize("name", ["A3", "B3", "D4", "H3", "I2(8)", "D5"])
def test_euler_matches_os_trace(name):
    # dual route: the combinatorial Euler characteristic against the trace on the OS algebra
    g, m = group(name), matroid(name)
    for c in richardson_classes(g):
        p = build_fixed_arrangement(g.rs, c.representative)
        chi = fixed_set_euler(p)
        assert chi == sum(graded_traces(m, c.representative))
        assert chi == (c.G1_order * c.G2_order if c.special else 0)
        if c.special:
            assert component_count_special(g.rs, c.representative) == chi


@pytest.mark.parametrize("name", ["A3", "B3"])
def test_moebius_column_property(name):
    rs = root_system(name)
    for c in richardson_classes(group(name)):
        p = build_fixed_arrangement(rs, c.representative)
        for y in range(1, len(p)):
            assert sum(p.moebius[x] for x in range(len(p)) if p.leq(x, y)) == 0
        assert p.moebius[0] == 1


def test_chamber_count_a2():
    rs = root_system("A2")
    assert chamber_count(build_fixed_arrangement(rs, np.arange(rs.num_roots))) == 6


def test_chamber_count_rejects_codim_two():
    rs = root_system("A3")
    with pytest.raises(ValueError):
        chamber_count(build_fixed_arrangement(rs, sigma_J(rs, [0, 2])))


def test_poset_cap():
    rs = root_system("B3")
    with pytest.raises(PosetCapExceeded):
        build_fixed_arrangement(rs, np.arange(rs.num_roots), cap=3)


def test_non_involution_rejected():
    rs = root_system("A2")
    with pytest.raises(ValueError):
        build_fixed_arrangement(rs, rs.simple_perms[0][rs.simple_perms[1]])
