from __future__ import annotations

import pytest

from coxinv import verify as vf
from coxinv.group import OrderCapExceeded

from conftest import context


@pytest.mark.parametrize("name", ["B3", "F4", "I2(8)"])
def test_run_all_full(name):
    results = vf.run_all(context(name))
    assert [r.name for r in results] == list(vf.FULL_CHECKS)
    assert all(r.passed for r in results), [r.name for r in results if not r.passed]


@pytest.mark.parametrize("name", ["E7", "E8"])
def test_run_all_rootspace(name):
    ctx = context(name)
    assert ctx.mode == "rootspace" and "exceeds the cap" in ctx.limitation()
    results = vf.run_all(ctx)
    assert [r.name for r in results] == list(vf.ROOTSPACE_CHECKS)
    assert all(r.passed for r in results)
    with pytest.raises(vf.ModeError):
        ctx.group


def test_h4_character_identities():
    ctx = context("H4")
    assert vf.check_f1(ctx).passed
    assert vf.check_f2(ctx).passed


def test_conjecture_status_is_informational_for_open_types():
    r = vf.check_conjecture(context("H3"))
    assert r.informational and r.counts_as_pass
    assert not vf.check_conjecture(context("B3")).informational


def test_vanishing_scope():
    assert vf.check_vanishing(context("B3")).summary["scope"] == "elements"
    r = vf.check_vanishing(context("H4"))
    assert r.passed and r.summary["scope"] == "class representatives"


def test_mode_selection():
    assert vf.Context("A3", mode="rootspace").mode == "rootspace"
    with pytest.raises(OrderCapExceeded):
        vf.Context("A3", mode="full", order_cap=10)
    with pytest.raises(ValueError):
        vf.Context("A3", mode="sideways")


def test_lefschetz_rows_cover_all_involutions():
    ctx = context("D4")
    r = vf.check_lefschetz(ctx)
    assert r.passed and len(r.rows) == len(ctx.classes) == 7


def test_result_json():
    doc = vf.check_xg(context("A2")).to_json()
    assert doc["status"] == "pass" and doc["summary"]["computed"] == 2
