"""Smoke tests for the compiled python module."""

import math

import pytest

import imglab


def test_word_arithmetic():
    assert imglab.reduce("aab") == "b"
    assert imglab.reduce("abba") == "e"
    assert imglab.multiply("ab", "ba") == "e"
    assert imglab.inverse("abc") == "cba"
    with pytest.raises(ValueError):
        imglab.reduce("xyz")


def test_sections_and_action():
    assert imglab.sections("b") == ("id", "a", "c")
    assert imglab.sections("ab") == ("swap", "c", "a")
    assert imglab.section_at("ab", "00") == "b"
    assert imglab.act("a", "01") == "11"
    assert imglab.act("c", "000") == "001"


def test_word_problem():
    assert imglab.is_trivial("acacacac")
    assert not imglab.is_trivial("acac")
    assert imglab.element_order("ab") == 8
    assert imglab.element_order("ac") == 4
    assert imglab.element_order("ab", cap=7) is None
    assert imglab.gamma_length("cacac") == 3
    assert imglab.gamma_canonical("cacac") == "aca"


def test_automaton():
    assert imglab.automaton_act("b", "01") == "00"
    assert imglab.automaton_act("b", "01") == imglab.act("b", "01")
    dot = imglab.moore_dot()
    assert dot.count("->") == 8
    data = imglab.img_automaton_json()
    assert '"states"' in data


def test_presentation():
    assert imglab.substitute("c") == "aba"
    assert imglab.relator(3, 0) == "cbacabcbacab"
    rows = imglab.verify_relators(2)
    assert len(rows) == 21
    assert all(r["verified"] for r in rows)
    assert imglab.branch_identity_check()
    hnn = imglab.hnn_presentation()
    assert len(hnn["generators"]) == 4
    assert len(hnn["relators"]) == 10


def test_schreier_and_spectra():
    adjacency = imglab.schreier_adjacency(1)
    assert adjacency.tolist() == [[2.0, 1.0], [1.0, 2.0]]
    assert imglab.schreier_connected(8)

    a, b, c = imglab.level_ops(1)
    assert a.tolist() == [[0.0, 1.0], [1.0, 0.0]]
    m1 = imglab.markov(1)
    eigs = imglab.eigenvalues(m1)
    assert math.isclose(eigs[0], 1.0 / 3, abs_tol=1e-12)
    assert math.isclose(eigs[1], 1.0, abs_tol=1e-12)

    csv = imglab.spectrum_csv(1)
    assert csv.splitlines()[0] == "eigenvalue,multiplicity"


def test_rational_maps():
    y, z, lam = imglab.map_F((1.0, 1.0, 3.0))
    assert math.isclose(y, 1.0)
    assert math.isclose(z, 1.0 / 3)
    assert math.isclose(lam, 7.0 / 3)
    with pytest.raises(ArithmeticError):
        imglab.map_F((0.0, 1.0, 1.0))
    assert imglab.variety_member((1.0, 1.0, 3.0), "P")
    assert imglab.schur_identity_residual(3, (1.0, 1.0, 3.0)) <= 1e-9
    report = imglab.inclusion_check(2)
    assert report["all_accounted"]
    assert imglab.special_point_check(4)


def test_measure():
    uniform = {"a": 1 / 3, "b": 1 / 3, "c": 1 / 3}
    r = imglab.restrict0(uniform)
    assert math.isclose(r["e"], 2 / 9, abs_tol=1e-12)
    assert math.isclose(r["c"], 1 / 9, abs_tol=1e-12)

    fp = imglab.fixed_point()
    assert math.isclose(fp["x"], 0.4786202932, abs_tol=1e-9)
    star = {"a": fp["x"], "b": fp["y"], "c": fp["z"]}
    assert imglab.self_affinity_check(star)

    walk = imglab.walk_oracle(uniform, 50000, seed=7)
    exact = {"e": 2 / 9, "a": 1 / 3, "b": 1 / 3, "c": 1 / 9}
    assert imglab.l1_distance(walk["empirical"], exact) < 0.05
    again = imglab.walk_oracle(uniform, 50000, seed=7)
    assert walk["tallies"] == again["tallies"]


def test_attractor():
    cloud = imglab.attractor_cloud(0, grid=9, box=(-2, 2, -2, 2, -2, 2))
    assert cloud.shape[1] == 3
    assert cloud.shape[0] > 0
