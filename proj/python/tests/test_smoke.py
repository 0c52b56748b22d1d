import math

import pytest

import bergman


def test_square_rho1_is_one_sixth():
    sq = bergman.Polygon([(-0.5, -0.5), (0.5, -0.5), (0.5, 0.5), (-0.5, 0.5)])
    assert sq.area == pytest.approx(1.0)
    r = bergman.rho_n(sq, 1)
    assert r["value"] == pytest.approx(1 / 6, rel=1e-15)
    assert r["certified_digits"] > 30


def test_windmill_closed_form_matches_solver():
    for a in (0.5, 1.0, 5.0):
        w = bergman.make_windmill(a)
        expected = (3 * math.sqrt(3) + 4 / a**2 + 27 * a**2) / 162
        assert bergman.rho_n(w, 1)["value"] == pytest.approx(expected, rel=1e-12)
        assert bergman.windmill_rho_closed(a, 2) == pytest.approx(bergman.rho2_closed(w), rel=1e-12)


def test_oracle_agrees():
    p = bergman.make_regular_ngon(5)
    assert bergman.oracle_rho_n(p, 6) == pytest.approx(bergman.rho_n(p, 6)["value"], rel=1e-8)


def test_moments_and_partials():
    p = bergman.make_windmill(2.0)
    assert bergman.complex_moment(p, 0, 0) == pytest.approx(1.0)
    partials = bergman.rho_n(p, 4)["partials"]
    assert all(b <= a for a, b in zip(partials, partials[1:]))


def test_threshold_and_critical_points():
    _, threshold = bergman.t_star()
    assert threshold == pytest.approx(1.86637, abs=5e-6)
    pts = bergman.critical_points("triangle-base:3", "lambda", 0.0, 3.0, 2)
    maxima = sorted(x for x, kind, _ in pts if kind == "LocalMax")
    assert maxima == pytest.approx([1.5 - 0.86508, 1.5 + 0.86508], abs=1e-4)


def test_pentagon_grid_peak():
    g = bergman.pentagon_grid((107.5, 108.5), (107.5, 108.5), 3, 6)
    assert g["argmax"] == [108.0, 108.0]
    assert g["csv"].startswith("param1,param2,rho_N,feasible\n")


def test_errors_carry_a_kind():
    with pytest.raises(bergman.BergmanError) as info:
        bergman.make_windmill(0.1)
    assert info.value.kind == "DegenerateFamilyParameter"
    with pytest.raises(ValueError):
        bergman.Polygon([(0, 0), (1, 0)])


def test_verify_subset():
    results = bergman.verify(only=[1, 3])
    assert [r["id"] for r in results] == [1, 3]
    assert all(r["passed"] for r in results)
