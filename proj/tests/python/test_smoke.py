"""Smoke tests for the python bindings: one end-to-end pass over every
exposed operation, with values pinned by the C++ suites."""

import math

import pytest

import tworiem


def test_version():
    assert tworiem.__version__


def test_expression_evaluation():
    assert tworiem.eval_expr("x^2 + y", ["x", "y"], [2.0, 3.0]) == 7.0
    d = tworiem.eval_derivative("x^2 + y", ["x", "y"], [3.0, 0.0], 0)
    assert d == pytest.approx(6.0)
    with pytest.raises(tworiem.DomainError):
        tworiem.eval_expr("ln(x)", ["x"], [-1.0])


def test_metric_values():
    gst = {"kind": "standard"}
    v = tworiem.g_value(gst, 2, [["1", "0"], ["1", "0"], ["0", "1"]], [0.3, 0.4])
    assert v == pytest.approx(1.0)

    conf = {"kind": "conformal", "lambda": "exp(x)", "base": {"kind": "standard"}}
    v = tworiem.g_value(conf, 2, [["1", "0"], ["1", "0"], ["0", "1"]], [1.0, 0.0])
    assert v == pytest.approx(math.e)


def test_g_value_accepts_json_text():
    v = tworiem._core.g_value('{"kind": "standard"}', 2,
                              [["1", "0"], ["1", "0"], ["0", "1"]], [0.0, 0.0])
    assert v == pytest.approx(1.0)


def test_pseudoconnection_value():
    v = tworiem.pseudoconnection_value(
        {"kind": "standard"}, 2,
        [["1", "0"], ["0", "x"], ["0", "1"], ["1", "0"]], [0.5, -0.5])
    assert v == pytest.approx(1.0)


def test_curvature_witness():
    w = tworiem.curvature_witness({"kind": "standard"}, 2)
    assert w["found"]
    assert w["normalized"] > 0.1


def test_scenario_roundtrip():
    scenario = {
        "dimension": 2,
        "coords": ["x", "y"],
        "box": [[-2, 2], [-2, 2]],
        "metric": {"kind": "standard"},
        "fields": {"e1": ["1", "0"], "shear": ["0", "x"], "e2": ["0", "1"]},
        "random_points": 5,
        "seed": 42,
        "checks": [{"name": "torsion-free", "fields": ["e1", "shear", "e2", "e1"]}],
    }
    report = tworiem.verify(scenario)
    assert report["summary"] == {"pass": 1, "fail": 0, "error": 0}
    assert report["checks"][0]["status"] == "pass"

    with pytest.raises(tworiem.ScenarioParseError):
        tworiem.verify("{bad json")


def test_flatten2d():
    out = tworiem.flatten2d("1 + x^2", box=[(-1, 1), (-1, 1)])
    assert out["pass"]
    assert out["max_jacobian_defect"] < 1e-8


def test_classify_conformal3d():
    out = tworiem.classify_conformal3d("exp(x1)")
    assert out["verdict"] == "NON-FLAT"
    assert out["fit_residual"] > 1e-2

    flat = tworiem.classify_conformal3d("4")
    assert flat["verdict"] == "FLAT-constant"


def test_stationarity():
    rot = tworiem.stationarity(["-y", "x"])
    assert rot["verdict"] == "stationary-on-catalog"

    rad = tworiem.stationarity(["x", "y"])
    assert rad["verdict"] == "non-stationary"
    assert "witness" in rad
