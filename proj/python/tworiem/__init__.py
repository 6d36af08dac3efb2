"""Python interface to the tworiem verification engine.

The heavy lifting happens in the compiled extension ``tworiem._core``; this
module adds dict-friendly wrappers around its JSON-returning entry points.
"""

import json as _json

from ._core import (  # noqa: F401
    DomainError,
    ScenarioParseError,
    TworiemError,
    __version__,
    eval_derivative,
    eval_expr,
)
from . import _core as _c


def _metric_text(metric):
    return metric if isinstance(metric, str) else _json.dumps(metric)


def g_value(metric, dim, slots, at):
    """g(X,Y/Z) at a point; the metric is a spec dict or JSON text."""
    return _c.g_value(_metric_text(metric), dim, slots, at)


def pseudoconnection_value(metric, dim, fields, at):
    return _c.pseudoconnection_value(_metric_text(metric), dim, fields, at)


def curvature_value(metric, dim, fields, at):
    return _c.curvature_value(_metric_text(metric), dim, fields, at)


def verify(scenario, jobs=1):
    """Run a scenario (dict or JSON text) and return the report as a dict."""
    text = scenario if isinstance(scenario, str) else _json.dumps(scenario)
    return _json.loads(_c.run_scenario_text(text, jobs))


def verify_file(path, jobs=1):
    return _json.loads(_c.run_scenario_file(str(path), jobs))


def flatten2d(g_expr, box=((0.0, 1.0), (0.0, 1.0)), tol=1e-10, grid=5):
    return _json.loads(_c.flatten2d(g_expr, list(box), tol, grid))


def classify_conformal3d(lambda_expr, box=((0.0, 1.0),) * 3, samples=400,
                         fit_tol=1e-6, seed=42):
    return _json.loads(
        _c.classify_conformal3d(lambda_expr, list(box), samples, fit_tol, seed))


def stationarity(field, lambda_expr="1", box=((-2.0, 2.0), (-2.0, 2.0)),
                 seed=42):
    return _json.loads(_c.stationarity(list(field), lambda_expr, list(box), seed))


def curvature_witness(metric, dim, box=((-2.0, 2.0), (-2.0, 2.0)),
                      threshold=0.1):
    text = metric if isinstance(metric, str) else _json.dumps(metric)
    return _json.loads(_c.curvature_witness(text, dim, list(box), threshold))
