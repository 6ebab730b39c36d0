"""Covariate-adjusted ROC and AUC estimation."""

import json

from ._covroc import (
    SCHEMA_VERSION,
    CovrocError,
    __version__,
    _auc,
    _bootstrap,
    _simulate,
    auc_normal,
    generate,
    mann_whitney,
    true_auc,
)

__all__ = [
    "SCHEMA_VERSION",
    "CovrocError",
    "__version__",
    "auc",
    "auc_normal",
    "bootstrap",
    "generate",
    "mann_whitney",
    "simulate",
    "true_auc",
]


def _config(estimators=("camwe",), order=1, kernel="epanechnikov", bandwidths=None, z_grid=None, clamp=False,
            log_response=False, widen_on_sparse=False, seed=0, threads=0, **extra):
    if isinstance(estimators, str):
        estimators = [estimators]
    cfg = {
        "estimators": list(estimators),
        "order": order,
        "kernel": kernel,
        "clamp": clamp,
        "log_response": log_response,
        "widen_on_sparse": widen_on_sparse,
        "seed": seed,
        "threads": threads,
    }
    if bandwidths is not None:
        h1, h2, b1, b2 = bandwidths
        cfg["bandwidths"] = {"h1": h1, "h2": h2, "b1": b1, "b2": b2}
    if z_grid is not None:
        zmin, zmax, count = z_grid
        cfg["grid"] = {"count": int(count), "zmin": zmin, "zmax": zmax}
    cfg.update(extra)
    return json.dumps(cfg)


def _columns(x, y):
    (xz, xm), (yz, ym) = x, y
    return list(map(float, xz)), list(map(float, xm)), list(map(float, yz)), list(map(float, ym))


def auc(x, y, estimators=("camwe",), **options):
    """AUC estimates over a covariate grid.

    ``x`` and ``y`` are (covariates, markers) pairs for the two populations.
    ``bandwidths`` is (h1, h2, b1, b2); leave it out for cross-validation.
    ``z_grid`` is (zmin, zmax, count). Returns the same document as
    ``covroc auc``.
    """
    return json.loads(_auc(*_columns(x, y), _config(estimators, **options)))


def bootstrap(x, y, estimator="camwe", replicates=1000, level=0.95, refit="frozen", **options):
    """Pointwise percentile band for one estimator, as ``covroc bootstrap``."""
    extra = {"bootstrap": {"replicates": replicates, "level": level, "refit_bandwidths": refit}}
    return json.loads(_bootstrap(*_columns(x, y), _config([estimator], **options, **extra)))


def simulate(scenario="normal", study="mse", runs=500, m=40, n=40, policy="", replicates=1000,
             estimators=("normal", "camwe", "kernel"), **options):
    """Monte Carlo MSE or band study, as ``covroc simulate``."""
    extra = {
        "simulate": {"study": study, "scenario": scenario, "runs": runs, "m": m, "n": n, "policy": policy},
        "bootstrap": {"replicates": replicates},
    }
    return json.loads(_simulate(_config(estimators, **options, **extra)))
