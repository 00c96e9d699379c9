"""Separation-of-variables toolkit for the antiperiodic XXZ chain."""

import json

from ._core import (
    CertificationError,
    ConfigError,
    ConvergenceError,
    DegeneracyError,
    DimensionError,
    EigenRecord,
    Error,
    ModelParams,
    ParameterError,
    Poly,
    PreconditionError,
    SingularError,
    SizeError,
    dense_form_factor,
    form_factor,
    generate_xi,
    solve_spectrum,
    sp_direct,
    sp_izergin,
    sp_slavnov,
    sp_tau,
    transfer_matrix,
)
from ._core import run_report as _run_report


def run(command, config=None, seed=None, tol=None):
    """Run a CLI report in process and return it as a dict."""
    text = _run_report(command, json.dumps(config or {}), seed, list(tol or []))
    return json.loads(text)


__all__ = [name for name in dir() if not name.startswith("_")] + ["run"]
