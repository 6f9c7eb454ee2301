"""Structured Toeplitz determinants: exact identities and large-n asymptotics."""

import json as _json

from ._core import (  # noqa: F401
    BorderSpec,
    ConfigError,
    PreconditionError,
    Symbol,
    ToeplitzError,
    bordered_det,
    constant_F,
    constant_F_quotient,
    constant_H,
    constant_J1,
    constant_symbol,
    det_log,
    dodgson_residual,
    exp_laurent,
    extended_zphi_bordered_ratio,
    ising_diagonal,
    jump_g,
    lu_factorization_residual,
    predict_pure_log,
    rational,
    semi_framed_det,
    szego_constants,
    toeplitz_det,
    toeplitz_det_log,
    winding_number,
)
from . import _core


def default_config():
    """Default sweep configuration as a dict."""
    return _json.loads(_core.default_config_json())


def _run(fn, config):
    merged = default_config() if config is None else config
    return _json.loads(fn(_json.dumps(merged)))


def run_identity_suite(config=None):
    return _run(_core.run_identity_suite_json, config)


def run_convergence(config=None):
    return _run(_core.run_convergence_json, config)


def run_bench(config=None):
    return _run(_core.run_bench_json, config)
