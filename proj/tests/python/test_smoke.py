import cmath
import math

import numpy as np
import pytest

import pytoeplitz as tp


def exp_sym(t=0.3):
    return tp.exp_laurent(0.0, [t], [t])


def border():
    b = tp.BorderSpec()
    b.a0 = 0.4 + 0.1j
    b.b = [0.5, 0.3 - 0.2j]
    b.bhat = [0.6j, -0.4]
    b.poles = [2.0, 0.5]
    return b


def test_symbol_coefficients_are_bessel_values():
    c = exp_sym().coefficients(-2, 2)
    # I_0(0.6), I_1(0.6), I_2(0.6) from mpmath
    assert abs(c[2] - 1.0920453643173395) < 1e-13
    assert abs(c[3] - 0.31370402560492212) < 1e-13
    assert abs(c[4] - 0.046365278967599102) < 1e-13
    assert abs(c[0] - c[4]) < 1e-15


def test_pure_determinant_matches_strong_szego():
    phi = exp_sym()
    g, e = tp.szego_constants(phi)
    assert abs(g - 1.0) < 1e-14
    assert abs(e - math.exp(0.09)) < 1e-14
    assert abs(tp.toeplitz_det(phi, 30) / e - 1.0) < 1e-10
    logmod, _ = tp.toeplitz_det_log(phi, 30)
    assert abs(logmod - 0.09) < 1e-10


def test_det_log_and_dodgson_on_numpy_matrix():
    rng = np.random.default_rng(5)
    a = rng.normal(size=(6, 6)) + 1j * rng.normal(size=(6, 6))
    logmod, phase = tp.det_log(a)
    assert abs(cmath.rect(math.exp(logmod), phase) - np.linalg.det(a)) < 1e-10 * abs(np.linalg.det(a))
    assert tp.dodgson_residual(a, 0, 4, 1, 5) < 1e-12


def test_bordered_constant_routes_agree():
    phi = exp_sym()
    b = border()
    f = tp.constant_F(phi, b)
    assert abs(f - tp.constant_F_quotient(phi, b.psi(phi))) < 1e-10
    logmod, phase = tp.predict_pure_log(phi, 40)
    lead = cmath.rect(math.exp(logmod), phase)
    assert abs(tp.bordered_det(phi, [b.psi(phi)], 40) / lead - f) < 1e-8


def test_validation_errors_are_mapped():
    b = tp.BorderSpec()
    b.poles = [1j]
    b.b = [1.0]
    with pytest.raises(tp.ToeplitzError):
        b.validate()
    cfg = tp.default_config()
    cfg["kind"] = "sideways"
    with pytest.raises(tp.ConfigError):
        tp.run_convergence(cfg)


def test_harness_round_trip():
    cfg = tp.default_config()
    cfg["kind"] = "two-bordered"
    cfg["n_grid"] = {"start": 10, "stop": 30, "step": 10}
    rep = tp.run_convergence(cfg)
    assert rep["pass"]
    assert [r["n"] for r in rep["rows"]] == [10, 20, 30]

    cfg["identities"].update(dci_samples=10, two_bordered_max=6, framed_max=4, bopuc_max=5,
                             lu_max=4, semiframed_max=2, jump_max=2, z_max=3, z_points=2)
    summary = tp.run_identity_suite(cfg)
    status = {r["name"]: r["status"] for r in summary["identities"]}
    assert status["z-three-way"] == "pass"
    assert status["z-three-way-constant"] == "precondition-skipped"


def test_zphi_extended_ratio():
    b = border()
    value = tp.extended_zphi_bordered_ratio(0.0, [0.3], [0.3], b, 8)
    assert math.isfinite(abs(value)) and abs(value) > 0
