"""Scalar quantities and the inequality evaluator against the frozen oracle."""

import numpy as np
import pytest

import oracle
from oracle import FROZEN
from skewcal.linalg import DensityMatrix, matrix_power, random_density, random_hermitian
from skewcal.monotone import MonotoneFunction, from_key, harmonic, sld, wyd
from skewcal.qinfo import (
    UncertaintyReport,
    beta_correlation,
    beta_information,
    centered,
    covariance,
    evaluate_inequalities,
    expectation,
    f_correlation,
    f_information,
    heisenberg_bound,
    variance,
)

ALL_KEYS = ("wyd:0.1", "wyd:0.5", "wyd:0.9", "sld", "harmonic")


def _random_instance(dim, tag):
    rho = random_density(dim, seed=1000 * dim + tag)
    a = random_hermitian(dim, seed=1000 * dim + tag + 1)
    b = random_hermitian(dim, seed=1000 * dim + tag + 2)
    return rho, a, b


def test_oracle_generators_reproduce_frozen_literals():
    scalars = oracle.fixture_scalars_mp(0.5)
    assert scalars["var_a"] == FROZEN["fixture_var_a"]
    assert scalars["var_b"] == FROZEN["fixture_var_b"]
    assert scalars["cov_ab"] == FROZEN["fixture_cov_ab"]
    assert scalars["corr_ab"] == FROZEN["fixture_corr_ab"]
    assert scalars["info_a"] == FROZEN["fixture_info_wyd_half"]
    assert scalars["info_b"] == FROZEN["fixture_info_wyd_half"]
    assert scalars["lhs"] == FROZEN["fixture_lhs"]
    assert scalars["rhs"] == FROZEN["fixture_rhs_wyd_half"]
    assert scalars["gap"] == FROZEN["fixture_gap_wyd_half"]
    assert scalars["heisenberg_rhs"] == FROZEN["fixture_heisenberg"]
    assert float(oracle.wyd_f_mp(0.3, 2.0)) == FROZEN["wyd_f_beta03_x2"]
    assert float(oracle.wyd_f_mp(0.5, 2.0)) == FROZEN["wyd_f_beta05_x2"]
    assert float(oracle.wyd_f_mp(0.1, 10.0)) == FROZEN["wyd_f_beta01_x10"]
    assert float(oracle.wyd_tilde_mp(0.3, 2.0)) == FROZEN["wyd_tilde_beta03_x2"]
    assert float(oracle.wyd_tilde_mp(0.5, 3.0)) == FROZEN["wyd_tilde_beta05_x3"]
    assert oracle.fixture_kernel_entry_mp(0.5) == FROZEN["fixture_kernel_entry_wyd_half"]
    sld_tilde = lambda x: oracle.tilde_from_values_mp(0.5, oracle.sld_f_mp(x), x)
    harm_tilde = lambda x: oracle.tilde_from_values_mp(0.0, oracle.harmonic_f_mp(x), x)
    assert oracle.fixture_kernel_info_mp(sld_tilde) == FROZEN["fixture_info_sld"]
    assert oracle.fixture_kernel_info_mp(harm_tilde) == FROZEN["fixture_info_harmonic"]
    wyd_tilde = lambda x: oracle.wyd_tilde_mp(0.5, x)
    assert oracle.fixture_kernel_info_mp(wyd_tilde) == FROZEN["fixture_info_wyd_half"]


def test_fixture_scalars_standalone_routes(fixture_rho, fixture_a, fixture_b):
    f = wyd(0.5)
    assert variance(fixture_rho, fixture_a) == pytest.approx(FROZEN["fixture_var_a"], abs=1e-10)
    assert variance(fixture_rho, fixture_b) == pytest.approx(FROZEN["fixture_var_b"], abs=1e-10)
    assert covariance(fixture_rho, fixture_a, fixture_b) == pytest.approx(0.0, abs=1e-10)
    assert f_information(fixture_rho, f, fixture_a) == pytest.approx(
        FROZEN["fixture_info_wyd_half"], abs=1e-10
    )
    assert beta_information(fixture_rho, 0.5, fixture_a) == pytest.approx(
        FROZEN["fixture_info_wyd_half"], abs=1e-10
    )
    assert f_correlation(fixture_rho, f, fixture_a, fixture_b) == pytest.approx(0.0, abs=1e-10)
    assert heisenberg_bound(fixture_rho, fixture_a, fixture_b) == pytest.approx(
        FROZEN["fixture_heisenberg"], abs=1e-10
    )


def test_fixture_report_matches_oracle(fixture_rho, fixture_a, fixture_b):
    report = evaluate_inequalities(fixture_rho, wyd(0.5), fixture_a, fixture_b)
    assert report.var_a == pytest.approx(FROZEN["fixture_var_a"], abs=1e-10)
    assert report.var_b == pytest.approx(FROZEN["fixture_var_b"], abs=1e-10)
    assert report.cov_ab == pytest.approx(FROZEN["fixture_cov_ab"], abs=1e-10)
    assert report.info_a == pytest.approx(FROZEN["fixture_info_wyd_half"], abs=1e-10)
    assert report.info_b == pytest.approx(FROZEN["fixture_info_wyd_half"], abs=1e-10)
    assert report.corr_ab == pytest.approx(FROZEN["fixture_corr_ab"], abs=1e-10)
    assert report.lhs == pytest.approx(FROZEN["fixture_lhs"], abs=1e-10)
    assert report.rhs == pytest.approx(FROZEN["fixture_rhs_wyd_half"], abs=1e-10)
    assert report.gap == pytest.approx(FROZEN["fixture_gap_wyd_half"], abs=1e-10)
    assert report.heisenberg_rhs == pytest.approx(FROZEN["fixture_heisenberg"], abs=1e-10)
    assert report.flags == ()
    assert max(report.path_residuals) < 1e-13


def test_fixture_fixed_entry_informations(fixture_rho, fixture_a):
    assert f_information(fixture_rho, sld(), fixture_a) == pytest.approx(
        FROZEN["fixture_info_sld"], abs=1e-12
    )
    assert f_information(fixture_rho, harmonic(), fixture_a) == pytest.approx(
        FROZEN["fixture_info_harmonic"], abs=1e-12
    )


def test_harmonic_information_vanishes_identically():
    # the f(0) = 0 entry has tilde = (x + 1)/2, which collapses the
    # correlation to zero for every state and observable
    for dim in (2, 4, 6):
        rho, a, b = _random_instance(dim, tag=3)
        assert f_information(rho, harmonic(), a) == pytest.approx(0.0, abs=1e-10)
        assert f_correlation(rho, harmonic(), a, b) == pytest.approx(0.0, abs=1e-10)


@pytest.mark.parametrize("dim", [2, 3, 5, 8])
@pytest.mark.parametrize("key", ALL_KEYS)
def test_report_fields_match_standalone_functions(dim, key):
    rho, a, b = _random_instance(dim, tag=11)
    f = from_key(key)
    report = evaluate_inequalities(rho, f, a, b)
    expected = {
        "var_a": variance(rho, a),
        "var_b": variance(rho, b),
        "cov_ab": covariance(rho, a, b),
        "info_a": f_information(rho, f, a),
        "info_b": f_information(rho, f, b),
        "corr_ab": f_correlation(rho, f, a, b),
        "heisenberg_rhs": heisenberg_bound(rho, a, b),
    }
    for field, value in expected.items():
        assert getattr(report, field) == pytest.approx(value, abs=1e-11 * max(1.0, abs(value)))
    assert report.gap == pytest.approx(report.lhs - report.rhs, abs=0.0)
    assert report.flags == ()


@pytest.mark.parametrize("beta", [0.1, 0.35, 0.5, 0.65, 0.9])
def test_kernel_route_agrees_with_power_route(beta):
    for dim in (2, 3, 5, 7):
        rho, a, b = _random_instance(dim, tag=17)
        f = wyd(beta)
        assert abs(f_correlation(rho, f, a, b) - beta_correlation(rho, beta, a, b)) <= 1e-9
        assert abs(f_information(rho, f, a) - beta_information(rho, beta, a)) <= 1e-9


def test_expectation_and_centering():
    rho, a, _ = _random_instance(3, tag=23)
    a0 = centered(rho, a)
    assert expectation(rho, a0) == pytest.approx(0.0, abs=1e-13)
    assert variance(rho, a) == pytest.approx(
        float(np.trace(rho.matrix @ a0 @ a0).real), abs=1e-12
    )


@pytest.mark.parametrize("key", ALL_KEYS)
def test_scalars_invariant_under_recentering(key):
    rho, a, b = _random_instance(4, tag=29)
    f = from_key(key)
    shifted = a.matrix + 2.5 * np.eye(4)
    assert covariance(rho, shifted, b) == pytest.approx(covariance(rho, a, b), abs=1e-10)
    assert f_correlation(rho, f, shifted, b) == pytest.approx(
        f_correlation(rho, f, a, b), abs=1e-10
    )
    assert f_information(rho, f, shifted) == pytest.approx(f_information(rho, f, a), abs=1e-10)
    assert heisenberg_bound(rho, shifted, b) == pytest.approx(
        heisenberg_bound(rho, a, b), abs=1e-10
    )


def test_scalars_invariant_under_unitary_conjugation():
    rho, a, b = _random_instance(4, tag=31)
    g = np.random.default_rng(127).standard_normal((4, 4)) + 1j * np.random.default_rng(
        128
    ).standard_normal((4, 4))
    u, _ = np.linalg.qr(g)
    rho_u = DensityMatrix(u @ rho.matrix @ u.conj().T)
    a_u = u @ a.matrix @ u.conj().T
    b_u = u @ b.matrix @ u.conj().T
    f = wyd(0.3)
    assert variance(rho_u, a_u) == pytest.approx(variance(rho, a), abs=1e-9)
    assert covariance(rho_u, a_u, b_u) == pytest.approx(covariance(rho, a, b), abs=1e-9)
    assert f_correlation(rho_u, f, a_u, b_u) == pytest.approx(
        f_correlation(rho, f, a, b), abs=1e-9
    )
    assert heisenberg_bound(rho_u, a_u, b_u) == pytest.approx(
        heisenberg_bound(rho, a, b), abs=1e-9
    )


def test_covariance_and_correlation_are_symmetric():
    rho, a, b = _random_instance(5, tag=37)
    assert covariance(rho, a, b) == pytest.approx(covariance(rho, b, a), abs=1e-12)
    f = wyd(0.25)
    assert f_correlation(rho, f, a, b) == pytest.approx(f_correlation(rho, f, b, a), abs=1e-12)


def test_diagonal_aliases():
    rho, a, _ = _random_instance(3, tag=41)
    assert variance(rho, a) == covariance(rho, a, a)
    f = sld()
    assert f_information(rho, f, a) == f_correlation(rho, f, a, a)
    assert beta_information(rho, 0.4, a) == beta_correlation(rho, 0.4, a, a)


def test_half_beta_matches_commutator_formula():
    # at beta = 1/2 the information equals -Tr([sqrt(rho), A]^2) / 2
    rho, a, _ = _random_instance(4, tag=43)
    root = matrix_power(rho, 0.5).matrix
    comm = root @ a.matrix - a.matrix @ root
    expected = -0.5 * float(np.trace(comm @ comm).real)
    assert beta_information(rho, 0.5, a) == pytest.approx(expected, abs=1e-11)
    assert f_information(rho, wyd(0.5), a) == pytest.approx(expected, abs=1e-9)


def test_flags_fire_on_invalid_profile(fixture_rho, fixture_a, fixture_b):
    # an inflated f(0) drives the kernel outside its envelope, producing
    # negative informations and a broken main inequality; the evaluator
    # must flag rather than raise
    bogus = MonotoneFunction("bogus", (), sld().evaluate, 10.0)
    report = evaluate_inequalities(fixture_rho, bogus, fixture_a, fixture_b)
    assert "main_inequality_violation" in report.flags
    mild = MonotoneFunction("mild", (), sld().evaluate, -1.0)
    report = evaluate_inequalities(fixture_rho, mild, fixture_a, fixture_b)
    assert "negative_info_a" in report.flags
    assert "negative_info_b" in report.flags


def test_evaluate_validates_inputs(fixture_rho, fixture_a, fixture_b):
    with pytest.raises(ValueError, match="tol"):
        evaluate_inequalities(fixture_rho, sld(), fixture_a, fixture_b, tol=0.0)
    with pytest.raises(ValueError, match="shape"):
        evaluate_inequalities(fixture_rho, sld(), np.eye(3), fixture_b)


def test_report_to_dict_layout(fixture_rho, fixture_a, fixture_b):
    report = evaluate_inequalities(fixture_rho, wyd(0.5), fixture_a, fixture_b)
    data = report.to_dict()
    assert set(data) == {
        "var_a",
        "var_b",
        "cov_ab",
        "info_a",
        "info_b",
        "corr_ab",
        "lhs",
        "rhs",
        "gap",
        "heisenberg_rhs",
        "residuals",
        "flags",
    }
    assert data["residuals"] == list(report.path_residuals)
    assert data["flags"] == []
    assert len(data["residuals"]) == 3  # three cross-route checks per wyd entry
    assert isinstance(report, UncertaintyReport)


def test_fixed_entries_report_no_residuals(fixture_rho, fixture_a, fixture_b):
    for f in (sld(), harmonic()):
        report = evaluate_inequalities(fixture_rho, f, fixture_a, fixture_b)
        assert report.path_residuals == ()
        assert report.flags == ()
