import pytest

from tensorwave.verify import (
    invariants_suite,
    maxwell_suite,
    ortho_suite,
    run_suite,
)

EXPECTED_CHECK_KEYS = {"check", "max_error", "tolerance", "pass"}


def assert_clean_report(report):
    assert len(report) > 0
    for entry in report:
        assert set(entry) == EXPECTED_CHECK_KEYS
        assert entry["max_error"] <= entry["tolerance"]
        assert entry["pass"] is True


def test_ortho_suite_passes_at_small_lmax():
    report = ortho_suite(lmax=2)
    assert_clean_report(report)
    names = {entry["check"] for entry in report}
    assert "f_gram_identity" in names
    assert "quadrature_convergence" in names


def test_invariants_suite_passes_at_small_lmax():
    report = invariants_suite(lmax=2, n_points=40)
    assert_clean_report(report)
    names = {entry["check"] for entry in report}
    assert {"trace_identity", "det_identity", "l_squared_eigenrelation"} <= names


def test_maxwell_suite_passes():
    report = maxwell_suite(lmax=2)
    assert_clean_report(report)
    names = {entry["check"] for entry in report}
    assert names == {
        "curl_equations",
        "wtheta_ode_residual",
        "propagate_vs_closed_form",
    }


def test_run_suite_dispatch_and_overrides():
    report = run_suite("ortho", lmax=1)
    assert_clean_report(report)
    # an absurdly tight tolerance flips checks to failing without raising
    strict = run_suite("invariants", lmax=1, tol=1e-30)
    assert any(entry["pass"] is False for entry in strict)
    by_name = {entry["check"]: entry for entry in strict}
    assert by_name["trace_identity"]["tolerance"] == 1e-30
    assert by_name["trace_identity"]["pass"] is False


def test_run_suite_rejects_bad_arguments():
    with pytest.raises(ValueError, match="unknown suite"):
        run_suite("bogus")
    with pytest.raises(ValueError, match="lmax"):
        run_suite("ortho", lmax=0)
    with pytest.raises(ValueError, match="positive"):
        run_suite("ortho", tol=-1.0)
