import numpy as np
import pytest

from qse_toolkit.verify import SUITES, SuiteResult, run_verify


def test_suite_result_bookkeeping():
    r = SuiteResult("x")
    r.check(1.0, 2.0)
    assert r.passed and r.worst == -1.0
    r.check(3.0, 2.0, "too big")
    r.require(False, "broken")
    assert not r.passed and r.failed == 2 and r.checked == 3
    assert r.line().startswith("FAIL x: 1/3 ok")
    assert not SuiteResult("empty").passed


def test_trials_must_be_positive():
    with pytest.raises(ValueError):
        run_verify(0)


def test_unknown_suite():
    with pytest.raises(ValueError):
        run_verify(1, suites=["nope"])


def test_subset_is_order_independent():
    alone = run_verify(4, seed=7, suites=["kraus_vs_affine"]).suites[0]
    together = [s for s in run_verify(4, seed=7, suites=["pauli_roundtrip", "kraus_vs_affine"]).suites
                if s.name == "kraus_vs_affine"][0]
    assert alone.worst == together.worst and alone.checked == together.checked


def test_deterministic():
    a = run_verify(3, seed=11, suites=["steering_membership", "slocc_invariance"])
    b = run_verify(3, seed=11, suites=["steering_membership", "slocc_invariance"])
    assert a.lines() == b.lines()


def test_inflated_length_fails_monotonicity():
    report = run_verify(20, seed=42, suites=["length_monotonicity"], inflate_length=1e-3)
    assert not report.ok and "FAILURES" in report.lines()[-1]


def test_progress_callback():
    seen = []
    run_verify(1, suites=["pauli_roundtrip"], progress=seen.append)
    assert [s.name for s in seen] == ["pauli_roundtrip"]


@pytest.mark.slow
def test_seed_42_trials_100_all_pass():
    report = run_verify(100, seed=42)
    assert [s.name for s in report.suites] == list(SUITES)
    assert report.ok, "\n".join(report.lines())
