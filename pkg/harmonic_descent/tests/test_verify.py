import pytest
from harmonic_descent import verify
from harmonic_descent.exceptions import DomainError, VerificationError
from harmonic_descent.verify import Check, SUITES, format_report, run_suite


def _failing_suite():
    return [
        Check(name="fine", error=0.0, tolerance=1e-12),
        Check(name="broken", error=1.0, tolerance=1e-12),
    ]


@pytest.mark.parametrize("name", sorted(SUITES))
def test_suites_pass(name):
    checks = run_suite(name)
    assert checks
    failed = [c.line() for c in checks if not c.passed]
    assert not failed, "\n".join(failed)


def test_unknown_suite():
    with pytest.raises(DomainError):
        run_suite("nonexistent")


def test_failure_is_reported(monkeypatch):
    monkeypatch.setitem(verify.SUITES, "kernel", _failing_suite)
    checks = run_suite("kernel")
    report = format_report("kernel", checks)
    assert "PASS fine" in report
    assert "FAIL broken" in report
    assert "1 of 2 checks FAILED (broken)" in report
    with pytest.raises(VerificationError) as excinfo:
        run_suite("kernel", raise_on_failure=True)
    assert excinfo.value.failed == ["broken"]


def test_check_line():
    check = Check(name="x", error=2e-13, tolerance=1e-12)
    assert check.passed
    assert check.line() == "PASS x: error=2.000e-13 tolerance=1.0e-12"
