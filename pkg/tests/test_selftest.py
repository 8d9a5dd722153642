import pytest

from gradlab.core.selftest import SelfTest, SuiteResult


@pytest.fixture(scope="module")
def selftest():
    return SelfTest(seed=7, field_cases=300)


@pytest.mark.parametrize("name", ["field_axioms", "linalg", "smith", "orthogonality", "relations"])
def test_suite_passes(selftest, name):
    (result,) = selftest.run([name])
    assert result.name == name
    assert result.cases > 0
    assert result.passed, result.failures


def test_orthogonality_case_count(selftest):
    (result,) = selftest.run(["orthogonality"])
    assert result.cases == 8 + 14 + 7 * 6


@pytest.mark.slow
def test_field_axioms_default_cases():
    result = SelfTest().field_axioms()
    assert result.cases == 10_000
    assert result.failures == []
    assert result.passed


@pytest.mark.slow
def test_jacobi(selftest):
    (result,) = selftest.run(["jacobi"])
    assert result.passed
    assert result.cases == 378 + 3276


def test_unknown_suite(selftest):
    with pytest.raises(KeyError):
        selftest.run(["nope"])


def test_failure_cap():
    result = SuiteResult("x")
    for k in range(20):
        result.fail(str(k))
    assert len(result.failures) == 10
    assert result.to_dict() == {"name": "x", "passed": False, "cases": 0, "failures": [str(k) for k in range(10)]}
