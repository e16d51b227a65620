import pytest

from preplab.suite import SUITES, SuiteConfig, run_case, run_suite


def test_default_config_is_green():
    summaries = run_suite(SuiteConfig(cases=10))
    assert [s.suite for s in summaries] == list(SUITES)
    assert all(s.failures == 0 and s.cases == 10 for s in summaries), \
        [s.messages for s in summaries]


def test_filter_selects_only_named_suites():
    summaries = run_suite(SuiteConfig(suites=["lines"], cases=5))
    assert [(s.suite, s.cases) for s in summaries] == [("lines", 5)]


def test_injected_fault_is_caught():
    summaries = run_suite(SuiteConfig(suites=["arith", "lines"], cases=2, inject_fault=True))
    assert [s.failures for s in summaries] == [1, 1]
    assert "injected fault" in summaries[0].messages[0]


def test_unknown_suite():
    with pytest.raises(KeyError):
        run_suite(SuiteConfig(suites=["nope"]))


def test_cases_are_deterministic_and_order_free():
    jobs = [("obstruction", 3, i, False) for i in range(6)]
    first = [run_case(j)[:3] for j in jobs]
    again = [run_case(j)[:3] for j in reversed(jobs)][::-1]
    assert first == again


def test_parallel_matches_serial():
    serial = run_suite(SuiteConfig(seed=5, cases=8))
    parallel = run_suite(SuiteConfig(seed=5, cases=8, workers=2))
    assert [(s.suite, s.cases, s.failures) for s in serial] == \
        [(s.suite, s.cases, s.failures) for s in parallel]


def test_summary_json_shape():
    doc = run_suite(SuiteConfig(suites=["family"], cases=2))[0].to_json()
    assert set(doc) >= {"schema", "suite", "cases", "failures", "elapsed"}
