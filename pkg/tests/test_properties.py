"""The CLI property suites must come up green under pytest as well."""

import pytest

from ghdense.properties import ALL_SUITES


@pytest.mark.parametrize("suite", ALL_SUITES, ids=lambda s: s.__name__)
def test_suite_passes(suite):
    report = suite(cases=40, seed=2024)
    assert report.ok, report.failures[:5]
    assert report.checks > 0


def test_runner_aggregates():
    from ghdense.properties import run_all

    reports = run_all(cases=5, seed=7)
    assert len(reports) == len(ALL_SUITES)
    assert all(r.ok for r in reports)
