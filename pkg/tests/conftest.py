from math import gcd

import pytest

from ordered_shuffle import make_params

_criteria = {}


def pairs_upto(max_n, min_n=2):
    """All (N, k) with k >= 2 dividing N, min_n <= N <= max_n."""
    return [(N, k) for N in range(min_n, max_n + 1) for k in range(2, N + 1) if N % k == 0]


def coprime_pairs(max_n, ks=range(2, 11)):
    out = []
    for k in ks:
        for N in range(k, max_n + 1, k):
            if gcd(make_params(N, k).q, k) == 1:
                out.append((N, k))
    return out


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None or not (report.when == "call" or report.failed):
        return
    number, title = marker.args
    passed = _criteria.get(number, (title, True))[1]
    _criteria[number] = (title, passed and report.passed)


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_criteria):
        title, passed = _criteria[number]
        terminalreporter.write_line(f"criterion {number:>2}: {'PASS' if passed else 'FAIL'}  {title}")
