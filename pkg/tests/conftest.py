import pytest

_criteria: dict[int, list] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n): acceptance criterion number n")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None or not (rep.when == "call" or rep.failed or rep.skipped):
        return
    details = [v for k, v in item.user_properties if k == "detail"]
    _criteria.setdefault(marker.args[0], []).append((rep.outcome, details))


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_criteria):
        results = _criteria[n]
        ok = all(outcome == "passed" for outcome, _ in results)
        details = "; ".join(d for _, ds in results for d in ds)
        terminalreporter.write_line(f"criterion {n}: {'PASS' if ok else 'FAIL'} {details}".rstrip())
