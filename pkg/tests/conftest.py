import pytest

CRITERIA = {
    1: "AHP arithmetic on the default comparison matrix",
    2: "AHP attributes of the reconstructed alternative",
    3: "tokenization golden test",
    4: "batch extraction micro-trace",
    5: "assortativity oracle",
    6: "BArank trace and termination",
    7: "path enumeration oracle",
    8: "topological order invariant",
    9: "ROUGE oracle",
    10: "power-law exponent recovery",
    11: "synthetic end-to-end detection",
    12: "heuristic retention arithmetic",
    13: "graph build throughput",
}

_outcomes: dict[int, list[bool]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n): acceptance criterion number checked by the test")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    if rep.when == "call" or (rep.when == "setup" and not rep.passed):
        _outcomes.setdefault(marker.args[0], []).append(rep.passed)


def pytest_terminal_summary(terminalreporter):
    if not _outcomes:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(CRITERIA):
        results = _outcomes.get(n)
        if results is None:
            status = "NOT RUN"
        else:
            status = "PASS" if all(results) else "FAIL"
        terminalreporter.write_line(f"criterion {n:2d} {status:7s} {CRITERIA[n]}")
