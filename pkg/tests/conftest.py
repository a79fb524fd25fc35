import pytest

from lapcex.enumerate import enumerate_connected


def pytest_addoption(parser):
    parser.addoption("--runslow", action="store_true", default=False,
                     help="run hours-scale checks (full subquartic scan, RL discovery)")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--runslow"):
        return
    skip = pytest.mark.skip(reason="needs --runslow")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip)


@pytest.fixture(scope="session")
def connected_by_order():
    """All connected graphs per order, shared across the suite."""
    return {n: list(enumerate_connected(n)) for n in range(2, 9)}


def pytest_terminal_summary(terminalreporter):
    """One line per acceptance criterion at the end of the run."""
    lines = []
    for status in ("passed", "failed", "skipped", "xfailed", "xpassed", "error"):
        for rep in terminalreporter.stats.get(status, []):
            name = getattr(rep, "nodeid", "")
            if "test_acceptance.py::test_criterion_" in name:
                crit = name.split("test_criterion_")[1].split("[")[0]
                lines.append((crit, status.upper()))
    if lines:
        terminalreporter.write_sep("-", "acceptance criteria")
        for crit, status in sorted(set(lines)):
            terminalreporter.write_line(f"criterion {crit}: {status}")
