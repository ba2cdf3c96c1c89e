import pytest

# lines recorded by the acceptance suite, printed once at the end of the run
ACCEPTANCE_LINES: list[str] = []


def pytest_addoption(parser):
    parser.addoption("--long", action="store_true", default=False,
                     help="also run the order 5^6 checks (about half a minute)")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--long"):
        return
    skip = pytest.mark.skip(reason="needs --long")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
        if not any(line.startswith("criterion 11:") for line in ACCEPTANCE_LINES):
            terminalreporter.write_line("criterion 11: SKIP (optional, run with --long)")
