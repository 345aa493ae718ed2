import json
from pathlib import Path

import pytest

ORACLE_FILE = Path(__file__).with_name("oracles.json")


@pytest.fixture(scope="session")
def golden():
    """Frozen mpmath values; regenerate with ``python3 tests/make_oracles.py``."""
    raw = json.loads(ORACLE_FILE.read_text())
    return {k: float(v) for k, v in raw.items()}


def pytest_configure(config):
    config.acceptance_lines = []


@pytest.fixture
def verdict(request):
    """Record one PASS/FAIL line for an acceptance criterion and return the flag."""
    def record(number: int, ok: bool, detail: str) -> bool:
        line = f"{'PASS' if ok else 'FAIL'} criterion {number}: {detail}"
        request.config.acceptance_lines.append(line)
        print(line)
        return ok
    return record


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = getattr(config, "acceptance_lines", [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines, key=lambda s: int(s.split()[2].rstrip(":"))):
            terminalreporter.write_line(line)
