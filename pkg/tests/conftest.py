import sys
from functools import lru_cache
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from partpat import SetPartition, avoidance_profile  # noqa: E402

ACCEPTANCE_LINES: list[str] = []


@lru_cache(maxsize=None)
def _profile(patterns: tuple[str, ...], notion: str, N: int) -> tuple[int, ...]:
    return avoidance_profile([SetPartition.parse(p) for p in patterns], notion, N).counts


@pytest.fixture(scope="session")
def brute_profile():
    """Cached brute-force avoider counts, so suites sharing a pattern pay once."""

    def get(patterns, notion, N):
        if isinstance(patterns, (str, SetPartition)):
            patterns = [patterns]
        key = tuple(str(p) for p in patterns)
        return _profile(key, notion, N)

    return get


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
