import sys
from pathlib import Path

import pytest

from pamono.core import from_rows
from pamono.enumeration import EnumerationRequest, Mode, enumerate_double, enumerate_pm, monoid_tables
from pamono.generators import category_to_pm, interval_category

sys.path.insert(0, str(Path(__file__).parent))

FIXTURES = Path(__file__).parent / "fixtures"


@pytest.fixture(scope="session")
def pms_by_size():
    return {k: enumerate_pm(EnumerationRequest(k)).structures for k in (1, 2, 3)}


@pytest.fixture(scope="session")
def doubles_by_size():
    return {k: enumerate_double(EnumerationRequest(k, mode=Mode.DOUBLE)).structures for k in (1, 2, 3)}


@pytest.fixture(scope="session")
def monoids_up_to_4():
    return [table for k in range(1, 5) for table in monoid_tables(k)]


@pytest.fixture
def trivial():
    return from_rows([0], [0], [[0]])


@pytest.fixture
def z2():
    # a is the unit
    return from_rows([0, 0], [0, 0], [[0, 1], [1, 0]], names=("a", "b"))


@pytest.fixture
def idempotent_monoid():
    return from_rows([0, 0], [0, 0], [[0, 1], [1, 1]], names=("e", "a"))


@pytest.fixture
def interval():
    # id_A, id_B, f : A -> B
    return category_to_pm(interval_category())


# --- acceptance summary ------------------------------------------------------

_ACCEPTANCE_KEY = pytest.StashKey[list]()


def pytest_configure(config):
    config.stash[_ACCEPTANCE_KEY] = []


@pytest.fixture
def acceptance_log(request):
    return request.config.stash[_ACCEPTANCE_KEY]


def pytest_terminal_summary(terminalreporter, config):
    rows = config.stash.get(_ACCEPTANCE_KEY, [])
    if not rows:
        return
    terminalreporter.section("acceptance criteria")
    for number, title, ok, note in sorted(rows):
        suffix = f" ({note})" if note else ""
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'} criterion {number}: {title}{suffix}")
