import functools
import sys

import pytest

from parhopf.fixtures import load_fixture
from parhopf.hopf import GroupTable
from parhopf.hpar import build_kpar_group
from parhopf.linalg import F2, F3, QQ


@functools.lru_cache(maxsize=None)
def fixture(name, field=None):
    return load_fixture(name, field)


@functools.lru_cache(maxsize=None)
def kpar(n, field=QQ):
    return build_kpar_group(GroupTable.cyclic(n), field)


@pytest.fixture
def fx():
    return fixture


FIELDS = [QQ, F2, F3]


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is not None and mod.RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in mod.lines():
            terminalreporter.write_line(line)
