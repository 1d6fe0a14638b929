import sys
from functools import lru_cache

import pytest

from coverwreath.ff import Field, prime_power
from coverwreath.grp import GroupCtx


@lru_cache(maxsize=None)
def make_ctx(n, q, m=1):
    """SL_n(q)/K with |K| = m; cached because the tables are reused a lot."""
    p, k = prime_power(q)
    return GroupCtx(Field(p, k), n, m)


@pytest.fixture(scope="session")
def ctx():
    return make_ctx


def pytest_terminal_summary(terminalreporter):
    acceptance = sys.modules.get("test_acceptance")
    lines = getattr(acceptance, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
