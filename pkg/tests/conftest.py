import functools

import pytest
from hypothesis import HealthCheck, settings

from forge.document import Workspace
from forge.fixtures import NAMES, builtin_fixture

settings.register_profile("forge", max_examples=40, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("forge")

GALOIS_FIXTURES = tuple(n for n in NAMES if n != "twisted-path")


@functools.lru_cache(maxsize=None)
def workspace(name: str) -> Workspace:
    return Workspace(builtin_fixture(name))


@functools.lru_cache(maxsize=None)
def datum(name: str, comodule: str = "M"):
    from forge.galois import galois_datum
    return galois_datum(workspace(name).comodule(comodule))


@pytest.fixture(params=NAMES)
def fixture_name(request):
    return request.param


@pytest.fixture(params=GALOIS_FIXTURES)
def galois_name(request):
    return request.param


ACCEPTANCE: dict = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        title, ok = ACCEPTANCE[n]
        terminalreporter.write_line(f"criterion {n:2d} {'PASS' if ok else 'FAIL'}  {title}")
