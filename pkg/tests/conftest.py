import json
import random
from pathlib import Path

import pytest

from gabidulin_fx import FqContext, build_artin_schreier, build_code, build_kummer
from gabidulin_fx.code import random_element, random_ratfunc

DATA = Path(__file__).parent / "data"

# Filled in by tests/test_acceptance.py; printed at the end of the run.
ACCEPTANCE_LINES = []


@pytest.fixture(scope="session")
def examples():
    """Hand-transcribed worked examples (message, generator, codeword, matrix)."""
    return json.loads((DATA / "worked_examples.json").read_text(encoding="utf-8"))


@pytest.fixture(scope="session")
def F16():
    return FqContext(2, [1, 1, 0, 0, 1])


@pytest.fixture(scope="session")
def F5():
    return FqContext(5)


@pytest.fixture(scope="session")
def F2():
    return FqContext(2)


@pytest.fixture(scope="session")
def kummer(F16):
    return build_kummer(F16, "x", 5, "β^3")


@pytest.fixture(scope="session")
def artin(F5):
    return build_artin_schreier(F5, "x")


@pytest.fixture(scope="session", params=["kummer", "artin"])
def ext(request):
    return request.getfixturevalue(request.param)


@pytest.fixture(scope="session")
def kummer_code(kummer):
    return build_code(kummer, 3)


@pytest.fixture(scope="session")
def artin_code(artin):
    return build_code(artin, 3)


@pytest.fixture
def rng():
    return random.Random(20240607)


def rand_k(ctx, rng, deg=2):
    return random_ratfunc(ctx, rng, deg)


def rand_l(ext, rng, deg=2):
    return random_element(ext, rng, deg)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
