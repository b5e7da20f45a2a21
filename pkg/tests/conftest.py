import pytest

from tricat import bundled_model
from tricat.classes import Evaluator
from tricat.model import UniverseSpec
from tricat.verifier import Context


@pytest.fixture(scope="session")
def semisimple():
    return bundled_model("semisimple")


@pytest.fixture(scope="session")
def a2():
    return bundled_model("derived_A2")


@pytest.fixture(scope="session")
def cluster():
    return bundled_model("cluster_A2")


@pytest.fixture(scope="session")
def a2_ev(a2):
    return Evaluator(a2, UniverseSpec())


@pytest.fixture(scope="session")
def a2_ctx(a2, a2_ev):
    return Context(a2, UniverseSpec(), a2_ev)


@pytest.fixture(scope="session")
def cluster_ev(cluster):
    return Evaluator(cluster, UniverseSpec())


@pytest.fixture(scope="session")
def semisimple_ev(semisimple):
    return Evaluator(semisimple, UniverseSpec())


@pytest.fixture(scope="session")
def generated():
    from tricat.gen import gen_cluster_An, gen_derived_An, gen_semisimple
    return {"semisimple": gen_semisimple(1, 1), "derived": gen_derived_An(2, 4, 6),
            "cluster": gen_cluster_An(2)}


_LINES = []


@pytest.fixture
def criterion():
    """Record one pass/fail line for an acceptance criterion."""
    def record(n: int, ok: bool, detail: str) -> bool:
        line = f"criterion {n}: {'PASS' if ok else 'FAIL'}  {detail}"
        print(line)
        _LINES.append((n, line))
        return ok
    return record


def pytest_terminal_summary(terminalreporter):
    if _LINES:
        terminalreporter.section("acceptance criteria")
        for _, line in sorted(_LINES):
            terminalreporter.write_line(line)
