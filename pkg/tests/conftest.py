import pytest
from hypothesis import settings

from e6weyl.models import build_model

settings.register_profile("ci", max_examples=40, deadline=None)
settings.load_profile("ci")


@pytest.fixture(scope="session")
def tits_model():
    return build_model("tits-oct-jordan")


@pytest.fixture(scope="session")
def elduque_model():
    return build_model("elduque")


@pytest.fixture(scope="session")
def five_model():
    return build_model("five-grading")


@pytest.fixture(scope="session")
def adams_model():
    return build_model("adams")


@pytest.fixture(scope="session")
def a1a5():
    return build_model("a1a5")


VERDICTS = pytest.StashKey[list]()


@pytest.fixture(scope="session")
def record_verdicts(request):
    """Hand acceptance results to the terminal summary."""
    def record(criteria):
        request.config.stash[VERDICTS] = list(criteria)
    return record


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    criteria = config.stash.get(VERDICTS, None)
    if not criteria:
        return
    terminalreporter.section("acceptance criteria")
    for c in criteria:
        tail = f"  (failing: {'; '.join(c.failures)})" if c.failures else ""
        terminalreporter.write_line(f"criterion {c.number}: {'PASS' if c.ok else 'FAIL'}  {c.title}{tail}")
