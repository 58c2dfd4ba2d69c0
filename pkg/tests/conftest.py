import pytest
from hypothesis import strategies as st

from cardiotriage import _purepy
from cardiotriage.dataset import builtin_table1, make_dataset
from cardiotriage.kmeans import run

try:
    from cardiotriage import _kernels
except ImportError:  # extension not built
    _kernels = None

BACKENDS = [pytest.param(_purepy, id="python")]
if _kernels is not None:
    BACKENDS.append(pytest.param(_kernels, id="cython"))


@pytest.fixture
def table1():
    return builtin_table1()


@pytest.fixture
def model3(table1):
    return run(table1, 3)


@pytest.fixture(params=BACKENDS)
def backend(request):
    return request.param


@st.composite
def binary_datasets(draw, max_n=12, max_arity=10, min_n=1, min_arity=1):
    n = draw(st.integers(min_n, max_n))
    m = draw(st.integers(min_arity, max_arity))
    rows = draw(st.lists(st.lists(st.integers(0, 1), min_size=m, max_size=m),
                         min_size=n, max_size=n))
    return make_dataset([f"f{j}" for j in range(m)],
                        [(f"id{i}", row) for i, row in enumerate(rows)])


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(name): acceptance criterion")


def pytest_terminal_summary(terminalreporter):
    outcomes = {}
    for reports in terminalreporter.stats.values():
        for rep in reports:
            nodeid = getattr(rep, "nodeid", "")
            if "test_acceptance.py::" not in nodeid or getattr(rep, "when", None) is None:
                continue
            if rep.failed or rep.when == "call":
                outcomes[nodeid] = outcomes.get(nodeid, True) and rep.passed
    if not outcomes:
        return
    from test_acceptance import ACCEPTANCE_RESULTS

    records = {r["test"]: r for r in ACCEPTANCE_RESULTS}
    terminalreporter.section("acceptance criteria")
    for nodeid, passed in sorted(outcomes.items()):
        rec = records.get(nodeid.split("::")[-1], {})
        label = rec.get("name", nodeid.split("::")[-1])
        timing = f" [{rec['elapsed']:.3f}s < {rec['limit']:g}s]" if "elapsed" in rec else ""
        detail = f" {rec['detail']}" if rec.get("detail") else ""
        terminalreporter.write_line(f"{'PASS' if passed else 'FAIL'} criterion {label}{timing}{detail}")
