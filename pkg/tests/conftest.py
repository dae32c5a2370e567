import json
from pathlib import Path

import pytest

import evipath

FIXTURE = Path(evipath.__file__).parent / "data" / "fig1_fixture.json"


@pytest.fixture
def fig1():
    return evipath.figure1_fixture()


@pytest.fixture
def fig1_path():
    return FIXTURE


@pytest.fixture
def fig1_raw():
    return json.loads(FIXTURE.read_text())


@pytest.fixture
def minimal_raw():
    return [{
        "title": "Espoo",
        "sents": [["Espoo", "is", "in", "Finland"]],
        "vertexSet": [
            [{"name": "Espoo", "sent_id": 0, "pos": [0, 1], "type": "LOC"}],
            [{"name": "Finland", "sent_id": 0, "pos": [3, 4], "type": "LOC"}],
        ],
        "labels": [{"h": 0, "t": 1, "r": "P17", "evidence": [0]}],
    }]


_CRITERIA: dict[int, list] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None:
        return
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        number, title = mark.args
        status = {"passed": "PASS", "failed": "FAIL", "skipped": "SKIP"}[report.outcome]
        entry = _CRITERIA.setdefault(number, [title, []])
        entry[1].append((item.name, status))


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_CRITERIA):
        title, results = _CRITERIA[number]
        statuses = {s for _, s in results}
        overall = "FAIL" if "FAIL" in statuses else ("SKIP" if statuses == {"SKIP"} else "PASS")
        detail = ", ".join(f"{name}={s}" for name, s in results)
        terminalreporter.write_line(f"criterion {number} [{overall}] {title} :: {detail}")
