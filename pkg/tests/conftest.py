import sys
from pathlib import Path

import pytest

from amrsum import Document, parse_penman

DATA = Path(__file__).parent / "data"
TOOLS = Path(__file__).parent / "tools"

# One visible verdict line per acceptance criterion, printed in the
# terminal summary so capture settings cannot hide them.
_acceptance_outcomes: list[tuple[str, str]] = []


def pytest_runtest_logreport(report):
    if report.when == "call" and "test_acceptance.py" in report.nodeid:
        _acceptance_outcomes.append(
            (report.nodeid.split("::")[-1], report.outcome)
        )


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not _acceptance_outcomes:
        return
    terminalreporter.section("acceptance criteria")
    for name, outcome in _acceptance_outcomes:
        mark = "PASS" if outcome == "passed" else "FAIL"
        terminalreporter.write_line(f"{mark} {name}")


def parser_cmd(mode: str = "empty") -> list[str]:
    return [sys.executable, str(TOOLS / "stub_parser.py"), mode]


def generator_cmd(mode: str = "concepts", *extra: str) -> list[str]:
    return [sys.executable, str(TOOLS / "stub_generator.py"), mode, *extra]


@pytest.fixture
def mini_gold_path() -> Path:
    return DATA / "mini_gold.amr"


@pytest.fixture
def tiny_story_path() -> Path:
    return DATA / "tiny.story"


@pytest.fixture
def reentrant_graph():
    return parse_penman(
        "(l / look-01 :ARG0 (i / i) :manner (c / careful)"
        " :direction (a / around :op1 i))"
    )


@pytest.fixture
def cause_graph():
    return parse_penman(
        '(c / cause-01 :ARG1 (r / run-02 :ARG0 (p / person'
        ' :name (n / name :op1 "Ann"))))'
    )


@pytest.fixture
def ann_bo_doc() -> Document:
    from graphgen import sent

    s0 = sent(
        '(w / want-01 :ARG0 (p / person :name (n / name :op1 "Ann"))'
        " :ARG1 (h / home))",
        "Ann wanted home",
        "0-1|0.0 1-2|0 2-3|0.1",
    )
    s1 = sent(
        '(s / see-01 :ARG0 (p2 / person :name (n2 / name :op1 "Bo"))'
        ' :ARG1 (p3 / person :name (n3 / name :op1 "Ann")))',
        "Bo saw Ann",
        "0-1|0.0 1-2|0 2-3|0.1",
    )
    summ = sent(None, "Ann wanted home")
    return Document(id="d1", story=(s0, s1), summary=(summ,))
