from __future__ import annotations

import pytest

from treecover.tree import Tree

ACCEPTANCE: list[tuple[str, bool, str]] = []


def record(criterion: str, ok: bool, detail: str = "") -> None:
    ACCEPTANCE.append((criterion, ok, detail))


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for criterion, ok, detail in ACCEPTANCE:
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {criterion}  {detail}")


@pytest.fixture
def star3():
    return Tree.star(3)


@pytest.fixture
def path2():
    return Tree.path(2)


@pytest.fixture
def path3():
    return Tree.path(3)


@pytest.fixture
def path4():
    return Tree.path(4)


@pytest.fixture
def spider():
    # centre 0; legs 0-1, 0-2-4, 0-3
    return Tree(5, ((0, 1), (0, 2), (2, 4), (0, 3)))
