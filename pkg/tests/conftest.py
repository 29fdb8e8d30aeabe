from fractions import Fraction

import pytest

from hgcrp import Instance


def example1():
    # agents 1,2 renamed to 0,1
    return Instance(2, {(0,): 1, (1,): 0, (0, 1): 1})


def example2():
    # agents 1,2,3 renamed to 0,1,2; {2,3} -> {1,2} is worth 2, agent 1 -> 0 alone worth 0
    table = {(0,): 0, (1,): 1, (2,): 1, (0, 1): 1, (0, 2): 1, (1, 2): 2, (0, 1, 2): 1}
    return Instance(3, table)


def example3():
    # the stalker game; {0,1} is below agent 1's singleton, so it needs the exemption
    return Instance(2, {(0,): 1, (1,): 3, (0, 1): 2}, allow_non_ir=True)


def pair_instance(pair_value):
    return Instance(2, {(0,): 3, (1,): 1, (0, 1): Fraction(pair_value)}, allow_non_ir=True)


@pytest.fixture
def ex1():
    return example1()


@pytest.fixture
def ex2():
    return example2()


@pytest.fixture
def ex3():
    return example3()


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
