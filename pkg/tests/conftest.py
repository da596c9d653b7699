import gzip
from pathlib import Path

import pytest

from selrules.corpus import load_basket, recode_nominal_table

DATA = Path(__file__).parent / "data"
TOY = DATA / "toy.basket"
MUSHROOM = DATA / "mushroom.csv.gz"

_acceptance_lines: list[str] = []


def record_acceptance(line: str) -> None:
    _acceptance_lines.append(line)


def pytest_terminal_summary(terminalreporter):
    if _acceptance_lines:
        terminalreporter.section("acceptance criteria")
        for line in _acceptance_lines:
            terminalreporter.write_line(line)


@pytest.fixture
def toy():
    return load_basket(TOY)


@pytest.fixture
def ids(toy):
    """Itemset from a string of single-letter labels, e.g. ids("abc")."""
    return lambda letters: toy.dictionary.encode(letters)


@pytest.fixture(scope="session")
def mushroom():
    return recode_nominal_table(MUSHROOM)


@pytest.fixture(scope="session")
def mushroom_rows():
    with gzip.open(MUSHROOM, "rt") as fh:
        return fh.read().splitlines()
