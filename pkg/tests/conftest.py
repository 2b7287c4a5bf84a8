import pytest
from hypothesis import strategies as st

from commcalc.words import Alphabet, Word

XY = Alphabet("x,y")
XYZ = Alphabet("x,y,z")

ACCEPTANCE_LINES: list[str] = []


def words(alphabet: Alphabet, max_len: int = 12):
    """Random freely reduced words, built from signed letters."""
    k = alphabet.rank
    letter = st.integers(1, k).flatmap(lambda g: st.sampled_from([g, -g]))
    return st.lists(letter, max_size=max_len).map(lambda ls: Word.from_letters(alphabet, ls))


def alphabets():
    return st.sampled_from([Alphabet("x"), XY, XYZ])


@pytest.fixture
def xy():
    return XY


@pytest.fixture
def xyz():
    return XYZ


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
