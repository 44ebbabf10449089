import pytest

from compsynth.model import Alphabet, Libraries, Literal, Procedure, Requirement, Selector, StructureSpec, System

L = Literal

# the running example: five variables, three actions, two systems
EXAMPLE_ROWS = ("TTTTT", "TFFFT", "FFFFF", "FFFFF", "TTTFT")
EXAMPLE_ACTIONS = (1, 0, 1, 1, 2)

P1 = Procedure(((L(3), 1), (L(2, False), 0), (L(4), 2)), 0)
P2 = Procedure(((L(1, False), 0), (L(3, False), 1)), 2)
P3 = Procedure(((L(3), 1),), 1)
P4 = Procedure.single(1)
SEL1 = Selector((L(0), L(4)))
S1 = System(SEL1, (P1, P3, P4))
S2 = System(Selector.DEFAULT, (P2,))


def bits(text: str) -> tuple:
    return tuple(c == "T" for c in text)


@pytest.fixture
def example_alphabet():
    return Alphabet(5, 3)


@pytest.fixture
def example_requirements():
    return tuple(Requirement(bits(r), a) for r, a in zip(EXAMPLE_ROWS, EXAMPLE_ACTIONS))


@pytest.fixture
def example_structure(example_alphabet):
    return StructureSpec(example_alphabet, 2, 3)


@pytest.fixture
def example_libraries():
    return Libraries((SEL1, Selector.DEFAULT), (P1, P2, P3, P4))


# -- acceptance summary --------------------------------------------------------

ACCEPTANCE_RESULTS: dict = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE_RESULTS):
        ok, title, detail = ACCEPTANCE_RESULTS[number]
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'} criterion {number}: {title} ({detail})")
