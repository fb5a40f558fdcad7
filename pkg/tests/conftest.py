import json
from pathlib import Path

import pytest
from hypothesis import settings

from spocode import SFT, Alphabet, Sofic
from spocode.fileformat import load_presentation

settings.register_profile("repo", derandomize=True, deadline=None, max_examples=60)
settings.load_profile("repo")

HERE = Path(__file__).parent
ROOT = HERE.parent
FIXTURES = HERE / "fixtures"
PRESENTATIONS = ROOT / "presentations"


def load_fixture(name):
    return json.loads((FIXTURES / name).read_text())


def W(text):
    """Word from a comma-separated string ('' is the empty word)."""
    return tuple(s for s in text.split(",")) if text else ()


@pytest.fixture(scope="session")
def golden():
    return SFT(Alphabet(("0", "1")), [("1", "1")])


@pytest.fixture(scope="session")
def even():
    return Sofic(Alphabet(("0", "1")), [("A", "1", "A"), ("A", "0", "B"), ("B", "0", "A")])


@pytest.fixture(scope="session")
def full2():
    return SFT(Alphabet(("0", "1")))


@pytest.fixture(scope="session")
def pres_file():
    return lambda name: load_presentation(PRESENTATIONS / f"{name}.pres")
