import pytest

from issueforge.extraction import load_patterns
from issueforge.textprep import load_wordlists


@pytest.fixture(scope="session")
def lists():
    return load_wordlists()


@pytest.fixture(scope="session")
def patterns():
    return load_patterns()
