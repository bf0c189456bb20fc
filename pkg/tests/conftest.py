import pytest

from quadrimm.generate import build_default_corpus


@pytest.fixture(scope="session")
def corpus():
    """Shared session corpus: enumeration to 14 vertices plus spiral,
    cable, and radial construction sweeps."""
    return build_default_corpus(enum_max=14)
