import pytest

from wordgen import DEFAULT_TAXONOMY_SPEC, Params, build_taxonomy


@pytest.fixture
def tax():
    return build_taxonomy(DEFAULT_TAXONOMY_SPEC)


@pytest.fixture
def params():
    return Params()
