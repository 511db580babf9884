import pytest

from factopo.catalogs import (category_catalogue, gset_catalogue, ring_catalogue,
                              sset_corpus, vspace_catalogue)


@pytest.fixture(scope="session")
def rings():
    return ring_catalogue()


@pytest.fixture(scope="session")
def cats():
    return category_catalogue()


@pytest.fixture(scope="session")
def corpus():
    return sset_corpus()


@pytest.fixture(scope="session")
def gsets():
    return gset_catalogue()


@pytest.fixture(scope="session")
def vspaces():
    return vspace_catalogue()
