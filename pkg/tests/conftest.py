import pytest

from octaplex.codes import (
    build_2d_pair,
    build_3d_triple,
    build_bounded_family,
    build_periodic_family,
)
from octaplex.lattice import build_octaplex
from octaplex.logicals import build_logicals
from octaplex.metachecks import build_ladder


@pytest.fixture(scope="session")
def cx2():
    return build_octaplex(2)


@pytest.fixture(scope="session")
def family2(cx2):
    from octaplex.codes import build_family

    return build_family(cx2)


@pytest.fixture(scope="session")
def basis2(family2):
    return build_logicals(family2)


@pytest.fixture(scope="session")
def ladder2(family2):
    return build_ladder(family2.complex, family2.blocks[0])


@pytest.fixture(scope="session")
def family3():
    return build_periodic_family(3)


@pytest.fixture(scope="session")
def bounded2():
    return build_bounded_family(2)


@pytest.fixture(scope="session")
def bounded_basis2(bounded2):
    return build_logicals(bounded2)


@pytest.fixture(scope="session")
def pair2d():
    return build_2d_pair(2)


@pytest.fixture(scope="session")
def triple3d():
    return build_3d_triple(2)
