import pytest

from posetlab import constructions as cons


@pytest.fixture(scope="session")
def polygon3():
    return cons.polygon(3)


@pytest.fixture(scope="session")
def polygon2():
    return cons.polygon(2)


@pytest.fixture(scope="session")
def boolean4():
    return cons.boolean_algebra(4)


@pytest.fixture(scope="session")
def small_gorenstein():
    """A small sample of Gorenstein* posets for cross-route checks."""
    return [
        ("polygon2", cons.polygon(2)),
        ("polygon3", cons.polygon(3)),
        ("polygon5", cons.polygon(5)),
        ("boolean2", cons.boolean_algebra(2)),
        ("boolean3", cons.boolean_algebra(3)),
        ("boolean4", cons.boolean_algebra(4)),
        ("pyr_polygon3", cons.pyr_poset(cons.polygon(3))),
        ("seg_star_seg", cons.star_product(cons.segment(), cons.segment())),
    ]
