import pytest

from desops import build_glossa


@pytest.fixture
def g0():
    """Four elements over three description classes: B1 and B3 share [1]."""
    return build_glossa(
        [("B1", [1]), ("B2", [2]), ("B3", [1]), ("B4", [3])],
        dim=1,
        empty_desc=[0],
    )


@pytest.fixture
def grid_glossa():
    """3x3 lattice glossa with coords, descriptions = column index."""
    pairs = []
    for y in range(3):
        for x in range(3):
            pairs.append((f"p{x}{y}", [float(x)], (x, y)))
    return build_glossa(pairs, dim=1, empty_desc=[-1])
