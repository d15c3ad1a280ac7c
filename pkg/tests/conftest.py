import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

from semicubic.counting import iter_points  # noqa: E402


@pytest.fixture(scope="session")
def height40():
    """Exhaustive primitive points with x >= 1 and height <= 40 (k = 1).

    Returns (total point count, one representative per (x, h, z) class).
    Every geometric predicate under test depends on the point only
    through (x, h, z), so the representatives carry full coverage.
    """
    classes = {}
    total = 0
    for pt in iter_points(40, k=1):
        total += 1
        classes.setdefault((pt.x, pt.h, pt.z), pt)
    return total, list(classes.values())
