import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from koszulcalc.algebra import build_algebra, preprojective_preset, symmetric_preset
from koszulcalc.calculus import Calculus
from koszulcalc.fields import QQ


@pytest.fixture(scope="session")
def kxy():
    """k[x, y] truncated at weight 5."""
    q, r = symmetric_preset(2, QQ)
    return build_algebra(q, r, 5, preset=("symmetric", 2))


@pytest.fixture(scope="session")
def kxy_calc(kxy):
    return Calculus(kxy)


@pytest.fixture(scope="session")
def preproj_a3():
    """The A3 preprojective algebra truncated at weight 8."""
    q, r = preprojective_preset([("1", "2"), ("2", "3")], QQ)
    return build_algebra(q, r, 8)


@pytest.fixture(scope="session")
def preproj_calc(preproj_a3):
    return Calculus(preproj_a3)
