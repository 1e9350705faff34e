import os

import hypothesis
import pytest

from trinomial_lnd.algebra.abelian import CoordinateSystem
from trinomial_lnd.algebra.ring import TrinomialData, TrinomialRing, fine_grading
from trinomial_lnd.algebra.roots import RootSystem

hypothesis.settings.register_profile("ci", max_examples=200, deadline=None)
hypothesis.settings.register_profile("fast", max_examples=20, deadline=None)
hypothesis.settings.load_profile(os.getenv("HYPOTHESIS_PROFILE", "ci"))

# T(0,1)*T(0,2) + T(1,1)*T(1,2) + T(2,1)^2, graded by (x, y, z) in Z^3
QUADRIC_GRADING = ((1, 0, 1), (-1, 0, 1), (0, 1, 1), (0, -1, 1), (0, 0, 1))

QUADRIC_SPEC = """\
l0: 1 1
l1: 1 1
l2: 2
deg T(0,1): 1 0 1
deg T(0,2): -1 0 1
deg T(1,1): 0 1 1
deg T(1,2): 0 -1 1
deg T(2,1): 0 0 1
"""

BINARY_SPEC = "l0: 1\nl1: 1\nl2: 2\n"

# derivation files on the quadric
SWAP = "T(0,1) -> T(1,1)\nT(1,2) -> -T(0,2)\n"
EULER = "T(0,1) -> T(0,1)\nT(0,2) -> -T(0,2)\n"


@pytest.fixture
def quadric():
    return TrinomialData.of((1, 1), (1, 1), (2,))


@pytest.fixture
def quadric_ring(quadric):
    return TrinomialRing(quadric)


@pytest.fixture
def quadric_grading(quadric):
    return fine_grading(quadric)


@pytest.fixture
def quadric_system(quadric, quadric_grading):
    coordinates = CoordinateSystem.explicit(quadric_grading.group, QUADRIC_GRADING)
    return RootSystem(quadric, quadric_grading, coordinates)


@pytest.fixture
def x_y_z2():
    return TrinomialData.of((1,), (1,), (2,))


@pytest.fixture
def x_y_z3():
    return TrinomialData.of((1,), (1,), (3,))


@pytest.fixture
def quadric_spec_file(tmp_path):
    path = tmp_path / "quadric.spec"
    path.write_text(QUADRIC_SPEC, encoding="utf-8")
    return path
