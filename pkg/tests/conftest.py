import pytest

from rip_hawking.kinematics import FrameKinematics
from rip_hawking.profiles import GaussianProfile

N0, ETA, SIGMA = 1.45, 1e-3, 1e-5
C_OVER_V = 1.4505  # k = 1/2


@pytest.fixture
def gauss():
    return GaussianProfile(N0, ETA, SIGMA)


@pytest.fixture
def kin():
    return FrameKinematics.from_c_over_v(C_OVER_V)
