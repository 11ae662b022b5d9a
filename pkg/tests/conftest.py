import math

import pytest

from cavityq.params import SystemParams, paper_operating_point


@pytest.fixture
def paper():
    """Reference operating point with Q = 5e5."""
    return paper_operating_point()


@pytest.fixture
def paper_lossless():
    return paper_operating_point(quality=None)


def params_with_detuning(delta, g=4e6, quality=None):
    """SystemParams with the gate charge tuned so Delta comes out exactly."""
    ej = 2.0 * math.pi * 6.5e9
    ech = 2.0 * math.pi * 149e9 / 4.0
    omega = 2.0 * math.pi * 40e9
    ng = 0.5 * (1.0 + (omega + delta) / (4.0 * ech))
    return SystemParams(
        ej=ej, ech=ech, ng=ng, omega=omega, eta_ratio=g / ej, quality=quality
    )
