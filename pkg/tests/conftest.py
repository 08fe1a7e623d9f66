"""Shared fixtures: the worked-example games and their reference values."""

from pathlib import Path

import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from netgame.games import DegreeSequenceGame, LinkBiasGame

settings.register_profile(
    "netgame",
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("netgame")

DATA_DIR = Path(__file__).resolve().parent.parent / "data"

COST_MATRIX_10 = np.array([
    [0, -85, -29, 13, -25, -94, -19, -97, 10, 10],
    [75, 0, 9, 32, 78, 27, -55, -38, -44, -61],
    [-85, 19, 0, 48, 23, 18, 71, -36, 26, -26],
    [-19, 25, 35, 0, -67, 18, -50, -69, -3, -20],
    [57, 17, 80, 51, 0, 63, -17, 69, -62, -78],
    [83, 81, 20, 20, -81, 0, 35, -15, -83, -4],
    [-45, 89, 39, -46, -36, -51, 0, 2, 9, 5],
    [68, 92, -35, 35, -88, 51, -86, 0, 88, -91],
    [58, -2, 26, -54, 91, 38, 50, 99, 0, -44],
    [-43, -46, -74, -17, -62, -38, -94, -59, 63, 0],
], dtype=float)

STABLE_PAYOFF = 1077
BEST_PAYOFF = 1487

# reference summary table, one row per removable vertex (0-based index)
TABLE_DEGREE = (2, 2, 3, 3, 2, 1, 3, 2, 2, 6)
TABLE_EIG_CENTRALITY = (
    0.070066565, 0.085041762, 0.120257982, 0.115436794, 0.093603947,
    0.063208915, 0.092026999, 0.102880448, 0.066087279, 0.191389311,
)
TABLE_POA_DIFF = (
    -0.012608178, 0.026391872, 0.065375238, 0.009530895, 0.011948301,
    -0.03956057, -0.072036296, -0.05390475, -0.003131446, 0.089296079,
)
TABLE_UTILITY_CHANGE = (178, 153, 285, 190, 193, 42, 213, 221, 103, 576)

POWERLAW_D = (1,) * 75 + (2,) * 14 + (3,) * 5 + (4,) * 2 + (5, 6, 7, 8)


@pytest.fixture(scope="session")
def complete_example() -> LinkBiasGame:
    return LinkBiasGame(COST_MATRIX_10)


@pytest.fixture(scope="session")
def ten_by_five() -> DegreeSequenceGame:
    return DegreeSequenceGame((5,) * 10)


@pytest.fixture(scope="session")
def powerlaw_game() -> DegreeSequenceGame:
    return DegreeSequenceGame(POWERLAW_D)


@pytest.fixture(scope="session")
def data_dir() -> Path:
    return DATA_DIR
