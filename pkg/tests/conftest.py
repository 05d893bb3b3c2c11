import sys
from pathlib import Path

import pytest

from qemlab.config import builtin_profile

sys.path.insert(0, str(Path(__file__).parent))


@pytest.fixture(scope="session")
def tiny_config():
    """Two parameter pairs and small shot budgets; runs in well under a second."""
    desk = builtin_profile("desk")
    return desk.replace(
        param_pairs=desk.param_pairs[3:5],
        repeats=3,
        shots=400,
        rc_duplicates=20,
        rc_shots_per_duplicate=20,
        calibration_shots=400,
        n_boot=200,
        median_n_boot=200,
        algorithm1_per_param=100,
        profile="tiny",
    )
