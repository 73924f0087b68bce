import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from satqkd.linkbudget import default_link_model
from satqkd.orbit import PhysicalConstants


@pytest.fixture(scope="session")
def micius_model():
    """Link model fitted to the published Micius calibration points."""
    return default_link_model()


@pytest.fixture(scope="session")
def consts():
    return PhysicalConstants()
