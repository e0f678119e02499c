import sys
from pathlib import Path

import pytest

from oddspec import check_spec, parse_spec, parse_taxonomy

sys.path.insert(0, str(Path(__file__).parent))

DATA = Path(__file__).parent / "data"


@pytest.fixture(scope="session")
def motorway_taxonomy():
    """Three attributes: road_type enum, pedestrian_present bool, speed real."""
    return parse_taxonomy((DATA / "taxonomy_motorway.json").read_text())


@pytest.fixture(scope="session")
def finite_taxonomy():
    """Two discrete attributes; the whole domain has six elements."""
    return parse_taxonomy((DATA / "taxonomy_finite.json").read_text())


@pytest.fixture(scope="session")
def motorway_spec(motorway_taxonomy):
    """motorway, no pedestrians, below 60 kmh."""
    return check_spec(
        parse_spec((DATA / "motorway.spec").read_text()), motorway_taxonomy
    )
