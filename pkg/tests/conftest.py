import json
from pathlib import Path

import pytest

from src.lib.feasibility.paper_cases import (
    gold_torsion,
    lead_oscillator,
    lead_sphere,
    mirror,
    silica_nanosphere,
    silica_oscillator,
)
from src.lib.feasibility.solver import with_unknown
from src.models.feasibility_model import Unknown


@pytest.fixture
def silica():
    return silica_nanosphere()


@pytest.fixture
def silica_2um(silica):
    return with_unknown(silica, Unknown.DELTA_X, 2e-6)


@pytest.fixture
def lead():
    return lead_sphere()


@pytest.fixture
def silica_osc():
    return silica_oscillator()


@pytest.fixture
def lead_osc():
    return lead_oscillator()


@pytest.fixture
def gold():
    return gold_torsion()


@pytest.fixture
def glass_mirror():
    return mirror()


SILICA_DOCUMENT = {
    "body": {"radius_m": 75e-9, "density_kg_m3": 2000, "temp_internal_K": 1.0},
    "geometry": {"alpha": 2, "delta_x_m": 2.1e-6},
    "environment": {"pressure_Pa": 1e-15, "temp_K": 1.0},
    "protocol": "csign",
}

GOLD_DOCUMENT = {
    "body": {"radius_m": 1e-3, "density_kg_m3": 2e4},
    "geometry": {"alpha": 2, "delta_x_m": 900e-15},
    "environment": {"pressure_Pa": 1e-15, "temp_K": 1.0},
    "oscillator": {"freq_hz": 1e-2, "nbar": 0.5},
    "protocol": "oscillator",
}


@pytest.fixture
def write_config(tmp_path):
    """Write a config document (optionally patched) and return its path."""

    def _write(document: dict, name: str = "config.json") -> Path:
        path = tmp_path / name
        path.write_text(json.dumps(document), encoding="utf-8")
        return path

    return _write


@pytest.fixture
def silica_document():
    return json.loads(json.dumps(SILICA_DOCUMENT))


@pytest.fixture
def gold_document():
    return json.loads(json.dumps(GOLD_DOCUMENT))
