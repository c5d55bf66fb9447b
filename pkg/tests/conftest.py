import json

import numpy as np
import pytest

from ofip.classical_space import ClassicalInnerProduct
from ofip.fuzzy_structures import AlphaProfile, MixingFunction, make_scaled_fip

GRID = (0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0)


@pytest.fixture
def grid():
    return GRID


@pytest.fixture
def standard():
    return ClassicalInnerProduct.standard()


@pytest.fixture
def scaled(standard):
    """Factory for scaled triples over the standard dot product with constant profile and mixing."""
    def build(lower=1.0, upper=2.0, t=0.0, phase=0.0):
        profile = AlphaProfile.constant(lower, upper, GRID)
        return make_scaled_fip(standard, profile, MixingFunction.constant(t, phase))
    return build


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


@pytest.fixture
def campaign_data():
    return {
        "seed": 3,
        "trials": 20,
        "dims": [1, 2, 3],
        "field": "both",
        "alpha_grid": [0.5, 1.0],
        "profile": {"kind": "constant", "lower": 1.0, "upper": 2.0},
        "mixing": {"kind": "hashed", "salt": 0},
        "report_path": "report.json",
    }


@pytest.fixture
def write_config(tmp_path):
    def write(data, name="campaign.json"):
        path = tmp_path / name
        path.write_text(json.dumps(data))
        return path
    return write


@pytest.fixture
def report_dir(tmp_path, monkeypatch):
    directory = tmp_path / "reports"
    monkeypatch.setenv("OFIP_REPORT_DIR", str(directory))
    monkeypatch.delenv("OFIP_SEED", raising=False)
    monkeypatch.delenv("OFIP_WORKERS", raising=False)
    return directory
