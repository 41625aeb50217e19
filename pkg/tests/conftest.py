import json
import os
import random

import pytest

from vermakit.config import reset_config
from vermakit.liealg import ParabolicData
from vermakit.verma import Variant, density, parse_element

DETERMINANT = 'y[3,1] y[4,2] - y[3,2] y[4,1]'
DETERMINANT_SQUARED = (
    'y[3,1] y[3,1] y[4,2] y[4,2] - 2 * y[3,1] y[3,2] y[4,1] y[4,2] '
    '+ y[3,2] y[3,2] y[4,1] y[4,1]'
)
SCHEMA_DIR = os.path.join(os.path.dirname(__file__), os.pardir, 'vermakit', 'schemas')


@pytest.fixture(autouse=True)
def fresh_config(monkeypatch):
    """every test starts from the bundled defaults"""
    monkeypatch.delenv('VERMAKIT_CONFIG_PATH', raising=False)
    monkeypatch.delenv('VERMAKIT_DEGREE_CAP', raising=False)
    reset_config()
    yield
    reset_config()


@pytest.fixture
def pd42() -> ParabolicData:
    return ParabolicData(4, 2)


@pytest.fixture
def pd31() -> ParabolicData:
    return ParabolicData(3, 1)


@pytest.fixture
def rng() -> random.Random:
    return random.Random(20240715)


@pytest.fixture
def yamabe(pd42):
    return density(pd42, -1)


@pytest.fixture
def paneitz(pd42):
    return density(pd42, 0)


@pytest.fixture
def det(yamabe):
    return parse_element(DETERMINANT, yamabe, Variant.HOLONOMIC)


@pytest.fixture
def det_squared(paneitz):
    return parse_element(DETERMINANT_SQUARED, paneitz, Variant.HOLONOMIC)


@pytest.fixture
def load_schema():
    def _load(name: str) -> dict:
        with open(os.path.join(SCHEMA_DIR, f'{name}.schema.json'), encoding='utf-8') as handle:
            return json.load(handle)

    return _load
