import json
import pathlib

import pytest

FIXTURES = pathlib.Path(__file__).resolve().parent.parent / "fixtures"
SCHEMAS = pathlib.Path(__file__).resolve().parent.parent / "schemas"


@pytest.fixture
def fixture():
    def load(name):
        return json.loads((FIXTURES / name).read_text())
    return load


@pytest.fixture
def schema():
    def load(name):
        return json.loads((SCHEMAS / name).read_text())
    return load
