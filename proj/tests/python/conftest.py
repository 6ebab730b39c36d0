import os
import shutil

import pytest


@pytest.fixture(scope="session")
def cli():
    path = os.environ.get("COVROC_CLI") or shutil.which("covroc")
    if not path or not os.path.exists(path):
        pytest.skip("covroc executable not available")
    return path


@pytest.fixture(scope="session")
def schema():
    here = os.path.dirname(os.path.abspath(__file__))
    path = os.path.join(here, "..", "..", "schema", "result.schema.json")
    if not os.path.exists(path):
        pytest.skip("schema not available")
    import json

    with open(path) as f:
        return json.load(f)
