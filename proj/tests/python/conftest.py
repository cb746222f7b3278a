import json
import os
import pathlib

import pytest

ROOT = pathlib.Path(__file__).resolve().parents[2]


@pytest.fixture(scope="session")
def schema():
    path = os.environ.get("IRMETRO_SCHEMA", ROOT / "schema" / "metromap.schema.json")
    return json.loads(pathlib.Path(path).read_text())


@pytest.fixture(scope="session")
def cli():
    path = os.environ.get("IRMETRO_CLI")
    if not path:
        pytest.skip("IRMETRO_CLI not set")
    return path


@pytest.fixture(scope="session")
def fixtures_dir():
    return pathlib.Path(os.environ.get("IRMETRO_FIXTURES", ROOT / "tests" / "fixtures"))


@pytest.fixture
def corpus(tmp_path):
    _, _, truth, manifest = __import__("irmetro").generate_corpus(
        seed=42, n_variants=6, bug="EarlyOptimization:missing-optimization", out_dir=tmp_path / "c"
    )
    return manifest, truth
