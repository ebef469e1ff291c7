import json
import os
import pathlib
import shutil

import pytest

SOURCE_DIR = pathlib.Path(os.environ.get("NILNF_SOURCE_DIR", pathlib.Path(__file__).resolve().parents[2]))


@pytest.fixture(scope="session")
def source_dir():
    return SOURCE_DIR


@pytest.fixture(scope="session")
def cli():
    path = os.environ.get("NILNF_CLI") or shutil.which("nilnf")
    if not path or not os.path.exists(path):
        pytest.skip("nilnf executable not available")
    return path


@pytest.fixture(scope="session")
def validator():
    jsonschema = pytest.importorskip("jsonschema")
    referencing = pytest.importorskip("referencing")

    schemas = {p.name: json.loads(p.read_text()) for p in (SOURCE_DIR / "schemas").glob("*.schema.json")}
    registry = referencing.Registry().with_resources(
        (name, referencing.Resource.from_contents(body)) for name, body in schemas.items()
    )

    def validate(instance, name):
        cls = jsonschema.validators.validator_for(schemas[name])
        cls(schemas[name], registry=registry).validate(instance)

    return validate
