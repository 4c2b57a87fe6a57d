import json
import os

import pytest

FIXTURES = os.path.join(os.path.dirname(__file__), "..", "fixtures")


@pytest.fixture(scope="session")
def fixture_dir() -> str:
    return FIXTURES


@pytest.fixture(scope="session")
def fixture_metadata() -> dict:
    with open(os.path.join(FIXTURES, "metadata.json"), encoding="utf-8") as handle:
        return json.load(handle)


def fixture_path(name: str) -> str:
    return os.path.join(FIXTURES, name)


def load_fixture(name: str):
    from lenscert.triangulation import parse_triangulation

    with open(fixture_path(name), encoding="utf-8") as handle:
        return parse_triangulation(handle.read())


def fixture_text(name: str) -> str:
    with open(fixture_path(name), encoding="utf-8") as handle:
        return handle.read()


MANIFOLD_FIXTURES = [
    "s3_boundary_4simplex.tri",
    "lens_2_1.tri",
    "lens_3_1.tri",
    "lens_4_1.tri",
    "lens_5_2.tri",
    "lens_7_2.tri",
    "t3_torus.tri",
    "s2xs1.tri",
    "s2xs1_twisted.tri",
    "prism_q8.tri",
    "prism_q12.tri",
    "onevertex_t2.tri",
]

ORIENTABLE_FIXTURES = [n for n in MANIFOLD_FIXTURES if n != "s2xs1_twisted.tri"]
