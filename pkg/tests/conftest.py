from pathlib import Path

import pytest

from workbench.config import SETTINGS
from workbench.core_semigroup import CATALOG, build_example
from workbench.tables import write_semigroup

SMALL = ["trivial", "Z2", "Z3", "chain2", "chain3", "I1", "I2", "clifford3"]


@pytest.fixture(autouse=True)
def _reset_settings():
    saved = (SETTINGS.size_cap, SETTINGS.node_budget, SETTINGS.diagnostic)
    yield
    SETTINGS.size_cap, SETTINGS.node_budget, SETTINGS.diagnostic = saved


@pytest.fixture(params=sorted(CATALOG))
def example(request):
    return build_example(request.param)


@pytest.fixture(params=SMALL)
def small_example(request):
    return build_example(request.param)


@pytest.fixture
def semigroup_file(tmp_path: Path):
    def make(name: str) -> Path:
        return write_semigroup(tmp_path / f"{name}.json", build_example(name))

    return make
