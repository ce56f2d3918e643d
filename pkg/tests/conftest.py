import json

import pytest

from edfkit.config import get_settings
from edfkit.core.groups import make_group
from edfkit.models.family import Family
from edfkit.services import search as search_module


def cyclic(n, blocks):
    return Family.from_values(make_group([n]), blocks)


@pytest.fixture(autouse=True)
def isolated_settings(monkeypatch, tmp_path):
    """Every test sees default settings and its own catalog directory."""
    for key in ("EDFKIT_CONFIG", "EDFKIT_SEARCH_BUDGET", "EDFKIT_FLATTEN", "EDFKIT_PROGRESS",
                "EDFKIT_LOG_LEVEL", "EDFKIT_PARTITION_CAP", "EDFKIT_MC_TRIALS", "EDFKIT_MC_SEED"):
        monkeypatch.delenv(key, raising=False)
    monkeypatch.setenv("EDFKIT_CATALOG_DIR", str(tmp_path / "catalog"))
    get_settings.cache_clear()
    search_module._search_service = None
    yield
    get_settings.cache_clear()
    search_module._search_service = None


@pytest.fixture
def z10_amd():
    """{{5},{2},{0,4,6}}: the strongly optimal (10,3,(1,1,3),5,4)-BSWEDF, rho = 4/9."""
    return cyclic(10, [[5], [2], [0, 4, 6]])


@pytest.fixture
def z10_k122():
    """{{5},{4,6},{2,8}}: optimal for K = (1,2,2) with lambda 3, rho = 1/2."""
    return cyclic(10, [[5], [4, 6], [2, 8]])


@pytest.fixture
def z10_swedf():
    """{{0},{5},{2,3},{6,4}}: SWEDF with weighted union 4 x (Z10 minus 0)."""
    return cyclic(10, [[0], [5], [2, 3], [6, 4]])


@pytest.fixture
def z15_pdf():
    return cyclic(15, [[6, 9, 2, 8], [11, 14, 7, 13], [1, 4, 12, 3], [0, 5, 10]])


@pytest.fixture
def z15_swedf():
    return cyclic(15, [[6, 9, 2, 8], [11, 14, 7, 13], [1, 4, 12, 3], [5], [10]])


@pytest.fixture
def family_file(tmp_path):
    """Write a FamilyDocument and return its path."""

    def write(factors, blocks, name="family.json"):
        path = tmp_path / name
        path.write_text(json.dumps({"group": {"factors": factors}, "blocks": blocks}))
        return path

    return write
