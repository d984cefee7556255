import pytest

from forms import cusp_eigenform, eisenstein
from models import SearchConfig

# Precision that supports the default eigen test (n_max=8, min_overlap=5)
DEFAULT_PRECISION = 33


@pytest.fixture
def e4():
    return eisenstein(4, DEFAULT_PRECISION)


@pytest.fixture
def e6():
    return eisenstein(6, DEFAULT_PRECISION)


@pytest.fixture
def e8():
    return eisenstein(8, DEFAULT_PRECISION)


@pytest.fixture
def delta():
    return cusp_eigenform(12, DEFAULT_PRECISION)


@pytest.fixture
def small_config():
    """Holomorphic products up to weight 14"""
    return SearchConfig(max_total_weight=14, max_delta_iters=0)


@pytest.fixture(autouse=True)
def _isolated_environment(monkeypatch, tmp_path):
    for name in ("PRECISION", "N_MAX", "MIN_OVERLAP", "MAX_FACTOR_WEIGHT",
                 "MAX_TOTAL_WEIGHT", "MAX_DELTA_ITERS", "WORKERS", "LOG_LEVEL"):
        monkeypatch.delenv(f"NHOLO_{name}", raising=False)
    monkeypatch.chdir(tmp_path)
