import dataclasses
import logging

import pytest

from src.core.permutations import Permutation
from src.hecke.algebra import HeckeAlgebra
from src.hecke.kl_table import SETTINGS, TableSettings, configure_tables


@pytest.fixture(autouse=True)
def isolated_tables(tmp_path, monkeypatch):
    """Keeps KL table settings and the cache directory local to each test."""
    monkeypatch.setenv("HECKE_CELLS_CACHE_DIR", str(tmp_path / "kl-cache"))
    saved = dataclasses.asdict(SETTINGS)
    configure_tables(**dataclasses.asdict(TableSettings()))
    yield
    configure_tables(**saved)


@pytest.fixture(autouse=True)
def restore_root_logging():
    """CLI runs reconfigure the root logger onto the captured stderr of one test."""
    root = logging.getLogger()
    handlers, level = root.handlers[:], root.level
    yield
    for handler in root.handlers[:]:
        if type(handler) is logging.StreamHandler and handler not in handlers:
            root.removeHandler(handler)
    root.setLevel(level)


@pytest.fixture
def perm():
    """Parses a word or one-line notation in a given rank."""

    def _perm(text: str, n: int) -> Permutation:
        return Permutation.parse(text, n)

    return _perm


@pytest.fixture(scope="session")
def s3():
    return HeckeAlgebra.for_rank(3)


@pytest.fixture(scope="session")
def s4():
    return HeckeAlgebra.for_rank(4)
