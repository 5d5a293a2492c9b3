import os
from pathlib import Path

import pytest

from sqenergy.canon import enumerate_nonisomorphic

CORPUS9_ENV = "SQEN_CORPUS9"
CORPUS9_DEFAULT = Path("/root/corpus/graph9.g6")


@pytest.fixture(scope="session")
def small_corpus():
    """All non-isomorphic graphs with 1 <= n <= 7."""
    return [g for n in range(1, 8) for g in enumerate_nonisomorphic(n)]


@pytest.fixture(scope="session")
def corpus9_path():
    path = Path(os.environ.get(CORPUS9_ENV, CORPUS9_DEFAULT))
    if not path.is_file():
        pytest.skip(f"n=9 graph6 corpus not found (set {CORPUS9_ENV})")
    return path
