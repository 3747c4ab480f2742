from __future__ import annotations

from pathlib import Path

import pytest

from core import build_instance

FIXTURES = Path(__file__).parent / "fixtures"


@pytest.fixture
def fixtures_dir() -> Path:
    return FIXTURES


@pytest.fixture
def e1():
    return build_instance(4, 4, 2, [[0, 1], [0, 1], [2], [3]])


@pytest.fixture
def e2():
    return build_instance(2, 4, 2, [[0, 1], [0, 1]])
