from __future__ import annotations

import numpy as np
import pytest

from affine_kahler.tensors import SpaceConfig


@pytest.fixture(scope="session")
def cfg2() -> SpaceConfig:
    return SpaceConfig(2)


@pytest.fixture(scope="session")
def cfg3() -> SpaceConfig:
    return SpaceConfig(3)


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20240811)
