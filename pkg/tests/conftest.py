import numpy as np
import pytest

from triform import QuadratureConfig


@pytest.fixture
def rng():
    return np.random.default_rng(20240901)


@pytest.fixture
def fast_cfg():
    return QuadratureConfig(target_rel_error=1e-6, refinement_levels=5)
