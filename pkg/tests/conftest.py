from __future__ import annotations

import pytest

from tbtrellis import build_granule_table, compute_behavior

from helpers import all_trivial, two_state_cycle, z4_example


@pytest.fixture(scope="session")
def z4():
    r = z4_example()
    bundle = compute_behavior(r)
    return r, bundle, build_granule_table(bundle)


@pytest.fixture(scope="session")
def two_state():
    r = two_state_cycle()
    bundle = compute_behavior(r)
    return r, bundle, build_granule_table(bundle)


@pytest.fixture(scope="session")
def trivial3():
    r = all_trivial(3)
    bundle = compute_behavior(r)
    return r, bundle, build_granule_table(bundle)
