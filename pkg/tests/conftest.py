from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from preplab.arith import DensePoly

settings.register_profile("default", max_examples=60, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

rationals = st.builds(Fraction, st.integers(-20, 20), st.integers(1, 6))


def qpolys(max_degree=6):
    return st.lists(rationals, max_size=max_degree + 1).map(DensePoly)


def monic_qpolys(min_degree=2, max_degree=5):
    return st.integers(min_degree, max_degree).flatmap(
        lambda d: st.lists(rationals, min_size=d, max_size=d).map(
            lambda cs: DensePoly(cs + [1])))


@pytest.fixture
def quadratic_family():
    from preplab.family import Family
    from preplab.lines import Line
    return Family(2, 1), Line.zero(1)
