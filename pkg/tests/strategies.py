"""Hypothesis strategies shared by the property tests."""
import random

from hypothesis import strategies as st

from omegac.catalog import random_complex, random_gs
from omegac.theta import GlobularSum, POINT


def gs_strategy(max_dim=2, max_width=2):
    if max_dim == 0:
        return st.just(POINT)
    inner = gs_strategy(max_dim - 1, max_width)
    return st.one_of(st.just(POINT),
                     st.lists(inner, min_size=1, max_size=max_width).map(GlobularSum))


complexes = st.integers(0, 2 ** 32 - 1).map(lambda s: random_complex(random.Random(s)))
