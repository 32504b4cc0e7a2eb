import os
import sys
from functools import lru_cache

import hypothesis
from hypothesis import strategies as st

sys.path.insert(0, os.path.dirname(__file__))

from rayforms import ClassGroup, make_field  # noqa: E402
from rayforms.config import SweepConfig  # noqa: E402

hypothesis.settings.register_profile("default", deadline=None, max_examples=100)
hypothesis.settings.register_profile("fast", deadline=None, max_examples=10)
hypothesis.settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

SWEEP = SweepConfig()
DISCS = SWEEP.discriminants()
SMALL_DISCS = [d for d in DISCS if d >= -120]


@lru_cache(maxsize=None)
def group(d, n):
    return ClassGroup(make_field(d), n)


@lru_cache(maxsize=None)
def field(d):
    return make_field(d)


discs = st.sampled_from(DISCS)
small_discs = st.sampled_from(SMALL_DISCS)
levels = st.integers(min_value=1, max_value=12)
