import random

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from subpair.module import LambdaModule
from subpair.ring import RingSpec

settings.register_profile(
    "default",
    deadline=None,
    max_examples=60,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.data_too_large],
)
settings.load_profile("default")


@st.composite
def ring_specs(draw, primes=(2, 3), max_n=4, kinds=("zmod", "truncpoly")):
    return RingSpec(draw(st.sampled_from(kinds)), draw(st.sampled_from(primes)), draw(st.integers(1, max_n)))


@st.composite
def modules(draw, max_rank=3, **kw):
    spec = draw(ring_specs(**kw))
    parts = draw(st.lists(st.integers(1, spec.n), min_size=1, max_size=max_rank))
    return LambdaModule(spec, tuple(sorted(parts, reverse=True)))


@st.composite
def submodules(draw, max_gens=3, **kw):
    B = draw(modules(**kw))
    gens = draw(
        st.lists(
            st.tuples(*[st.integers(0, B.spec.p**lam - 1) for lam in B.partition]),
            max_size=max_gens,
        )
    )
    return B.submodule(gens)


@pytest.fixture
def rng():
    return random.Random(12345)


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
