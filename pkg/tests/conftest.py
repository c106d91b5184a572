import random
import sys
from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from hessecubics.poly import MONOMIALS, Cubic
from hessecubics.scalar import Eis

settings.register_profile(
    "suite",
    deadline=None,
    max_examples=40,
    derandomize=True,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("suite")

small_fractions = st.fractions(min_value=-20, max_value=20, max_denominator=12)
eis_values = st.builds(Eis, small_fractions, small_fractions)
small_ints = st.integers(min_value=-4, max_value=4)
int_eis = st.builds(Eis, small_ints, small_ints)


@st.composite
def cubics(draw, coeff=int_eis):
    vals = draw(st.lists(coeff, min_size=10, max_size=10))
    if not any(vals):
        vals[0] = Eis(1)
    return Cubic.from_vector(vals)


@pytest.fixture
def rng():
    return random.Random(12345)


def random_exact_cubic(rng, bound=4):
    vals = [Eis(rng.randint(-bound, bound), rng.randint(-bound, bound)) for _ in MONOMIALS]
    if not any(vals):
        vals[0] = Eis(1)
    return Cubic.from_vector(vals)


def random_rational_cubic(rng, bound=6):
    vals = [Fraction(rng.randint(-bound, bound), rng.randint(1, 4)) for _ in MONOMIALS]
    if not any(vals):
        vals[0] = Fraction(1)
    return Cubic.from_vector(vals)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in mod.summary_lines():
        terminalreporter.write_line(line)
