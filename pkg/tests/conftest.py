import random
from fractions import Fraction

from hypothesis import strategies as st

from npk.cyclofield import CycNum, _field
from npk.exactmat import CycMatrix
from npk.npotent import random_npotent, random_rank_pattern

ORDERS = [1, 3, 4, 5, 8, 12]

small_fraction = st.fractions(min_value=-5, max_value=5, max_denominator=6)


@st.composite
def cyc(draw, order=None):
    m = order if order is not None else draw(st.sampled_from(ORDERS))
    d = _field(m).degree
    return CycNum(m, draw(st.lists(small_fraction, min_size=d, max_size=d)))


@st.composite
def cyc_matrix(draw, size=None, order=None):
    m = order if order is not None else draw(st.sampled_from([1, 3, 4]))
    k = size if size is not None else draw(st.integers(1, 3))
    return CycMatrix([[draw(cyc(m)) for _ in range(k)] for _ in range(k)], m)


def npotent_sample(rng: random.Random, n: int, order: int, size: int) -> CycMatrix:
    ranks = random_rank_pattern(n, order, size, rng)
    return random_npotent(n, order, size, ranks, seed=rng.randrange(10**9))


@st.composite
def npotent(draw, ns=(2, 3, 4, 5), orders=(1, 3, 4), max_size=4):
    n = draw(st.sampled_from(ns))
    m = draw(st.sampled_from(orders))
    size = draw(st.integers(1, max_size))
    seed = draw(st.integers(0, 2**32))
    return n, m, npotent_sample(random.Random(seed), n, m, size)


def frac(x) -> Fraction:
    return Fraction(x)


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(mod.RESULTS):
        status, text = mod.RESULTS[num]
        terminalreporter.write_line(f"criterion {num:2d}: {status}  {text}")
