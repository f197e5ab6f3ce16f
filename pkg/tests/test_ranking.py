import pytest
from hypothesis import given
from hypothesis import strategies as st

from planstats.ranking import WORST, EmptyInput, rank_ascending


def test_plain_ordering():
    assert list(rank_ascending([3.0, 1.0, 2.0])) == [3.0, 1.0, 2.0]


def test_midrank_ties():
    assert list(rank_ascending([5.0, 5.0, 7.0])) == [1.5, 1.5, 3.0]


def test_worst_ties_at_top():
    assert list(rank_ascending([4.0, WORST, WORST])) == [1.0, 2.5, 2.5]


def test_all_worst():
    assert list(rank_ascending([WORST, WORST, WORST])) == [2.0, 2.0, 2.0]


def test_empty_input():
    with pytest.raises(EmptyInput):
        rank_ascending([])


values_lists = st.lists(
    st.one_of(st.integers(-5, 5).map(float), st.just(WORST)), min_size=1, max_size=40
)


@given(values_lists)
def test_rank_sum_identity(values):
    n = len(values)
    assert sum(rank_ascending(values)) == pytest.approx(n * (n + 1) / 2)


@given(values_lists, st.randoms(use_true_random=False))
def test_permutation_equivariance(values, rnd):
    ranks = list(rank_ascending(values))
    perm = list(range(len(values)))
    rnd.shuffle(perm)
    shuffled = [values[i] for i in perm]
    assert list(rank_ascending(shuffled)) == [ranks[i] for i in perm]


@given(st.lists(st.floats(-1e6, 1e6), min_size=1, max_size=40, unique=True))
def test_no_ties_gives_permutation(values):
    assert sorted(rank_ascending(values)) == [float(i) for i in range(1, len(values) + 1)]
