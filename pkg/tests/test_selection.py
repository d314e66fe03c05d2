from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from srdtree import NOutOfRange
from srdtree.selection import SelectionResult, nth_largest

ENGINES = ("quickselect", "median_of_medians")


def reference(values, n):
    """Full sort with the same tie rule: larger value first, then smaller id."""
    ranked = sorted(values, key=lambda pair: (-pair[1], pair[0]))
    chosen = tuple(sorted(item_id for item_id, _ in ranked[:n]))
    return SelectionResult(threshold=ranked[n - 1][1], chosen_ids=chosen)


@pytest.mark.parametrize("engine", ENGINES)
class TestFrozenExamples:
    def test_distinct_values(self, engine):
        got = nth_largest([(1, 4), (2, 1), (3, 2)], 1, engine=engine)
        assert got == SelectionResult(4, (1,))

    def test_tie_at_threshold_prefers_small_id(self, engine):
        got = nth_largest([(1, 4), (2, 4), (3, 2)], 1, engine=engine)
        assert got == SelectionResult(4, (1,))

    def test_tie_below_threshold(self, engine):
        got = nth_largest([(1, 5), (2, 3), (3, 3), (4, 1)], 3, engine=engine)
        assert got == SelectionResult(3, (1, 2, 3))

    def test_take_all(self, engine):
        got = nth_largest([(7, 1.5), (9, 0.5)], 2, engine=engine)
        assert got == SelectionResult(0.5, (7, 9))


@pytest.mark.parametrize("engine", ENGINES)
@pytest.mark.parametrize("n", [0, 4, -1])
def test_out_of_range_n(engine, n):
    with pytest.raises(NOutOfRange):
        nth_largest([(1, 1), (2, 2), (3, 3)], n, engine=engine)


def test_unknown_engine():
    with pytest.raises(ValueError):
        nth_largest([(1, 1)], 1, engine="bogosort")


# duplicate-heavy values stress the tie handling
pair_lists = st.lists(
    st.integers(min_value=0, max_value=6),
    min_size=1,
    max_size=40,
).map(lambda vals: [(i + 1, v) for i, v in enumerate(vals)])


@pytest.mark.parametrize("engine", ENGINES)
@given(pairs=pair_lists, data=st.data())
def test_agrees_with_full_sort(engine, pairs, data):
    n = data.draw(st.integers(min_value=1, max_value=len(pairs)))
    assert nth_largest(pairs, n, engine=engine) == reference(pairs, n)


@given(pairs=pair_lists, data=st.data())
def test_engines_agree(pairs, data):
    n = data.draw(st.integers(min_value=1, max_value=len(pairs)))
    assert nth_largest(pairs, n, engine="quickselect") == nth_largest(
        pairs, n, engine="median_of_medians"
    )


@given(pairs=pair_lists, data=st.data())
def test_permutation_invariant(pairs, data):
    n = data.draw(st.integers(min_value=1, max_value=len(pairs)))
    shuffled = data.draw(st.permutations(pairs))
    assert nth_largest(shuffled, n) == nth_largest(pairs, n)


@given(pairs=pair_lists, data=st.data())
def test_exact_values_pass_through(pairs, data):
    n = data.draw(st.integers(min_value=1, max_value=len(pairs)))
    exact = [(i, Fraction(v, 3)) for i, v in pairs]
    got = nth_largest(exact, n)
    assert isinstance(got.threshold, Fraction)
    assert got == reference(exact, n)
