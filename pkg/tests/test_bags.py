from collections import Counter

from hypothesis import given
from hypothesis import strategies as st

from tim.bags import EMPTY, Bag

items = st.lists(st.sampled_from("abcd"), max_size=8)


def test_counts_and_rendering():
    b = Bag(["at", "at", "in"])
    assert b.count("at") == 2
    assert b.count("zz") == 0
    assert len(b) == 3
    assert b.distinct() == frozenset({"at", "in"})
    assert str(b) == "[at, at, in]"
    assert list(b) == ["at", "at", "in"]


def test_order_does_not_matter():
    assert Bag("abca") == Bag("aabc")
    assert hash(Bag("abca")) == hash(Bag("aabc"))


def test_empty():
    assert not EMPTY
    assert Bag() == EMPTY
    assert EMPTY <= Bag("a")


@given(items, items)
def test_union_adds_counts(x, y):
    assert (Bag(x) + Bag(y)).counter() == Counter(x) + Counter(y)


@given(items, items)
def test_difference_truncates_at_zero(x, y):
    assert (Bag(x) - Bag(y)).counter() == Counter(x) - Counter(y)


@given(items, items)
def test_intersection_takes_minimum(x, y):
    assert (Bag(x) & Bag(y)).counter() == Counter(x) & Counter(y)


@given(items, items)
def test_inclusion_matches_counts(x, y):
    cx, cy = Counter(x), Counter(y)
    assert (Bag(x) <= Bag(y)) == all(cx[k] <= cy[k] for k in cx)


@given(items, items)
def test_remove_then_add_back(x, y):
    a, b = Bag(x), Bag(y)
    assert (a + b) - b == a
    assert a & b <= a
    assert a <= a + b
