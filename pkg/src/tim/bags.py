"""Immutable multisets of hashable, orderable items."""

from __future__ import annotations

from collections import Counter
from typing import Hashable, Iterable, Iterator


class Bag:
    """A finite multiset.

    ``+`` is bag union (counts add), ``-`` is bag difference (counts
    subtract, floored at zero), ``&`` is intersection (pointwise minimum)
    and ``<=`` is inclusion. Bags are hashable and compare by content.
    """

    __slots__ = ("_items", "_hash")

    def __init__(self, items: Iterable[Hashable] = ()):
        counts = Counter(items)
        self._items = tuple(sorted((k, n) for k, n in counts.items() if n > 0))
        self._hash = hash(self._items)

    @classmethod
    def _from_counter(cls, counts: Counter) -> "Bag":
        bag = cls.__new__(cls)
        bag._items = tuple(sorted((k, n) for k, n in counts.items() if n > 0))
        bag._hash = hash(bag._items)
        return bag

    def counter(self) -> Counter:
        return Counter(dict(self._items))

    def count(self, item) -> int:
        for k, n in self._items:
            if k == item:
                return n
        return 0

    def distinct(self) -> frozenset:
        return frozenset(k for k, _ in self._items)

    def pairs(self) -> tuple:
        return self._items

    def __add__(self, other: "Bag") -> "Bag":
        return Bag._from_counter(self.counter() + other.counter())

    def __sub__(self, other: "Bag") -> "Bag":
        return Bag._from_counter(self.counter() - other.counter())

    def __and__(self, other: "Bag") -> "Bag":
        return Bag._from_counter(self.counter() & other.counter())

    def __le__(self, other: "Bag") -> bool:
        theirs = dict(other._items)
        return all(theirs.get(k, 0) >= n for k, n in self._items)

    def __lt__(self, other: "Bag") -> bool:
        return self <= other and self != other

    def __ge__(self, other: "Bag") -> bool:
        return other <= self

    def __gt__(self, other: "Bag") -> bool:
        return other < self

    def __eq__(self, other) -> bool:
        return isinstance(other, Bag) and self._items == other._items

    def __hash__(self) -> int:
        return self._hash

    def __len__(self) -> int:
        return sum(n for _, n in self._items)

    def __bool__(self) -> bool:
        return bool(self._items)

    def __iter__(self) -> Iterator:
        for k, n in self._items:
            for _ in range(n):
                yield k

    def __contains__(self, item) -> bool:
        return self.count(item) > 0

    def __repr__(self) -> str:
        return "Bag([" + ", ".join(str(x) for x in self) + "])"

    def __str__(self) -> str:
        return "[" + ", ".join(str(x) for x in self) + "]"


EMPTY = Bag()
