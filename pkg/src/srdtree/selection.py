"""Order statistics over (id, value) pairs.

``nth_largest`` returns the n-th largest value and the exact set of n item
ids that realize it.  Ties at the threshold are broken toward smaller ids,
which makes the chosen set a pure function of the input multiset: permuting
the input never changes the answer.

The default engine is a randomized quickselect with a fixed pivot seed, so
repeated runs behave identically.  A worst-case linear median-of-medians
engine is available behind the ``engine`` flag for paranoia and tests.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .errors import NOutOfRange

_PIVOT_SEED = 0x5DEECE66D


@dataclass(frozen=True)
class SelectionResult:
    """Threshold value plus the ids chosen with it, ascending."""

    threshold: object
    chosen_ids: tuple


def nth_largest(values, n: int, engine: str = "quickselect") -> SelectionResult:
    """Select the n largest entries of an (id, value) iterable.

    Internally each pair becomes the key (-value, id); the n-th smallest key
    is found by the chosen engine and everything at or below it is kept.
    Keys are unique because ids are, so exactly n items survive.
    """
    items = list(values)
    if not 1 <= n <= len(items):
        raise NOutOfRange(f"n = {n} outside 1..{len(items)}")

    keys = [(-value, item_id) for item_id, value in items]
    if engine == "quickselect":
        nth_key = _quickselect_kth(keys, n - 1)
    elif engine == "median_of_medians":
        nth_key = _median_of_medians_kth(keys, n - 1)
    else:
        raise ValueError(f"unknown selection engine {engine!r}")

    chosen = sorted(item_id for neg, item_id in keys if (neg, item_id) <= nth_key)
    return SelectionResult(threshold=-nth_key[0], chosen_ids=tuple(chosen))


def _quickselect_kth(keys, k):
    """k-th smallest key (0-based) by in-place partitioning, expected O(n)."""
    arr = list(keys)
    rng = random.Random(_PIVOT_SEED)
    lo, hi = 0, len(arr) - 1
    while True:
        if lo == hi:
            return arr[lo]
        p = rng.randint(lo, hi)
        arr[p], arr[hi] = arr[hi], arr[p]
        pivot = arr[hi]
        store = lo
        for i in range(lo, hi):
            if arr[i] < pivot:
                arr[store], arr[i] = arr[i], arr[store]
                store += 1
        arr[hi], arr[store] = arr[store], arr[hi]
        if store == k:
            return arr[store]
        if k < store:
            hi = store - 1
        else:
            lo = store + 1


def _median_of_medians_kth(keys, k):
    """k-th smallest key with the 5-group pivot rule, worst-case O(n)."""
    arr = list(keys)
    while True:
        if len(arr) <= 10:
            return sorted(arr)[k]
        groups = [sorted(arr[i:i + 5]) for i in range(0, len(arr), 5)]
        medians = [g[len(g) // 2] for g in groups]
        pivot = _median_of_medians_kth(medians, len(medians) // 2)
        lows = [x for x in arr if x < pivot]
        highs = [x for x in arr if x > pivot]
        if k < len(lows):
            arr = lows
        elif k < len(arr) - len(highs):
            return pivot
        else:
            k -= len(arr) - len(highs)
            arr = highs
