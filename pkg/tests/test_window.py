"""Monotone queue semantics and amortized-cost audit."""

import random

import numpy as np
import pytest

from emptyq.window import MonotoneQueue


def test_min_queue_example():
    q = MonotoneQueue("min")
    for v in (3, 1, 4):
        q.add(v)
    assert q.extremum() == 1
    q.remove()  # drops the 3
    assert q.extremum() == 1


def test_max_queue_example():
    q = MonotoneQueue("max")
    for v in (3, 1, 4):
        q.add(v)
    assert q.extremum() == 4
    q.remove()
    q.remove()
    assert q.extremum() == 4


def test_empty_queue_errors():
    q = MonotoneQueue("min")
    with pytest.raises(IndexError):
        q.extremum()
    with pytest.raises(IndexError):
        q.remove()
    with pytest.raises(ValueError):
        MonotoneQueue("median")


def test_sliding_window_width_3():
    seq = [3, 1, 4, 1, 5]
    q = MonotoneQueue("min")
    out = []
    for idx, v in enumerate(seq):
        q.add(v)
        if idx >= 3:
            q.remove()
        if idx >= 2:
            out.append(q.extremum())
    assert out == [1, 1, 1]


def test_duplicates_depart_by_arrival_order():
    q = MonotoneQueue("min")
    for v in (2, 2, 2):
        q.add(v)
    q.remove()
    q.remove()
    assert q.extremum() == 2
    assert len(q) == 1


@pytest.mark.parametrize("mode", ["min", "max"])
@pytest.mark.parametrize("width", [1, 2, 7, 50])
def test_matches_naive_rescan(mode, width):
    rng = random.Random(width * 1000 + (mode == "max"))
    seq = [rng.randrange(40) for _ in range(800)]
    q = MonotoneQueue(mode)
    picker = min if mode == "min" else max
    for idx, v in enumerate(seq):
        q.add(v)
        if idx >= width:
            q.remove()
        if idx >= width - 1:
            assert q.extremum() == picker(seq[idx - width + 1 : idx + 1])


def test_movement_counter_is_amortized_linear():
    rng = np.random.default_rng(5)
    seq = rng.integers(0, 1000, size=20000)
    q = MonotoneQueue("min")
    ops = 0
    for idx, v in enumerate(seq):
        q.add(int(v))
        ops += 1
        if idx >= 17:
            q.remove()
            ops += 1
    assert q.movements <= 2 * ops
