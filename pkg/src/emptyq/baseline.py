"""Classical exact solvers.

These are the correctness oracles for the search algorithms and the classical
side of every query-complexity comparison.  Each reads the whole input
exactly once through its oracle (charge n for 1-D, n^2 for 2-D), so the
classical charge curves sit on the information-theoretic reference lines.
"""

from __future__ import annotations

from typing import Optional

import numpy as np

from .maps import CountingOracle, Map1D, Map2D, Rect, Segment, Square, TritMap1D

__all__ = [
    "lseg_scan",
    "szbt_scan",
    "lsqr_dp",
    "lrecw_scan",
    "lrec2_scan",
    "rect_empty_check",
    "zero_blocks",
    "longest_zero_run",
    "segment_is_empty",
    "szbt_segment_is_valid",
    "square_is_empty",
    "rect_is_empty",
]


def longest_zero_run(bits: np.ndarray) -> Optional[tuple[int, int]]:
    """(start, end) of the longest run of zeros, or None; ties go leftmost."""
    padded = np.concatenate(([1], np.asarray(bits, dtype=np.uint8), [1]))
    ones = np.flatnonzero(padded)
    gaps = np.diff(ones) - 1
    if gaps.size == 0 or gaps.max() < 1:
        return None
    best = int(np.argmax(gaps))
    start = int(ones[best])  # position after the bounding one, in padded coords -1
    return start, start + int(gaps[best]) - 1


def lseg_scan(oracle: CountingOracle) -> Optional[Segment]:
    """Longest empty segment by one linear pass; charge exactly n."""
    if not isinstance(oracle.target, Map1D):
        raise TypeError("lseg_scan requires a Map1D oracle")
    bits = oracle.read_all()
    run = longest_zero_run(bits)
    return None if run is None else Segment(run[0], run[1])


def szbt_scan(oracle: CountingOracle) -> Optional[Segment]:
    """Any segment of 0s bounded by 2s (sentinel-extended); charge exactly n.

    Returns the leftmost such segment, which may use the virtual walls at -1
    and n, or None when no segment exists.
    """
    if not isinstance(oracle.target, TritMap1D):
        raise TypeError("szbt_scan requires a TritMap1D oracle")
    trits = oracle.read_all()
    n = len(trits)
    wall = -1          # position of the last wall candidate (2 or sentinel)
    run_clean = True   # no 1 seen since that wall
    for i in range(n):
        v = int(trits[i])
        if v == 0:
            continue
        if v == 2:
            if run_clean and wall <= i - 1:
                return Segment(wall, i)
            wall, run_clean = i, True
        else:
            run_clean = False
    if run_clean and wall <= n - 1:
        return Segment(wall, n)
    return None


def lsqr_dp(oracle: CountingOracle) -> Optional[Square]:
    """Largest empty square via prefix sums; charge exactly n^2."""
    if not isinstance(oracle.target, Map2D):
        raise TypeError("lsqr_dp requires a Map2D oracle")
    cells = oracle.read_all()
    n = cells.shape[0]
    pref = np.zeros((n + 1, n + 1), dtype=np.int64)
    np.cumsum(np.cumsum(cells, axis=0), axis=1, out=pref[1:, 1:])

    def window_sums(d: int) -> np.ndarray:
        return (pref[d:, d:] - pref[:-d, d:] - pref[d:, :-d] + pref[:-d, :-d])

    lo, hi = 1, n
    best = 0
    while lo <= hi:
        mid = (lo + hi) // 2
        if (window_sums(mid) == 0).any():
            best = mid
            lo = mid + 1
        else:
            hi = mid - 1
    if best == 0:
        return None
    zi, zj = np.argwhere(window_sums(best) == 0)[0]
    return Square(int(zi), int(zj), best)


def _longest_true_run(flags: np.ndarray) -> tuple[int, int, int]:
    """(length, start, end) of the longest run of True; (0, -1, -1) if none."""
    padded = np.concatenate(([False], flags, [False]))
    edges = np.flatnonzero(np.diff(padded.astype(np.int8)))
    if edges.size == 0:
        return 0, -1, -1
    starts, ends = edges[0::2], edges[1::2] - 1
    lengths = ends - starts + 1
    best = int(np.argmax(lengths))
    return int(lengths[best]), int(starts[best]), int(ends[best])


def lrecw_scan(oracle: CountingOracle, d: int) -> Optional[Rect]:
    """Best width-d empty rectangle; charge exactly n^2.

    For every d-column window the longest run of all-zero rows gives one
    candidate; candidates compare by (exists, size), so a one-row rectangle
    (size 0) still beats no rectangle at all.
    """
    if not isinstance(oracle.target, Map2D):
        raise TypeError("lrecw_scan requires a Map2D oracle")
    n = oracle.target.n
    if not 1 <= d <= n:
        raise ValueError("need 1 <= d <= n")
    cells = oracle.read_all()
    rowp = np.zeros((n, n + 1), dtype=np.int64)
    np.cumsum(cells, axis=1, out=rowp[:, 1:])
    best: Optional[Rect] = None
    best_key = (False, 0)
    for y in range(n - d + 1):
        clean = (rowp[:, y + d] - rowp[:, y]) == 0
        length, lo, hi = _longest_true_run(clean)
        if length == 0:
            continue
        rect = Rect(lo, y, hi, y + d - 1)
        key = (True, rect.size)
        if key > best_key:
            best, best_key = rect, key
    return best


def zero_blocks(cells: np.ndarray) -> list[Rect]:
    """Decompose a promise map into its isolated zero rectangles.

    Raises ValueError when the zero cells do not form disjoint axis-aligned
    rectangles with full one-walls (the LREC2 promise).
    """
    n = cells.shape[0]
    open_runs: dict[tuple[int, int], int] = {}  # (y1, y2) -> first row
    blocks: list[Rect] = []
    for i in range(n + 1):
        if i < n:
            row = np.asarray(cells[i])
            padded = np.concatenate(([1], row, [1]))
            edges = np.flatnonzero(np.diff((padded == 0).astype(np.int8)))
            runs = {(int(s), int(e - 1)) for s, e in zip(edges[0::2], edges[1::2])}
        else:
            runs = set()
        for key in list(open_runs):
            if key not in runs:
                blocks.append(Rect(open_runs.pop(key), key[0], i - 1, key[1]))
        for key in runs:
            if key not in open_runs:
                open_runs[key] = i
    # a run that partially overlaps a different run above breaks the promise
    spans = np.zeros((n, n), dtype=bool)
    for b in blocks:
        if spans[b.x1 : b.x2 + 1, b.y1 : b.y2 + 1].any():
            raise ValueError("zero cells do not satisfy the rectangle promise")
        spans[b.x1 : b.x2 + 1, b.y1 : b.y2 + 1] = True
    covered = int(spans.sum())
    if covered != int((np.asarray(cells) == 0).sum()):
        raise ValueError("zero cells do not satisfy the rectangle promise")
    for b in blocks:
        for other in blocks:
            if other is b:
                continue
            row_touch = (_overlap(b.x1, b.x2, other.x1, other.x2)
                         and _overlap(b.y1 - 1, b.y2 + 1, other.y1, other.y2))
            col_touch = (_overlap(b.x1 - 1, b.x2 + 1, other.x1, other.x2)
                         and _overlap(b.y1, b.y2, other.y1, other.y2))
            if row_touch or col_touch:  # edge contact breaks the one-walls
                raise ValueError("zero blocks touch; promise violated")
    return blocks


def _overlap(a1: int, a2: int, b1: int, b2: int) -> bool:
    return max(a1, b1) <= min(a2, b2)


def lrec2_scan(oracle: CountingOracle, h: int = 1, w: int = 1) -> Optional[Rect]:
    """Largest promise block with y-extent >= h and x-extent >= w; charge n^2."""
    if not isinstance(oracle.target, Map2D):
        raise TypeError("lrec2_scan requires a Map2D oracle")
    cells = oracle.read_all()
    best: Optional[Rect] = None
    best_key = (False, 0)
    for b in zero_blocks(cells):
        if b.y2 - b.y1 + 1 < h or b.x2 - b.x1 + 1 < w:
            continue
        key = (True, b.size)
        if key > best_key:
            best, best_key = b, key
    return best


def rect_empty_check(oracle: CountingOracle, rect: Rect) -> bool:
    """Charged emptiness check; stops at the first 1 it reads."""
    for i in range(rect.x1, rect.x2 + 1):
        for j in range(rect.y1, rect.y2 + 1):
            if oracle.read2(i, j):
                return False
    return True


# ---------------------------------------------------------------------------
# uncharged result verifiers (test mode)


def segment_is_empty(m: Map1D, seg: Segment) -> bool:
    if not 0 <= seg.l <= seg.r <= m.n - 1:
        return False
    return m.count_ones(seg.l, seg.r) == 0


def szbt_segment_is_valid(m: TritMap1D, seg: Segment) -> bool:
    if not (-1 <= seg.l < seg.r <= m.n):
        return False
    if m.value(seg.l) != 2 or m.value(seg.r) != 2:
        return False
    inner = m.trits[seg.l + 1 : seg.r]
    return bool((inner == 0).all())


def square_is_empty(m: Map2D, sq: Square) -> bool:
    if sq.d < 1 or not (0 <= sq.x and 0 <= sq.y):
        return False
    if sq.x + sq.d - 1 > m.n - 1 or sq.y + sq.d - 1 > m.n - 1:
        return False
    return m.ones_in_rect(sq.x, sq.y, sq.x + sq.d - 1, sq.y + sq.d - 1) == 0


def rect_is_empty(m: Map2D, rect: Rect) -> bool:
    if not (0 <= rect.x1 <= rect.x2 <= m.n - 1 and 0 <= rect.y1 <= rect.y2 <= m.n - 1):
        return False
    return m.ones_in_rect(rect.x1, rect.y1, rect.x2, rect.y2) == 0
