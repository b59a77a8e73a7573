"""Two-dimensional searches: empty squares and empty rectangles.

The square probe computes per-row wall positions around the anchor with
repeated minimal/maximal-index searches (each call's repetitions sized so the
total error over all rows stays below 0.1), then slides monotone queues over
row windows to find an anchor whose walls leave room for a d x d square.
Candidates are verified cell by cell before being reported, so non-None
answers are empty with certainty.

The rectangle searches are maximum searches over candidate pools: fixed-width
rectangles maximize the longest-run answer of the derived column-band
indicator (each read of which is an inner search over a row window), and the
rectangle-empty-areas search maximizes the wall-to-wall area over all cells.
"""

from __future__ import annotations

import math
import random
from typing import Optional

import numpy as np

from .maps import CountingOracle, Map2D, Rect, Square
from .baseline import zero_blocks
from .qcore import (
    BaseRoutine,
    CandidateSet,
    amplitude_amplify,
    boost,
    boost_count,
    col_space,
    estimate_success,
    first_one,
    first_one_null_charge,
    first_one_worst_charge,
    last_one,
    qmax,
    qsearch,
    qsearch_cutoff,
    row_space,
)
from .algos1d import doubling_then_binary_search, lseg_engine, lseg_worst_charge
from .window import MonotoneQueue

__all__ = [
    "row_repetitions",
    "fixed_size_fixed_point_square",
    "make_square_base",
    "fixed_size_square",
    "lsqr",
    "g_window",
    "fixed_left_rec",
    "lrecw",
    "fixed_point_rec_area",
    "lrec2",
    "square_probe_worst_charge",
]


def row_repetitions(d: int) -> int:
    """Repetitions per wall search so ~4d calls stay within total error 0.1."""
    return max(1, math.ceil(math.log10(40 * max(d, 1))))


def _combine_min(space, lo, hi, rng, reps) -> Optional[int]:
    best = None
    for _ in range(reps):
        idx = first_one(space, lo, hi, rng)
        if idx is not None and (best is None or idx < best):
            best = idx
    return best


def _combine_max(space, lo, hi, rng, reps) -> Optional[int]:
    best = None
    for _ in range(reps):
        idx = last_one(space, lo, hi, rng)
        if idx is not None and (best is None or idx > best):
            best = idx
    return best


def _verified_square_charge(m: Map2D, x: int, y: int, d: int) -> tuple[bool, int]:
    """(is empty, charge of a row-major scan that stops at the first 1)."""
    if m.ones_in_rect(x, y, x + d - 1, y + d - 1) == 0:
        return True, d * d
    charge = 0
    for i in range(x, x + d):
        row = m.row_map(i)
        if row.count_ones(y, y + d - 1) > 0:
            charge += row.next_one(y) - y + 1
            return False, charge
        charge += d
    return False, charge  # unreachable; keeps the accounting total


def fixed_size_fixed_point_square(oracle: CountingOracle, i: int, j: int, d: int,
                                  rng: random.Random) -> Optional[Square]:
    """Empty d x d square containing (i, j) with probability >= 0.9, or None.

    Non-None answers are verified empty before returning (soundness holds
    with certainty).  Charge O(d^1.5 log d).
    """
    m = oracle.target
    if not isinstance(m, Map2D):
        raise TypeError("fixed_size_fixed_point_square requires a Map2D oracle")
    n = m.n
    if not (0 <= i <= n - 1 and 0 <= j <= n - 1):
        raise ValueError("anchor outside domain")
    if not 1 <= d <= n:
        raise ValueError("need 1 <= d <= n")
    if oracle.read2(i, j) == 1:
        return None
    if d == 1:
        return Square(i, j, 1)

    reps = row_repetitions(d)
    jlo = max(0, j - d + 1)
    jhi = min(n - 1, j + d - 1)
    xlo = max(0, i - d + 1)
    xhi = min(i, n - d)
    if xhi < xlo:
        return None

    left_width = j - jlo + 1
    right_width = jhi - j + 1
    clean_charge = reps * (first_one_null_charge(left_width)
                           + first_one_null_charge(right_width))

    walls: dict[int, tuple[int, int]] = {}
    for k in range(xlo, xhi + d):
        row = m.row_map(k)
        if row.count_ones(jlo, jhi) == 0:
            oracle.charge(clean_charge)
            walls[k] = (jlo - 1, jhi + 1)
            continue
        space = row_space(oracle, k)
        lw = _combine_max(space, jlo, j, rng, reps)
        rw = _combine_min(space, j, jhi, rng, reps)
        walls[k] = (jlo - 1 if lw is None else lw,
                    jhi + 1 if rw is None else rw)

    maxq = MonotoneQueue("max")
    minq = MonotoneQueue("min")
    for k in range(xlo, xlo + d):
        lw, rw = walls[k]
        maxq.add(lw)
        minq.add(rw)
    x = xlo
    while True:
        lprime = maxq.extremum()
        rprime = minq.extremum()
        if rprime - lprime >= d + 1 and lprime <= j - 1:
            y0 = lprime + 1
            ok, charge = _verified_square_charge(m, x, y0, d)
            oracle.charge(charge)
            return Square(x, y0, d) if ok else None
        x += 1
        if x > xhi:
            return None
        maxq.remove()
        minq.remove()
        lw, rw = walls[x + d - 1]
        maxq.add(lw)
        minq.add(rw)


def square_probe_worst_charge(n: int, d: int) -> int:
    """Padded charge of one amplified fixed-size square probe."""
    reps = row_repetitions(d)
    per_run = 1 + (2 * d - 1) * reps * 2 * first_one_worst_charge(min(d, n)) + d * d
    budget = math.ceil(9.0 / math.sqrt(0.5 * (d / n) ** 2))
    return budget * per_run


def make_square_base(m: Map2D, d: int) -> BaseRoutine:
    """Amplification base: uniform anchor cell, verified square probe."""
    n = m.n
    reps = row_repetitions(d)
    q_worst = 1 + (2 * d - 1) * reps * 2 * first_one_worst_charge(min(d, n)) + d * d

    covered = _covered_mask(m, d)

    def sampler(rng: random.Random):
        i = rng.randrange(n)
        j = rng.randrange(n)
        if m.value(i, j) == 1:
            return False, None, 1
        if not covered[i, j]:
            return False, None, q_worst
        jlo, jhi = max(0, j - d + 1), min(n - 1, j + d - 1)
        xlo, xhi = max(0, i - d + 1), min(i, n - d)
        if xhi >= xlo and m.ones_in_rect(xlo, jlo, xhi + d - 1, jhi) == 0:
            clean = reps * (first_one_null_charge(j - jlo + 1)
                            + first_one_null_charge(jhi - j + 1))
            charge = 1 + (xhi + d - xlo) * clean + d * d
            return True, Square(xlo, jlo, d), charge
        scratch = CountingOracle(m)
        sq = fixed_size_fixed_point_square(scratch, i, j, d, rng)
        return sq is not None, sq, scratch.count

    return BaseRoutine(sampler=sampler, q_worst=q_worst,
                       p_floor=0.5 * (d / n) ** 2)


def _covered_mask(m: Map2D, d: int) -> np.ndarray:
    """covered[i, j]: does some all-zero d x d window contain (i, j)?"""
    n = m.n
    if d > n:
        return np.zeros((n, n), dtype=bool)
    p = m.area_prefix()
    zero_anchor = (p[d:, d:] - p[:-d, d:] - p[d:, :-d] + p[:-d, :-d]) == 0
    zp = np.zeros((n - d + 2, n - d + 2), dtype=np.int64)
    np.cumsum(np.cumsum(zero_anchor, axis=0), axis=1, out=zp[1:, 1:])
    idx = np.arange(n)
    a1 = np.maximum(0, idx - d + 1)
    a2 = np.minimum(idx, n - d)
    lo_r, hi_r = a1, a2 + 1
    lo_c, hi_c = a1, a2 + 1
    total = (zp[np.ix_(hi_r, hi_c)] - zp[np.ix_(lo_r, hi_c)]
             - zp[np.ix_(hi_r, lo_c)] + zp[np.ix_(lo_r, lo_c)])
    return total > 0


def fixed_size_square(oracle: CountingOracle, d: int, rng: random.Random,
                      base: Optional[BaseRoutine] = None) -> Optional[Square]:
    """Some empty d x d square with probability >= 0.9 when one exists.

    One-sided and verified, like the 1-D fixed-length probe.  Charge
    O(n sqrt(d)) for d within a constant of the optimum.
    """
    m = oracle.target
    if not isinstance(m, Map2D):
        raise TypeError("fixed_size_square requires a Map2D oracle")
    if not 1 <= d <= m.n:
        raise ValueError("need 1 <= d <= n")
    if base is None:
        base = make_square_base(m, d)
    if base.p is None:
        base.p = estimate_success(base, rng)
    return amplitude_amplify(base, oracle, rng)


def lsqr(oracle: CountingOracle, rng: random.Random) -> Optional[Square]:
    """Maximum-size empty square; failure probability O(1 / log n)."""
    m = oracle.target
    if not isinstance(m, Map2D):
        raise TypeError("lsqr requires a Map2D oracle")
    n = m.n
    reps = boost_count(n)
    bases: dict[int, BaseRoutine] = {}

    def probe(d: int) -> Optional[Square]:
        if d > n:
            return None
        b = bases.get(d)
        if b is None:
            b = make_square_base(m, d)
            b.p = estimate_success(b, rng)
            bases[d] = b
        return boost(reps, lambda: amplitude_amplify(b, oracle, rng))

    return doubling_then_binary_search(probe)


# ---------------------------------------------------------------------------
# fixed-width rectangles


def g_window(oracle: CountingOracle, x1: int, d: int, i: int,
             rng: random.Random) -> int:
    """1 iff row i contains a 1 within columns [x1, x1 + d - 1].

    One-sided: a returned 1 is always sound, a returned 0 errs with
    probability <= 0.1.  Charge O(sqrt(d)); exactly one read when d = 1.
    """
    m = oracle.target
    if not isinstance(m, Map2D):
        raise TypeError("g_window requires a Map2D oracle")
    n = m.n
    if not (0 <= x1 <= n - d and 0 <= i <= n - 1):
        raise ValueError("window outside domain")
    return int(qsearch(row_space(oracle, i), x1, x1 + d - 1, rng) is not None)


def fixed_left_rec(oracle: CountingOracle, x1: int, d: int, rng: random.Random,
                   bases: Optional[dict[int, BaseRoutine]] = None) -> Optional[Rect]:
    """Largest empty rectangle on columns [x1, x1 + d - 1].

    Runs the longest-empty-segment search over the band indicator whose reads
    are inner searches of row windows; each indicator read is billed at the
    inner search's padded cost.
    """
    m = oracle.target
    if not isinstance(m, Map2D):
        raise TypeError("fixed_left_rec requires a Map2D oracle")
    n = m.n
    if not (1 <= d <= n and 0 <= x1 <= n - d):
        raise ValueError("window outside domain")
    band = m.band_any_map(x1, d)
    seg = lseg_engine(band, oracle, rng, tf=qsearch_cutoff(d), bases=bases)
    if seg is None:
        return None
    return Rect(seg.l, x1, seg.r, x1 + d - 1)


def lrecw(oracle: CountingOracle, d: int, rng: random.Random) -> Optional[Rect]:
    """Maximum-size empty rectangle of width d, probability >= 0.9, else None.

    Maximum search over all window starts; candidates compare by
    (exists, size) so a one-row rectangle still beats no rectangle.
    """
    m = oracle.target
    if not isinstance(m, Map2D):
        raise TypeError("lrecw requires a Map2D oracle")
    n = m.n
    if not 1 <= d <= n:
        raise ValueError("need 1 <= d <= n")
    count = n - d + 1
    rowp = m.row_prefix()

    truth: list[tuple[bool, int]] = []
    for x1 in range(count):
        clean = (rowp[:, x1 + d] - rowp[:, x1]) == 0
        best = _longest_run(clean)
        truth.append((best > 0, max(0, best - 1) * (d - 1)))

    base_cache: dict[int, dict[int, BaseRoutine]] = {}

    def evaluate(x1: int, rng2: random.Random):
        with oracle.scope("g_window"):
            rect = fixed_left_rec(oracle, x1, d, rng2,
                                  bases=base_cache.setdefault(x1, {}))
        if rect is None:
            return (False, 0), None
        return (True, rect.size), rect

    cand = CandidateSet(
        m=count,
        true_value=lambda x1: truth[x1],
        evaluate=evaluate,
        eval_worst=lseg_worst_charge(n, tf=qsearch_cutoff(d)),
        oracle=oracle,
    )
    with oracle.scope("qmax"):
        best = qmax(cand, rng)
    return best


def _longest_run(flags: np.ndarray) -> int:
    padded = np.concatenate(([False], flags, [False]))
    edges = np.flatnonzero(np.diff(padded.astype(np.int8)))
    if edges.size == 0:
        return 0
    return int((edges[1::2] - edges[0::2]).max())


# ---------------------------------------------------------------------------
# rectangle empty areas


FPRA_REPS = 2  # boosts each wall search to error <= 0.01 < 0.025


def fixed_point_rec_area(oracle: CountingOracle, i: int, j: int,
                         rng: random.Random) -> Optional[Rect]:
    """Maximal empty rectangle containing (i, j) on promise inputs.

    Wall-to-wall search along the row and the column, each boosted; walls
    default to the map border.  Probability >= 0.9; charge O(sqrt(n)).
    """
    m = oracle.target
    if not isinstance(m, Map2D):
        raise TypeError("fixed_point_rec_area requires a Map2D oracle")
    n = m.n
    if not (0 <= i <= n - 1 and 0 <= j <= n - 1):
        raise ValueError("cell outside domain")
    if oracle.read2(i, j) == 1:
        return None
    row = row_space(oracle, i)
    col = col_space(oracle, j)
    top = _combine_max(col, 0, i, rng, FPRA_REPS) if i > 0 else None
    bottom = _combine_min(col, i, n - 1, rng, FPRA_REPS)
    left = _combine_max(row, 0, j, rng, FPRA_REPS) if j > 0 else None
    right = _combine_min(row, j, n - 1, rng, FPRA_REPS)
    x1 = 0 if top is None else top + 1
    x2 = n - 1 if bottom is None else bottom - 1
    y1 = 0 if left is None else left + 1
    y2 = n - 1 if right is None else right - 1
    return Rect(x1, y1, x2, y2)


def fpra_worst_charge(n: int) -> int:
    return 1 + 4 * FPRA_REPS * first_one_worst_charge(n)


def lrec2(oracle: CountingOracle, h: int, w: int,
          rng: random.Random) -> Optional[Rect]:
    """Maximum-size empty rectangle on promise inputs, or None.

    Maximum search over all n^2 cells of the wall-to-wall rectangle area;
    non-rectangles (cells holding a 1) rank below every rectangle, including
    size-0 single-cell ones.  The height >= h / width >= w minima are
    validated on the final answer only.
    """
    m = oracle.target
    if not isinstance(m, Map2D):
        raise TypeError("lrec2 requires a Map2D oracle")
    n = m.n
    if not (1 <= h <= n and 1 <= w <= n):
        raise ValueError("need 1 <= h, w <= n")
    blocks = zero_blocks(m.cells)
    block_size = np.full((n, n), -1, dtype=np.int64)
    for b in blocks:
        block_size[b.x1 : b.x2 + 1, b.y1 : b.y2 + 1] = b.size

    def true_value(idx: int):
        s = int(block_size[idx // n, idx % n])
        return (s >= 0, max(s, 0))

    def evaluate(idx: int, rng2: random.Random):
        rect = fixed_point_rec_area(oracle, idx // n, idx % n, rng2)
        if rect is None:
            return (False, 0), None
        return (True, rect.size), rect

    cand = CandidateSet(
        m=n * n,
        true_value=true_value,
        evaluate=evaluate,
        eval_worst=fpra_worst_charge(n),
        oracle=oracle,
    )
    best = qmax(cand, rng)
    if best is None:
        return None
    if best.y2 - best.y1 + 1 < h or best.x2 - best.x1 + 1 < w:
        return None
    return best
