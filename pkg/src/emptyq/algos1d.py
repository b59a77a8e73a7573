"""One-dimensional searches: largest empty segment, zero-segment bounded by 2s.

The fixed-length probes follow the prose recipe: check the anchor cell, walk
right to the nearest wall, then confirm the trailing window with a maximal-
index search.  Their amplified versions verify every candidate window before
reporting success, so a non-None answer is genuinely empty with certainty and
the amplification never amplifies false positives.

Amplified probes are driven by classified base samplers: for a uniformly
drawn anchor the probe's outcome is fully determined by the wall structure
except in one case (the nearest wall lies inside the window and the trimmed
window behind it is clean), where it reduces to whether the minimal-index
search returns exactly that wall.  Only that case runs a search chain.
"""

from __future__ import annotations

import math
import random
from typing import Optional

from .maps import CountingOracle, Map1D, Segment, TritMap1D
from .qcore import (
    BaseRoutine,
    BitSpace,
    amplitude_amplify,
    bit_space,
    boost,
    boost_count,
    estimate_success,
    first_one,
    first_one_worst_charge,
    first_one_null_charge,
    last_one,
    nonzero_space,
    qsearch_cutoff,
    CUTOFF_C,
    GROWTH,
    SCAN_MAX,
)

__all__ = [
    "fixed_len_fixed_point",
    "make_fixed_len_base",
    "fixed_len",
    "lseg",
    "lseg_engine",
    "doubling_then_binary_search",
    "fixed_len_fixed_point_szbt",
    "make_szbt_base",
    "szbt_probe",
    "szbt",
    "min_bounded_len",
    "fixed_len_worst_charge",
    "lseg_worst_charge",
]


# ---------------------------------------------------------------------------
# fixed-length probe at a fixed anchor (LSEG)


def fixed_len_fixed_point(oracle: CountingOracle, i: int, d: int,
                          rng: random.Random) -> Optional[Segment]:
    """Length-d empty segment containing i, or None; error at most 0.2.

    Non-None results have length exactly d (a longer stretch is trimmed to
    the window ending at the nearest right wall).  Charge O(sqrt(d)).
    """
    m = oracle.target
    if not isinstance(m, Map1D):
        raise TypeError("fixed_len_fixed_point requires a Map1D oracle")
    n = m.n
    if not 0 <= i <= n - 1:
        raise ValueError("anchor outside domain")
    if not 1 <= d <= n:
        raise ValueError("need 1 <= d <= n")
    if oracle.read1(i) == 1:
        return None
    if d == 1:
        return Segment(i, i)
    space = bit_space(oracle)
    hi = min(i + d - 1, n - 1)
    wall = first_one(space, i, hi, rng)
    r = hi if wall is None else wall - 1
    lo = max(0, r - d + 1)
    left_wall = last_one(space, lo, r, rng)
    left = lo if left_wall is None else left_wall + 1
    if r - left + 1 < d:
        return None
    return Segment(left, r)


# -- classified base for the amplified probe --

_FAIL = 0
_SUCC = 1
_CHAIN = 2


def _flfp_classify(m: Map1D, i: int, d: int):
    """Outcome class of the verified probe at anchor i.

    (_FAIL, None) and (_SUCC, segment) are deterministic; (_CHAIN, (q0, hi))
    succeeds iff the minimal-index search over [i, hi] returns exactly q0,
    in which case the payload is the window [q0 - d, q0 - 1].
    """
    n = m.n
    if m.value(i) == 1:
        return _FAIL, None
    hi = min(i + d - 1, n - 1)
    q0 = m.next_one(i)
    if q0 > hi:
        lo = max(0, hi - d + 1)
        if hi - lo + 1 < d:
            return _FAIL, None
        if m.prev_one(hi) >= lo:
            return _FAIL, None
        return _SUCC, Segment(lo, hi)
    lo = q0 - d
    if lo < 0:
        return _FAIL, None
    if m.prev_one(q0 - 1) >= lo:
        return _FAIL, None
    return _CHAIN, (q0, hi)


def fixed_len_worst_charge(n: int, d: int, tf: int = 1) -> int:
    """Padded charge of one amplified fixed-length probe (invocation budget
    times the padded per-invocation cost)."""
    w = min(d, n)
    per_run = (1 + 2 * first_one_worst_charge(w) + w) * tf
    budget = math.ceil(CUTOFF_C / math.sqrt(0.5 * d / n))
    return budget * per_run


def make_fixed_len_base(m: Map1D, d: int, tf: int = 1) -> BaseRoutine:
    """Amplification base: uniform anchor, verified fixed-length probe."""
    n = m.n
    w = min(d, n)
    q_worst = (1 + 2 * first_one_worst_charge(w) + w) * tf

    def sampler(rng: random.Random):
        i = rng.randrange(n)
        cls, info = _flfp_classify(m, i, d)
        if cls == _FAIL:
            return False, None, q_worst
        if cls == _SUCC:
            charge = (1 + first_one_null_charge(min(d, n - i)) + first_one_null_charge(d) + d) * tf
            return True, info, charge
        q0, hi = info
        scratch = CountingOracle(m)
        found = first_one(_chain_space(scratch), i, hi, rng)
        if found == q0:
            seg = Segment(q0 - d, q0 - 1)
            return True, seg, (1 + scratch.count + first_one_null_charge(d) + d) * tf
        return False, None, q_worst

    return BaseRoutine(sampler=sampler, q_worst=q_worst, p_floor=0.5 * d / n)


def _chain_space(scratch: CountingOracle) -> BitSpace:
    m = scratch.target
    return BitSpace(m, lambda idx, _rng: scratch.read1(idx), scratch.charge)


def fixed_len(oracle: CountingOracle, d: int, rng: random.Random,
              base: Optional[BaseRoutine] = None) -> Optional[Segment]:
    """Some length-d empty segment with probability >= 0.9 when one exists.

    One-sided: a non-None segment is verified empty before it is returned,
    and None is certain when no length-d empty segment exists.  Charge
    O(sqrt(n / d') * sqrt(d)) for d within a constant of the optimum d'.
    """
    m = oracle.target
    if not isinstance(m, Map1D):
        raise TypeError("fixed_len requires a Map1D oracle")
    if not 1 <= d <= m.n:
        raise ValueError("need 1 <= d <= n")
    if base is None:
        base = make_fixed_len_base(m, d)
    if base.p is None:
        base.p = estimate_success(base, rng)
    return amplitude_amplify(base, oracle, rng)


def doubling_then_binary_search(probe):
    """Shared optimum-bracketing skeleton over a one-sided boosted probe.

    probe(s) returns a witness of feasibility at size s, or None.  Doubling
    finds the first failing power of two, binary search pins the threshold,
    and the final probe at threshold - 1 re-derives the witness.
    """
    d = 1
    res = probe(2)
    while res is not None:
        d *= 2
        res = probe(2 * d)
    left, right = d, 2 * d
    while left < right:
        middle = (left + right) // 2
        if probe(middle) is None:
            right = middle
        else:
            left = middle + 1
    if left - 1 < 1:
        return None
    return probe(left - 1)


def lseg_engine(struct: Map1D, oracle: CountingOracle, rng: random.Random,
                tf: int = 1,
                bases: Optional[dict[int, BaseRoutine]] = None) -> Optional[Segment]:
    """lseg over an arbitrary 0/1 structure, charging `oracle`.

    `tf` is the padded per-read cost of the structure's cells (1 for a plain
    map; the inner search cutoff when cells are themselves computed).
    Prepared amplification bases can be shared across calls via `bases`.
    """
    n = struct.n
    reps = boost_count(n)
    if bases is None:
        bases = {}

    def probe(d: int) -> Optional[Segment]:
        if d > n:
            return None
        b = bases.get(d)
        if b is None:
            b = make_fixed_len_base(struct, d, tf=tf)
            b.p = estimate_success(b, rng)
            bases[d] = b
        return boost(reps, lambda: amplitude_amplify(b, oracle, rng))

    return doubling_then_binary_search(probe)


def lseg(oracle: CountingOracle, rng: random.Random) -> Optional[Segment]:
    """Maximal-length empty segment; failure probability O(1 / log n).

    Doubling over probe lengths brackets the optimum, binary search pins it,
    and every probe is repeated ceil(2 log2 log2 n) times (one-sided error,
    so the first hit wins).  Probes longer than n are skipped for free since
    no such segment can exist.
    """
    m = oracle.target
    if not isinstance(m, Map1D):
        raise TypeError("lseg requires a Map1D oracle")
    return lseg_engine(m, oracle, rng)


# ---------------------------------------------------------------------------
# segment of 0s bounded by 2s


def _first_nonzero(oracle: CountingOracle, space: BitSpace, lo: int, hi: int,
                   rng: random.Random) -> Optional[int]:
    """Minimal nonzero index in [lo, hi] where hi may be the sentinel n."""
    n = oracle.target.n
    qhi = min(hi, n - 1)
    idx = first_one(space, lo, qhi, rng) if lo <= qhi else None
    if idx is None and hi == n:
        return n
    return idx


def _last_nonzero(oracle: CountingOracle, space: BitSpace, lo: int, hi: int,
                  rng: random.Random) -> Optional[int]:
    """Maximal nonzero index in [lo, hi] where lo may be the sentinel -1."""
    qlo = max(lo, 0)
    idx = last_one(space, qlo, hi, rng) if qlo <= hi else None
    if idx is None and lo == -1:
        return -1
    return idx


def fixed_len_fixed_point_szbt(oracle: CountingOracle, i: int, d: int,
                               rng: random.Random) -> Optional[Segment]:
    """Segment of 0s bounded by 2s of length <= d containing i, or None.

    Walls may be the virtual sentinels at -1 and n.  Error at most 0.2;
    charge O(sqrt(d)).
    """
    tm = oracle.target
    if not isinstance(tm, TritMap1D):
        raise TypeError("fixed_len_fixed_point_szbt requires a TritMap1D oracle")
    n = tm.n
    if not 0 <= i <= n - 1:
        raise ValueError("anchor outside domain")
    if d < 1:
        raise ValueError("need d >= 1")
    if oracle.read1(i) != 0:
        return None
    space = nonzero_space(oracle)
    hi = min(i + d - 1, n)
    r = _first_nonzero(oracle, space, i, hi, rng)
    if r is None:
        r = hi
    if oracle.read1(r) != 2:
        return None
    left = _last_nonzero(oracle, space, max(r - d + 1, -1), r - 1, rng)
    if left is None:
        return None
    if oracle.read1(left) != 2:
        return None
    return Segment(left, r)


def min_bounded_len(tm: TritMap1D) -> Optional[int]:
    """Shortest anchor-reachable segment of 0s bounded by 2s, or None.

    Anchored probes always return a segment with the anchor zero strictly
    inside, so wall pairs with empty interiors (adjacent 2s) do not count:
    only pairs at distance >= 2 qualify.  Sentinels act as walls.
    """
    nz = tm.nonzero_map().ones_positions()
    walls = [-1] + [int(p) for p in nz] + [tm.n]
    best = None
    for a, b in zip(walls, walls[1:]):
        if b - a < 2:
            continue
        if tm.value(a) == 2 and tm.value(b) == 2:
            length = b - a + 1
            if best is None or length < best:
                best = length
    return best


def _szbt_q_worst(n: int, d: int) -> int:
    w = max(1, min(d, n))
    return 4 + 2 * first_one_worst_charge(w) + max(0, min(d - 1, n))


def szbt_probe_worst_charge(n: int, d: int) -> int:
    """Padded charge of one amplified bounded-segment probe."""
    budget = math.ceil(CUTOFF_C / math.sqrt(0.5 / n))
    return budget * _szbt_q_worst(n, d)


def make_szbt_base(tm: TritMap1D, d: int) -> BaseRoutine:
    """Amplification base: uniform anchor, verified bounded-segment probe."""
    n = tm.n
    fz = tm.nonzero_map()
    q_worst = _szbt_q_worst(n, d)

    def sampler(rng: random.Random):
        i = rng.randrange(n)
        if tm.value(i) != 0:
            return False, None, 1
        hi = min(i + d - 1, n)
        q0 = fz.next_one(i)  # == n when no real nonzero; n is also the sentinel
        if q0 > hi:
            # window edge is a plain 0, never a wall
            return False, None, q_worst
        scratch = CountingOracle(tm)
        seg = fixed_len_fixed_point_szbt(scratch, i, d, rng)
        if seg is None:
            return False, None, scratch.count
        inner_next = fz.next_one(seg.l + 1) if seg.l + 1 <= n - 1 else n
        if inner_next < seg.r:  # interior verification hits a nonzero
            scratch.charge(inner_next - seg.l)
            return False, None, scratch.count
        scratch.charge(max(seg.r - seg.l - 1, 0))
        return True, seg, scratch.count

    return BaseRoutine(sampler=sampler, q_worst=q_worst, p_floor=0.5 / n)


def szbt_probe(oracle: CountingOracle, d: int, rng: random.Random,
               base: Optional[BaseRoutine] = None) -> Optional[Segment]:
    """Amplified bounded-segment probe at length cap d (one-sided, verified)."""
    tm = oracle.target
    if not isinstance(tm, TritMap1D):
        raise TypeError("szbt_probe requires a TritMap1D oracle")
    if base is None:
        base = make_szbt_base(tm, d)
    if base.p is None:
        base.p = estimate_success(base, rng)
    return amplitude_amplify(base, oracle, rng)


def _szbt_grid(n: int) -> list[int]:
    # caps run up to n + 2: the sentinel-to-sentinel segment of an all-zero
    # map has length n + 2 and must stay reachable
    top = n + 2
    levels = max(1, math.ceil(math.log2(top)))
    return sorted({min(1 << j, top) for j in range(1, levels + 1)} | {top})


def szbt(oracle: CountingOracle, rng: random.Random) -> Optional[Segment]:
    """Any segment of 0s bounded by 2s with probability >= 0.9, else None.

    Minimal-index search over the doubling grid of length caps; each measured
    cap is confirmed by a boosted, verified probe, so the returned segment is
    always genuine.  In-window iterations are billed at the probe's padded
    cost for the largest cap in the window.
    """
    tm = oracle.target
    if not isinstance(tm, TritMap1D):
        raise TypeError("szbt requires a TritMap1D oracle")
    n = tm.n
    grid = _szbt_grid(n)
    dmin = min_bounded_len(tm)
    j_first = None
    if dmin is not None:
        for j, g in enumerate(grid):
            if g >= dmin:
                j_first = j
                break
    reps = math.ceil(math.log2(max(len(grid), 2))) + 1
    bases: dict[int, BaseRoutine] = {}

    def honest_probe(cap: int) -> Optional[Segment]:
        b = bases.get(cap)
        if b is None:
            b = make_szbt_base(tm, cap)
            b.p = estimate_success(b, rng)
            bases[cap] = b
        return boost(reps, lambda: amplitude_amplify(b, oracle, rng))

    last = len(grid) - 1
    s = 0
    while True:
        hi = min((1 << s) - 1, last)
        seg = _szbt_window_rounds(oracle, grid, j_first, hi, rng, reps, honest_probe)
        if seg is not None:
            return seg
        if hi == last:
            return None
        s += 1


def _szbt_window_rounds(oracle, grid, j_first, hi, rng, reps, honest_probe):
    """One search pass over grid[0..hi]; padded cost per iteration."""
    W = hi + 1
    t = 0 if j_first is None or j_first > hi else hi - j_first + 1
    per_iter = reps * szbt_probe_worst_charge(oracle.target.n, grid[hi])
    if W <= SCAN_MAX:
        for j in range(W):
            seg = honest_probe(grid[j])
            if seg is not None:
                return seg
        return None
    cap = qsearch_cutoff(W)
    if t == 0:
        oracle.charge(cap * per_iter)
        return None
    theta = math.asin(math.sqrt(t / W))
    m, m_max, spent = 1.0, math.sqrt(W), 0
    while True:
        j = rng.randrange(math.ceil(m))
        if spent + j + 1 > cap:
            return None
        spent += j + 1
        oracle.charge(j * per_iter)
        if rng.random() < math.sin((2 * j + 1) * theta) ** 2:
            idx = j_first + rng.randrange(t)
            seg = honest_probe(grid[idx])
            if seg is not None:
                return seg
        else:
            oracle.charge(per_iter)  # screening probe of the measured cap
            if rng.random() < 0.1:
                oracle.charge((reps - 1) * per_iter)
        m = min(m * GROWTH, m_max)


def lseg_worst_charge(n: int, tf: int = 1) -> int:
    """Padded worst-case charge of one full lseg run (used as the
    per-iteration cost when lseg itself is evaluated inside a maximum search)."""
    reps = boost_count(n)
    total = 0
    d = 2
    while d <= n:
        total += reps * fixed_len_worst_charge(n, d, tf)
        d *= 2
    steps = max(1, math.ceil(math.log2(max(n, 2))) + 1)
    total += (steps + 1) * reps * fixed_len_worst_charge(n, n, tf)
    return total
