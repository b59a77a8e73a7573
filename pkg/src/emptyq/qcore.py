"""Sampled simulation of the quantum search subroutines.

Every subroutine is simulated at the level of measured runs: a Grover run of
k iterations over a window with t marked cells measures a marked cell with
probability sin^2((2k+1) * asin(sqrt(t/N))), uniformly among the marked cells
(uniformly among unmarked on failure).  The simulator computes t from the
map's uncharged structure tables; the algorithms only ever see measurement
outcomes and charges, so the whole run is a Markov chain with exactly the
right transition probabilities.

Charging convention (uniform across the library):

* one charged query per classical read;
* a simulated run of k iterations charges k + 1 (iterations plus one
  verification read of the measured cell);
* a search over a window with no marked cell always runs its full schedule
  and charges its cutoff exactly;
* amplitude-amplification rounds with j inner applications charge
  (2j + 1) * Q_A, with Q_A the base routine's padded worst-case charge.
"""

from __future__ import annotations

import math
import random
from bisect import bisect_right
from dataclasses import dataclass
from typing import Any, Callable, Optional

import numpy as np

from .maps import CountingOracle, Map1D, Map2D, TritMap1D

__all__ = [
    "GroverSpec",
    "OutcomeSample",
    "BitSpace",
    "bit_space",
    "nonzero_space",
    "row_space",
    "col_space",
    "grover_success_prob",
    "sample_grover_run",
    "sample_grover_batch",
    "qsearch",
    "first_one",
    "last_one",
    "boost",
    "BaseRoutine",
    "estimate_success",
    "amplitude_amplify",
    "CandidateSet",
    "qmax",
    "qsearch_cutoff",
    "qsearch_null_charge",
    "first_one_null_charge",
    "first_one_worst_charge",
    "CUTOFF_C",
    "GROWTH",
    "SCAN_MAX",
]

CUTOFF_C = 9         # qsearch gives up once its charge would pass CUTOFF_C * sqrt(N)
GROWTH = 6 / 5       # BBHT cap growth ratio
SCAN_MAX = 4         # windows this small are read classically


@dataclass(frozen=True)
class GroverSpec:
    """Parameters of one Grover run: window size, marked count, iterations."""

    N: int
    t: int
    k: int


@dataclass(frozen=True)
class OutcomeSample:
    """One measured outcome: the sampled index and whether it is marked."""

    index: int
    marked: bool


# ---------------------------------------------------------------------------
# search spaces
#
# A BitSpace bundles the three faces of one 0/1 search domain: a charged read,
# a bulk charge sink, and the uncharged truth table the simulator samples
# outcomes from.  Derived domains (rows, columns, nonzero indicators, band
# windows) reuse the same machinery by supplying their own structure map.


@dataclass
class BitSpace:
    struct: Map1D
    read: Callable[[int, random.Random], int]
    charge: Callable[[int], None]

    @property
    def n(self) -> int:
        return self.struct.n

    def count_marked(self, lo: int, hi: int) -> int:
        return self.struct.count_ones(lo, hi)

    def kth_marked(self, lo: int, hi: int, k: int) -> int:
        pos = self.struct.ones_positions()
        base = int(np.searchsorted(pos, lo, side="left"))
        return int(pos[base + k])

    def kth_unmarked(self, lo: int, hi: int, k: int) -> int:
        p = self.struct.prefix()
        zeros_before = lambda x: (x - lo + 1) - int(p[x + 1] - p[lo])
        a, b = lo, hi
        while a < b:
            mid = (a + b) // 2
            if zeros_before(mid) >= k + 1:
                b = mid
            else:
                a = mid + 1
        return a


def bit_space(oracle: CountingOracle) -> BitSpace:
    m = oracle.target
    if not isinstance(m, Map1D):
        raise TypeError("bit_space requires a Map1D oracle")
    return BitSpace(m, lambda i, _rng: oracle.read1(i), oracle.charge)


def nonzero_space(oracle: CountingOracle) -> BitSpace:
    """Indicator f'(i) = [f(i) != 0] over a ternary map (sentinels excluded)."""
    m = oracle.target
    if not isinstance(m, TritMap1D):
        raise TypeError("nonzero_space requires a TritMap1D oracle")
    return BitSpace(m.nonzero_map(), lambda i, _rng: int(oracle.read1(i) != 0), oracle.charge)


def row_space(oracle: CountingOracle, i: int) -> BitSpace:
    m = oracle.target
    if not isinstance(m, Map2D):
        raise TypeError("row_space requires a Map2D oracle")
    return BitSpace(m.row_map(i), lambda j, _rng: oracle.read2(i, j), oracle.charge)


def col_space(oracle: CountingOracle, j: int) -> BitSpace:
    m = oracle.target
    if not isinstance(m, Map2D):
        raise TypeError("col_space requires a Map2D oracle")
    return BitSpace(m.col_map(j), lambda i, _rng: oracle.read2(i, j), oracle.charge)


# ---------------------------------------------------------------------------
# single Grover runs


def grover_success_prob(N: int, t: int, k: int) -> float:
    """P(measure a marked cell) after k iterations over N cells with t marked."""
    if N < 1 or not 0 <= t <= N or k < 0:
        raise ValueError("need N >= 1, 0 <= t <= N, k >= 0")
    if t == 0:
        return 0.0
    theta = math.asin(math.sqrt(t / N))
    return math.sin((2 * k + 1) * theta) ** 2


def sample_grover_run(space: BitSpace, lo: int, hi: int, k: int,
                      rng: random.Random) -> OutcomeSample:
    """Sample one measured outcome of a k-iteration run over [lo, hi].

    Charges k + 1 (iterations plus the verification read of the outcome).
    """
    if lo > hi:
        raise ValueError("empty range")
    N = hi - lo + 1
    t = space.count_marked(lo, hi)
    space.charge(k + 1)
    if t == 0:
        marked = False
    elif t == N:
        marked = True
    else:
        marked = rng.random() < grover_success_prob(N, t, k)
    if marked:
        idx = space.kth_marked(lo, hi, rng.randrange(t))
    else:
        idx = space.kth_unmarked(lo, hi, rng.randrange(N - t))
    return OutcomeSample(index=idx, marked=marked)


def sample_grover_batch(space: BitSpace, lo: int, hi: int, k: int,
                        np_rng: np.random.Generator, samples: int) -> int:
    """Number of marked outcomes among `samples` independent runs.

    Statistically identical to counting marked flags over `samples` calls of
    :func:`sample_grover_run`; the count is drawn in one binomial step so the
    distribution-fidelity suites can afford 1e5 samples per grid cell.
    Charges samples * (k + 1).
    """
    if lo > hi:
        raise ValueError("empty range")
    if samples < 0:
        raise ValueError("samples must be non-negative")
    N = hi - lo + 1
    t = space.count_marked(lo, hi)
    space.charge(samples * (k + 1))
    if t == 0:
        return 0
    if t == N:
        return samples
    return int(np_rng.binomial(samples, grover_success_prob(N, t, k)))


# ---------------------------------------------------------------------------
# QSearch (BBHT schedule, unknown marked count)


def qsearch_cutoff(W: int) -> int:
    return W if W <= SCAN_MAX else int(CUTOFF_C * math.sqrt(W))


def qsearch_null_charge(W: int) -> int:
    """Exact charge of a qsearch over a window with no marked cell."""
    return qsearch_cutoff(W)


def _qsearch(space: BitSpace, lo: int, hi: int, rng: random.Random,
             max_charge: Optional[int] = None) -> tuple[Optional[int], int]:
    """Core qsearch; returns (index or None, charge spent)."""
    if lo > hi:
        raise ValueError("empty range")
    W = hi - lo + 1
    cap = qsearch_cutoff(W)
    if max_charge is not None:
        cap = min(cap, max_charge)
    if cap <= 0:
        return None, 0

    if W <= SCAN_MAX:
        spent = 0
        for idx in range(lo, hi + 1):
            if spent >= cap:
                return None, spent
            spent += 1
            if space.read(idx, rng):
                return idx, spent
        return None, spent

    t = space.count_marked(lo, hi)
    if t == 0:
        space.charge(cap)
        return None, cap

    theta = math.asin(math.sqrt(t / W))
    m = 1.0
    m_max = math.sqrt(W)
    spent = 0
    while True:
        j = rng.randrange(math.ceil(m))
        cost = j + 1
        if spent + cost > cap:
            space.charge(spent)
            return None, spent
        spent += cost
        if rng.random() < math.sin((2 * j + 1) * theta) ** 2:
            space.charge(spent)
            return space.kth_marked(lo, hi, rng.randrange(t)), spent
        m = min(m * GROWTH, m_max)


def qsearch(space: BitSpace, lo: int, hi: int, rng: random.Random,
            max_charge: Optional[int] = None) -> Optional[int]:
    """Find any marked index in [lo, hi], or None (always None when t = 0).

    Succeeds with probability >= 0.9 when a marked cell exists; total charge
    stays below CUTOFF_C * sqrt(|range|).
    """
    idx, _ = _qsearch(space, lo, hi, rng, max_charge)
    return idx


# ---------------------------------------------------------------------------
# minimal / maximal index search


def first_one_null_charge(W: int) -> int:
    """Exact charge of first_one over an all-zero window of width W."""
    total = 0
    s = 0
    while True:
        sub = min(1 << s, W)
        total += qsearch_null_charge(sub)
        if sub == W:
            return total
        s += 1


def first_one_budget(W: int) -> int:
    return first_one_null_charge(W) + math.ceil(18 * math.sqrt(W)) + 4


def first_one_worst_charge(W: int) -> int:
    """Hard charge cap enforced by first_one/last_one over a width-W window."""
    return first_one_budget(W)


def first_one(space: BitSpace, lo: int, hi: int, rng: random.Random,
              budget: Optional[int] = None) -> Optional[int]:
    """Minimal marked index in [lo, hi] with probability >= 0.9, else None.

    Doubling phase: search [lo, lo + 2^s - 1] for growing s until something is
    found; then iteratively re-search strictly left of the best hit until the
    search comes back empty.  Expected charge scales with sqrt(i - lo) when
    the answer i exists and with sqrt(hi - lo) otherwise.  Never returns an
    unmarked index; None over a window that does contain a marked cell has
    probability <= 0.1.
    """
    if lo > hi:
        raise ValueError("lo must not exceed hi")
    left = first_one_budget(hi - lo + 1) if budget is None else budget

    found = None
    s = 0
    while True:
        sub_hi = min(lo + (1 << s) - 1, hi)
        idx, c = _qsearch(space, lo, sub_hi, rng, max_charge=left)
        left -= c
        if idx is not None:
            found = idx
            break
        if sub_hi == hi or left <= 0:
            return None
        s += 1

    while found > lo and left > 0:
        idx, c = _qsearch(space, lo, found - 1, rng, max_charge=left)
        left -= c
        if idx is None:
            break
        found = idx
    return found


def last_one(space: BitSpace, lo: int, hi: int, rng: random.Random,
             budget: Optional[int] = None) -> Optional[int]:
    """Mirror image of :func:`first_one`: maximal marked index or None."""
    if lo > hi:
        raise ValueError("lo must not exceed hi")
    left = first_one_budget(hi - lo + 1) if budget is None else budget

    found = None
    s = 0
    while True:
        sub_lo = max(hi - (1 << s) + 1, lo)
        idx, c = _qsearch(space, sub_lo, hi, rng, max_charge=left)
        left -= c
        if idx is not None:
            found = idx
            break
        if sub_lo == lo or left <= 0:
            return None
        s += 1

    while found < hi and left > 0:
        idx, c = _qsearch(space, found + 1, hi, rng, max_charge=left)
        left -= c
        if idx is None:
            break
        found = idx
    return found


# ---------------------------------------------------------------------------
# repetition boosting


def boost(repetitions: int, routine: Callable[[], Any]) -> Any:
    """First non-None result of up to `repetitions` runs of a one-sided routine."""
    if repetitions < 1:
        raise ValueError("repetitions must be >= 1")
    for _ in range(repetitions):
        result = routine()
        if result is not None:
            return result
    return None


def boost_count(n: int) -> int:
    """ceil(2 * log2 log2 n), floored at 1 for degenerate n."""
    if n <= 4:
        return 1
    return max(1, math.ceil(2 * math.log2(math.log2(n))))


# ---------------------------------------------------------------------------
# amplitude amplification over a randomized base routine


@dataclass
class BaseRoutine:
    """A randomized subroutine amplified by :func:`amplitude_amplify`.

    sampler(rng) simulates one uncharged invocation and reports
    (success, payload, charge-it-would-have-cost).  q_worst is the padded
    per-invocation charge every amplification round is billed at, and p_floor
    the smallest success probability the routine can have when success is
    possible at all (it fixes the cutoff schedule).  p, when given, is used
    as the exact success probability; otherwise it is estimated from
    uncharged sampler runs.
    """

    sampler: Callable[[random.Random], tuple[bool, Any, int]]
    q_worst: int
    p_floor: float
    p: Optional[float] = None


def estimate_success(base: BaseRoutine, rng: random.Random,
                     target_successes: int = 48, max_samples: int = 1000) -> float:
    """Monte-Carlo estimate of the base routine's success probability.

    Samples are simulator-internal and never charged.  Stops early once
    `target_successes` successes accumulate, so cheap high-probability bases
    do not pay the full sample budget.
    """
    successes = 0
    samples = 0
    while samples < max_samples:
        samples += 1
        ok, _, _ = base.sampler(rng)
        if ok:
            successes += 1
            if successes >= target_successes:
                break
    return successes / samples


def _sample_success_payload(base: BaseRoutine, rng: random.Random, p_hint: float) -> Any:
    attempts = max(1000, int(200 / max(p_hint, 1e-6)))
    for _ in range(attempts):
        ok, payload, _ = base.sampler(rng)
        if ok:
            return payload
    raise RuntimeError("could not sample a successful base run; success probability inconsistent")


def amplitude_amplify(base: BaseRoutine, oracle: CountingOracle,
                      rng: random.Random) -> Any:
    """Amplify the base routine; payload on success, None after the cutoff.

    A round with j inner applications succeeds with probability
    sin^2((2j+1) * asin(sqrt(p))) and charges (2j+1) * q_worst.  The round cap
    grows like the BBHT schedule up to 1/sqrt(p_floor); the run stops once
    total applications would pass CUTOFF_C / sqrt(p_floor).  Overall failure
    probability is <= 0.1 whenever p >= p_floor > 0.
    """
    p = base.p if base.p is not None else estimate_success(base, rng)
    if p is None or math.isnan(p) or not 0.0 <= p <= 1.0:
        raise ValueError("success probability undefined")
    if not 0.0 < base.p_floor <= 1.0:
        raise ValueError("p_floor must be in (0, 1]")

    budget = math.ceil(CUTOFF_C / math.sqrt(base.p_floor))
    m_max = max(1.0, 1.0 / math.sqrt(base.p_floor))
    theta = math.asin(min(1.0, math.sqrt(p))) if p > 0.0 else 0.0
    m = 1.0
    used = 0
    while True:
        j = rng.randrange(math.ceil(m))
        applications = 2 * j + 1
        if used + applications > budget:
            return None
        used += applications
        oracle.charge(applications * base.q_worst)
        if p > 0.0 and rng.random() < math.sin((2 * j + 1) * theta) ** 2:
            return _sample_success_payload(base, rng, p)
        m = min(m * GROWTH, m_max)


# ---------------------------------------------------------------------------
# maximum finding (threshold search with bounded-error evaluations)


@dataclass
class CandidateSet:
    """Candidate pool for :func:`qmax`.

    evaluate(idx, rng) runs one honest, charged evaluation and returns
    (value, payload); values must be totally ordered.  true_value(idx) is the
    simulator-internal noiseless value used to sample in-superposition
    threshold tests (the bounded-error-to-exact conversion of the inner
    search is modelled as exact marking; its cost lives in eval_worst).
    eval_worst is the padded charge of one evaluation, billed per iteration
    through `oracle`.
    """

    m: int
    true_value: Callable[[int], Any]
    evaluate: Callable[[int, random.Random], tuple[Any, Any]]
    eval_worst: int
    oracle: CountingOracle


QMAX_CHECK_REPS = 5  # majority reps per measured-candidate threshold check


def _boosted_eval(cand: CandidateSet, idx: int, rng: random.Random,
                  reps: int) -> tuple[Any, Any]:
    """Median value (with its payload) over `reps` honest evaluations."""
    results = [cand.evaluate(idx, rng) for _ in range(reps)]
    results.sort(key=lambda vp: vp[0])
    return results[len(results) // 2]


def qmax(cand: CandidateSet, rng: random.Random,
         check_reps: Optional[int] = None) -> Any:
    """Payload of a maximal-value candidate, correct with probability >= 0.9.

    Duerr-Hoyer threshold search: repeatedly look for a candidate whose value
    beats the best confirmed so far, confirm each measured candidate with a
    majority of honest evaluations, stop when the search comes back empty.
    Round iterations charge j * eval_worst; every measured candidate then pays
    its majority check, at actual cost when it is confirmed above threshold
    and at the padded rate otherwise.  Expected evaluations are
    O(sqrt(m) log m).
    """
    if cand.m < 1:
        raise ValueError("need at least one candidate")
    reps = QMAX_CHECK_REPS if check_reps is None else check_reps

    order = sorted(range(cand.m), key=cand.true_value)
    vals_sorted = [cand.true_value(i) for i in order]

    best_val, best_payload = _boosted_eval(cand, rng.randrange(cand.m), rng, reps)

    max_phases = 4 * math.ceil(math.log2(max(cand.m, 2))) + 12
    for _ in range(max_phases):
        t = cand.m - bisect_right(vals_sorted, best_val)
        found = _search_better(cand, order, t, rng, reps)
        if found is None:
            break
        val, payload = _boosted_eval(cand, found, rng, reps)
        if val > best_val:
            best_val, best_payload = val, payload
    return best_payload


def _search_better(cand: CandidateSet, order: list[int], t: int,
                   rng: random.Random, reps: int) -> Optional[int]:
    """One BBHT pass over the candidate space for a value above the threshold.

    Measured candidates below the threshold are screened by one evaluation
    (padded rate); a screening that spuriously looks like an improvement
    (probability <= 0.1) pays the remaining majority confirmations, whose
    reject branch is then taken.
    """
    W = cand.m
    cap = int(CUTOFF_C * math.sqrt(W)) + 1
    theta = math.asin(math.sqrt(t / W)) if t > 0 else 0.0
    m = 1.0
    m_max = math.sqrt(W)
    spent = 0
    while True:
        j = rng.randrange(math.ceil(m))
        if spent + j + 1 > cap:
            return None
        spent += j + 1
        cand.oracle.charge(j * cand.eval_worst)
        if t > 0 and rng.random() < math.sin((2 * j + 1) * theta) ** 2:
            return order[cand.m - t + rng.randrange(t)]
        cand.oracle.charge(cand.eval_worst)
        if rng.random() < 0.1:
            cand.oracle.charge((reps - 1) * cand.eval_worst)
        m = min(m * GROWTH, m_max)
