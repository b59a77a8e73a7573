"""1-D searches: fixed-length probes, largest empty segment, bounded segments."""

import math
import random

import pytest

from emptyq import algos1d, maps
from emptyq.baseline import (
    lseg_scan,
    segment_is_empty,
    szbt_scan,
    szbt_segment_is_valid,
)
from emptyq.qcore import boost, boost_count, estimate_success, amplitude_amplify


def bits_map(s):
    return maps.Map1D([int(c) for c in s])


def trit_map(s):
    return maps.TritMap1D([int(c) for c in s])


# ---------------------------------------------------------------------------
# fixed_len_fixed_point


def test_flfp_all_zero():
    rng = random.Random(0)
    oracle = maps.CountingOracle(bits_map("00000000"))
    seg = algos1d.fixed_len_fixed_point(oracle, 3, 4, rng)
    assert seg is not None and seg.length == 4
    assert seg.l <= 3 <= seg.r


def test_flfp_marked_anchor_fails_immediately():
    rng = random.Random(1)
    oracle = maps.CountingOracle(bits_map("00010000"))
    assert algos1d.fixed_len_fixed_point(oracle, 3, 4, rng) is None
    assert oracle.count == 1


def test_flfp_trims_to_window():
    # walls at both ends; the probe must land exactly on (1, 6)
    rng = random.Random(2)
    hits = 0
    for _ in range(200):
        oracle = maps.CountingOracle(bits_map("10000001"))
        seg = algos1d.fixed_len_fixed_point(oracle, 4, 6, rng)
        if seg is not None:
            assert (seg.l, seg.r) == (1, 6)
            hits += 1
    assert hits / 200 >= 0.8


def test_flfp_length_one_costs_one_read():
    oracle = maps.CountingOracle(bits_map("0100"))
    seg = algos1d.fixed_len_fixed_point(oracle, 2, 1, random.Random(3))
    assert (seg.l, seg.r) == (2, 2)
    assert oracle.count == 1


def test_flfp_validates():
    oracle = maps.CountingOracle(bits_map("0000"))
    with pytest.raises(ValueError):
        algos1d.fixed_len_fixed_point(oracle, 4, 2, random.Random(0))
    with pytest.raises(ValueError):
        algos1d.fixed_len_fixed_point(oracle, 0, 5, random.Random(0))


def test_flfp_results_are_usually_empty():
    rng = random.Random(4)
    wrong = 0
    total = 0
    for seed in range(300):
        m = maps.gen_random_1d(128, 0.05, seed)
        i = rng.randrange(128)
        seg = algos1d.fixed_len_fixed_point(maps.CountingOracle(m), i, 8, rng)
        if seg is not None:
            total += 1
            wrong += not segment_is_empty(m, seg)
    assert total > 0
    assert wrong / max(total, 1) <= 0.2


# ---------------------------------------------------------------------------
# classified base sampler vs the operational probe


def test_base_sampler_agrees_with_verified_operational_runs():
    """The amplification base must reproduce the verified probe's
    success/payload distribution; compare per-anchor empirical rates."""
    rng = random.Random(5)
    m = maps.gen_random_1d(48, 0.08, 123)
    d = 5
    for i in range(48):
        cls, info = algos1d._flfp_classify(m, i, d)
        succ = 0
        runs = 60
        for _ in range(runs):
            oracle = maps.CountingOracle(m)
            seg = algos1d.fixed_len_fixed_point(oracle, i, d, rng)
            if seg is not None and segment_is_empty(m, seg) and seg.length == d:
                succ += 1
                if cls == algos1d._SUCC:
                    assert (seg.l, seg.r) == (info.l, info.r)
        if cls == algos1d._FAIL:
            assert succ == 0
        elif cls == algos1d._SUCC:
            assert succ == runs


def test_base_sampler_chain_case_probability():
    # chain anchors succeed iff first_one lands exactly on the wall; the
    # sampler and the operational probe must agree within sampling noise
    rng = random.Random(6)
    m = bits_map("0000000010000000000000000000000010000000")
    d = 8
    base = algos1d.make_fixed_len_base(m, d)
    est = estimate_success(base, random.Random(7), target_successes=10_000,
                           max_samples=20_000)
    succ = 0
    runs = 20_000
    for _ in range(runs):
        i = rng.randrange(m.n)
        oracle = maps.CountingOracle(m)
        seg = algos1d.fixed_len_fixed_point(oracle, i, d, rng)
        succ += seg is not None and segment_is_empty(m, seg) and seg.length == d
    assert abs(est - succ / runs) < 0.02


# ---------------------------------------------------------------------------
# fixed_len


def test_fixed_len_all_zero_full_length():
    oracle = maps.CountingOracle(bits_map("0" * 16))
    seg = algos1d.fixed_len(oracle, 16, random.Random(8))
    assert (seg.l, seg.r) == (0, 15)


def test_fixed_len_all_ones_always_none():
    for s in range(20):
        oracle = maps.CountingOracle(bits_map("1" * 12))
        assert algos1d.fixed_len(oracle, 3, random.Random(s)) is None


def test_fixed_len_one_sided_and_verified():
    rng = random.Random(9)
    for seed in range(150):
        m = maps.gen_random_1d(96, 0.1, 40_000 + seed)
        seg = algos1d.fixed_len(maps.CountingOracle(m), 6, rng)
        if seg is not None:
            assert seg.length == 6
            assert segment_is_empty(m, seg)  # certainty, not just probability


def test_fixed_len_finds_feasible_length():
    rng = random.Random(10)
    m = maps.gen_adversarial_1d(1024, 700)  # best empty segment: 699
    hits = sum(algos1d.fixed_len(maps.CountingOracle(m), 512, rng) is not None
               for _ in range(100))
    assert hits / 100 >= 0.9


def test_fixed_len_monotone_probe_property():
    rng = random.Random(11)
    m = maps.gen_random_1d(256, 0.03, 777)
    best = lseg_scan(maps.CountingOracle(m)).length
    reps = boost_count(256)
    for d in (best // 2, best - 1, best, best + 1, best + 5):
        if d < 1:
            continue
        base = algos1d.make_fixed_len_base(m, d)
        base.p = estimate_success(base, rng)
        hits = 0
        for _ in range(40):
            oracle = maps.CountingOracle(m)
            res = boost(reps, lambda: amplitude_amplify(base, oracle, rng))
            hits += res is not None
        if d <= best:
            assert hits / 40 >= 0.9
        else:
            assert hits == 0  # one-sided: infeasible lengths never produce output


def test_fixed_len_validates():
    oracle = maps.CountingOracle(bits_map("0000"))
    with pytest.raises(ValueError):
        algos1d.fixed_len(oracle, 0, random.Random(0))
    with pytest.raises(ValueError):
        algos1d.fixed_len(oracle, 5, random.Random(0))


def test_boosted_fixed_len_failure_below_log_loglog_bound():
    # known-feasible instance: boosted failure must stay below 1/(log2 n)^2
    rng = random.Random(99)
    n = 256
    m = maps.gen_random_1d(n, 0.03, 424242)
    best = lseg_scan(maps.CountingOracle(m)).length
    d = max(1, best // 2)
    base = algos1d.make_fixed_len_base(m, d)
    base.p = estimate_success(base, rng)
    reps = boost_count(n)
    trials = 10_000
    fails = 0
    for _ in range(trials):
        oracle = maps.CountingOracle(m)
        if boost(reps, lambda: amplitude_amplify(base, oracle, rng)) is None:
            fails += 1
    assert fails / trials <= 1 / math.log2(n) ** 2


# ---------------------------------------------------------------------------
# lseg


def test_lseg_all_zero():
    oracle = maps.CountingOracle(bits_map("0" * 16))
    seg = algos1d.lseg(oracle, random.Random(12))
    assert (seg.l, seg.r) == (0, 15)


def test_lseg_all_ones_none():
    oracle = maps.CountingOracle(bits_map("1" * 16))
    assert algos1d.lseg(oracle, random.Random(13)) is None


def test_lseg_single_zero():
    oracle = maps.CountingOracle(bits_map("1111011111111111"))
    seg = algos1d.lseg(oracle, random.Random(14))
    assert (seg.l, seg.r) == (4, 4)


def test_lseg_hard_family_length():
    rng = random.Random(15)
    m = maps.gen_adversarial_1d(1024, 700)
    hits = 0
    for _ in range(25):
        seg = algos1d.lseg(maps.CountingOracle(m), rng)
        hits += seg is not None and seg.length == 699
    assert hits / 25 >= 0.9


def test_lseg_matches_scan_on_random_maps():
    rng = random.Random(16)
    good = 0
    trials = 120
    for seed in range(trials):
        m = maps.gen_random_1d(512, 0.02, 50_000 + seed)
        q = algos1d.lseg(maps.CountingOracle(m), rng)
        c = lseg_scan(maps.CountingOracle(m))
        got = -1 if q is None else q.length
        want = -1 if c is None else c.length
        good += got == want
        if q is not None:
            assert segment_is_empty(m, q)
    assert good / trials >= 0.9


def test_lseg_charge_composition_is_ledgered():
    m = maps.gen_random_1d(256, 0.02, 4)
    oracle = maps.CountingOracle(m)
    algos1d.lseg(oracle, random.Random(17))
    assert sum(oracle.ledger.values()) == oracle.count


# ---------------------------------------------------------------------------
# SZBT probe


def test_szbt_probe_unique_segment():
    rng = random.Random(18)
    oracle = maps.CountingOracle(trit_map("20002"))
    seg = algos1d.fixed_len_fixed_point_szbt(oracle, 2, 5, rng)
    assert (seg.l, seg.r) == (0, 4)


def test_szbt_probe_one_bounded_fails():
    rng = random.Random(19)
    for _ in range(30):
        oracle = maps.CountingOracle(trit_map("10001"))
        assert algos1d.fixed_len_fixed_point_szbt(oracle, 2, 5, rng) is None


def test_szbt_probe_sentinels_all_zero():
    rng = random.Random(20)
    oracle = maps.CountingOracle(trit_map("00000000"))
    seg = algos1d.fixed_len_fixed_point_szbt(oracle, 3, 10, rng)
    assert (seg.l, seg.r) == (-1, 8)


def test_szbt_probe_marked_anchor():
    oracle = maps.CountingOracle(trit_map("00200"))
    assert algos1d.fixed_len_fixed_point_szbt(oracle, 2, 3, random.Random(21)) is None
    assert oracle.count == 1


# ---------------------------------------------------------------------------
# szbt


def test_szbt_all_ones_none():
    oracle = maps.CountingOracle(trit_map("111111"))
    assert algos1d.szbt(oracle, random.Random(22)) is None


def test_szbt_unique_candidate():
    hits = 0
    for s in range(25):
        oracle = maps.CountingOracle(trit_map("120021"))
        seg = algos1d.szbt(oracle, random.Random(s))
        if seg is not None:
            assert (seg.l, seg.r) == (1, 4)
            hits += 1
    assert hits / 25 >= 0.9


def test_szbt_all_zero_sentinel_segment():
    oracle = maps.CountingOracle(trit_map("0" * 8))
    seg = algos1d.szbt(oracle, random.Random(23))
    assert seg is not None and (seg.l, seg.r) == (-1, 8)


def test_szbt_matches_scan_decision_on_random_maps():
    rng = random.Random(24)
    good = 0
    trials = 150
    for seed in range(trials):
        tm = maps.gen_random_trit1d(512, 0.02, 0.015, 60_000 + seed)
        q = algos1d.szbt(maps.CountingOracle(tm), rng)
        c = szbt_scan(maps.CountingOracle(tm))
        good += (q is not None) == (c is not None)
        if q is not None:
            assert szbt_segment_is_valid(tm, q)  # verified before returning
    assert good / trials >= 0.9


def test_min_bounded_len():
    assert algos1d.min_bounded_len(trit_map("20002")) == 5
    # the adjacent pair of 2s has no interior zero and is not anchor-reachable
    assert algos1d.min_bounded_len(trit_map("22000")) == 5
    assert algos1d.min_bounded_len(trit_map("20200")) == 3
    assert algos1d.min_bounded_len(trit_map("10001")) is None
    assert algos1d.min_bounded_len(trit_map("000")) == 5  # sentinel to sentinel
