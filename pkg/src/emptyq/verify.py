"""Fast invariant suite behind the `verify` CLI verb.

Each check re-derives a library invariant from scratch at small scale and
returns (name, passed, detail).  The full statistical acceptance runs live in
the test suite; this is the smoke-level cross-check meant to finish in
seconds.
"""

from __future__ import annotations

import math
import random

import numpy as np

from . import algos1d, algos2d, baseline, maps, qcore
from .harness import Config, run_trial
from .window import MonotoneQueue

__all__ = ["run_all_checks"]


def _check_grover_fidelity():
    np_rng = np.random.default_rng(7)
    worst = 0.0
    for N in (2, 8, 16):
        for t in range(N + 1):
            bits = np.zeros(N, dtype=np.uint8)
            bits[:t] = 1
            space = qcore.bit_space(maps.CountingOracle(maps.Map1D(bits)))
            for k in (0, 1, 3):
                samples = 20000
                hits = qcore.sample_grover_batch(space, 0, N - 1, k, np_rng, samples)
                p = qcore.grover_success_prob(N, t, k)
                sigma = math.sqrt(p * (1 - p) / samples)
                worst = max(worst, abs(hits / samples - p) - 3 * sigma)
    return "grover marked-rate within 3 sigma", worst <= 1e-9, f"worst excess {worst:.2e}"


def _check_queue():
    rng = random.Random(11)
    for _ in range(5):
        seq = [rng.randrange(100) for _ in range(500)]
        for width in (1, 3, 17):
            q = MonotoneQueue("min")
            out, naive = [], []
            for idx, v in enumerate(seq):
                q.add(v)
                if idx >= width:
                    q.remove()
                if idx >= width - 1:
                    out.append(q.extremum())
                    naive.append(min(seq[idx - width + 1 : idx + 1]))
            if out != naive:
                return "monotone queue equals naive rescan", False, f"width {width}"
    return "monotone queue equals naive rescan", True, ""


def _check_first_one():
    rng = random.Random(3)
    bad = 0
    trials = 300
    for trial in range(trials):
        m = maps.gen_random_1d(128, 0.03, 1000 + trial)
        oracle = maps.CountingOracle(m)
        got = qcore.first_one(qcore.bit_space(oracle), 0, 127, rng)
        truth = m.next_one(0)
        want = None if truth >= 128 else truth
        if got is not None and m.value(got) != 1:
            return "first_one soundness", False, f"unmarked index {got}"
        if got != want:
            bad += 1
    ok = bad <= trials * 0.1
    return "first_one finds the minimal index", ok, f"{bad}/{trials} misses"


def _check_generators():
    m = maps.gen_adversarial_1d(16, 11)
    seg = baseline.lseg_scan(maps.CountingOracle(m))
    if seg is None or seg.length != 10:
        return "hard-instance structure", False, "1-D family"
    sq = maps.gen_adversarial_square(16, 11, 13)
    if int(sq.cells.sum()) != 2 or sq.value(0, 0) != 1 or sq.value(11, 13) != 1:
        return "hard-instance structure", False, "square family"
    rw = maps.gen_adversarial_recw(16, 4, 2, 10)
    rect = baseline.lrecw_scan(maps.CountingOracle(rw), 4)
    if rect is None or (rect.x2 - rect.x1 + 1) != 9:
        return "hard-instance structure", False, "fixed-width family"
    return "hard-instance structure", True, ""


def _check_ledger():
    cfg = Config(problem="lrecw", ns=(24,), trials=1, seed=5, generator="random",
                 p_one="0.05", d=3)
    trial = run_trial(cfg, 24, 3, 0)
    m = maps.gen_random_2d(24, 0.05, 99)
    oracle = maps.CountingOracle(m)
    algos2d.lrecw(oracle, 3, random.Random(4))
    ok = sum(oracle.ledger.values()) == oracle.count and trial.q_charge >= 0
    return "charge ledger sums to the total", ok, f"count {oracle.count}"


def _check_one_sided():
    rng = random.Random(17)
    for trial in range(40):
        m = maps.gen_random_1d(96, 0.08, 500 + trial)
        oracle = maps.CountingOracle(m)
        seg = algos1d.fixed_len(oracle, 6, rng)
        if seg is not None and not baseline.segment_is_empty(m, seg):
            return "fixed_len answers verified empty", False, str(seg)
    return "fixed_len answers verified empty", True, ""


def _check_instance_files(tmp: str = ""):
    m = maps.gen_random_trit1d(9, 0.2, 0.2, 3)
    text = maps.format_instance(m, d=4)
    parsed, d = maps.parse_instance(text)
    ok = isinstance(parsed, maps.TritMap1D) and d == 4 and bool(
        (parsed.trits == m.trits).all())
    return "instance files round-trip", ok, ""


def run_all_checks() -> list[tuple[str, bool, str]]:
    checks = [
        _check_grover_fidelity,
        _check_queue,
        _check_first_one,
        _check_generators,
        _check_ledger,
        _check_one_sided,
        _check_instance_files,
    ]
    return [fn() for fn in checks]
