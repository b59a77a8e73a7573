"""Instance types, generators, counting oracle, and file format."""

import numpy as np
import pytest

from emptyq import maps
from emptyq.baseline import lseg_scan, lsqr_dp


def test_map1d_basics():
    m = maps.Map1D([0, 1, 0, 0, 1])
    assert m.n == 5
    assert m.value(1) == 1
    assert m.count_ones(0, 4) == 2
    assert m.next_one(2) == 4
    assert m.prev_one(3) == 1
    assert m.prev_one(0) == -1
    assert m.next_one(5) == 5  # past the end: none


def test_map1d_rejects_bad_input():
    with pytest.raises(ValueError):
        maps.Map1D([])
    with pytest.raises(ValueError):
        maps.Map1D([0, 2])


def test_tritmap_sentinels():
    tm = maps.TritMap1D([0, 1, 2])
    assert tm.value(-1) == 2
    assert tm.value(3) == 2
    assert tm.value(1) == 1
    fz = tm.nonzero_map()
    assert list(fz.bits) == [0, 1, 1]


def test_map2d_views():
    cells = np.array([[0, 1, 0], [0, 0, 0], [1, 0, 1]], dtype=np.uint8)
    m = maps.Map2D(cells)
    assert m.row_map(0).count_ones(0, 2) == 1
    assert m.col_map(0).count_ones(0, 2) == 1
    assert m.ones_in_rect(0, 0, 2, 2) == 3
    assert list(m.band_any_map(0, 2).bits) == [1, 0, 1]


def test_counting_oracle_charges_reads():
    m = maps.Map1D([0, 0, 0, 0])
    oracle = maps.CountingOracle(m)
    assert oracle.read1(3) == 0
    assert oracle.count == 1
    with pytest.raises(IndexError):
        oracle.read1(4)


def test_query_wrapper_and_sentinel_free_reads():
    tm = maps.TritMap1D([0, 0, 2])
    oracle = maps.CountingOracle(tm)
    assert maps.query(oracle, -1) == 2
    assert maps.query(oracle, 3) == 2
    assert oracle.count == 0  # sentinels are known a priori
    assert maps.query(oracle, 2) == 2
    assert oracle.count == 1

    m2 = maps.Map2D(np.zeros((2, 2), dtype=np.uint8))
    o2 = maps.CountingOracle(m2)
    assert maps.query(o2, (1, 1)) == 0
    assert o2.count == 1


def test_oracle_scopes_and_ledger():
    oracle = maps.CountingOracle(maps.Map1D([0] * 8))
    oracle.charge(3)
    with oracle.scope("inner"):
        oracle.charge(5)
        with oracle.scope("deep"):
            oracle.charge(2)
    assert oracle.count == 10
    assert oracle.ledger == {"direct": 3, "inner": 5, "deep": 2}
    assert sum(oracle.ledger.values()) == oracle.count


def test_oracle_monotone_count():
    oracle = maps.CountingOracle(maps.Map1D([1, 0]))
    with pytest.raises(ValueError):
        oracle.charge(-1)
    before = oracle.count
    oracle.read1(0)
    assert oracle.count == before + 1


# ---------------------------------------------------------------------------
# generators


def test_gen_random_1d_degenerate_probabilities():
    assert not maps.gen_random_1d(8, 0.0, 1).bits.any()
    assert maps.gen_random_1d(8, 1.0, 2).bits.all()


def test_gen_random_1d_reproducible():
    a = maps.gen_random_1d(512, 0.3, 99)
    b = maps.gen_random_1d(512, 0.3, 99)
    assert (a.bits == b.bits).all()
    c = maps.gen_random_1d(512, 0.3, 100)
    assert (a.bits != c.bits).any()


def test_gen_random_1d_known_brute_force_answer():
    # longest empty segment computed by exhaustive scan, frozen
    m = maps.gen_random_1d(1024, 0.01, 7)
    seg = lseg_scan(maps.CountingOracle(m))
    assert (seg.l, seg.r, seg.length) == (115, 613, 499)


def test_gen_adversarial_1d_structure():
    m = maps.gen_adversarial_1d(16, 11)
    assert sorted(np.flatnonzero(m.bits).tolist()) == [0, 11]
    m2 = maps.gen_adversarial_1d(16, 15)
    assert sorted(np.flatnonzero(m2.bits).tolist()) == [0, 15]
    with pytest.raises(ValueError):
        maps.gen_adversarial_1d(16, 8)  # below n/2 + 1
    with pytest.raises(ValueError):
        maps.gen_adversarial_1d(16, 16)


def test_gen_adversarial_1d_best_segment_is_k_minus_1():
    # every valid k at one size, exhaustively; larger spot checks after
    for k in range(16 // 2 + 1, 16):
        m = maps.gen_adversarial_1d(16, k)
        assert lseg_scan(maps.CountingOracle(m)).length == k - 1
    for n, k in ((64, 40), (1024, 700)):
        m = maps.gen_adversarial_1d(n, k)
        seg = lseg_scan(maps.CountingOracle(m))
        assert seg.length == k - 1
        assert (seg.l, seg.r) == (1, k - 1)


def test_gen_adversarial_square_structure():
    m = maps.gen_adversarial_square(16, 11, 13)
    assert m.value(0, 0) == 1 and m.value(11, 13) == 1
    assert int(m.cells.sum()) == 2
    with pytest.raises(ValueError):
        maps.gen_adversarial_square(16, 7, 13)


def test_gen_adversarial_square_brute_force_optimum():
    # exhaustive check: the largest empty square dodges the planted one by
    # excluding its row range or its column range, giving side max(k, t)
    m = maps.gen_adversarial_square(16, 11, 13)
    sq = lsqr_dp(maps.CountingOracle(m))
    assert sq.d == 13
    m2 = maps.gen_adversarial_square(64, 40, 50)
    assert lsqr_dp(maps.CountingOracle(m2)).d == 50
    m3 = maps.gen_adversarial_square(16, 9, 9)
    assert lsqr_dp(maps.CountingOracle(m3)).d == 9


def test_gen_adversarial_recw_structure():
    m = maps.gen_adversarial_recw(16, 4, 2, 10)
    assert (m.cells[:, 4:] == 1).all()
    band = m.cells[:, :4]
    assert int(band.sum()) == 2
    assert m.value(0, 0) == 1 and m.value(10, 2) == 1
    with pytest.raises(ValueError):
        maps.gen_adversarial_recw(16, 4, 4, 10)
    with pytest.raises(ValueError):
        maps.gen_adversarial_recw(16, 4, 2, 8)


def test_gen_adversarial_rec2_families():
    m = maps.gen_adversarial_rec2(8, 3, 5)
    assert m.value(3, 5) == 0
    assert int(m.cells.sum()) == 63
    m2 = maps.gen_adversarial_rec2(8, -1, -1)
    assert m2.cells.all()
    with pytest.raises(ValueError):
        maps.gen_adversarial_rec2(8, 8, 0)


def test_gen_adversarial_rec_families():
    m = maps.gen_adversarial_rec(6, 2, 4)
    assert m.value(2, 4) == 1
    assert int(m.cells.sum()) == 1
    m2 = maps.gen_adversarial_rec(6, -1, -1)
    assert not m2.cells.any()


def test_gen_random_promise_2d_is_promise():
    from emptyq.baseline import zero_blocks

    for seed in range(5):
        m = maps.gen_random_promise_2d(32, 6, seed)
        blocks = zero_blocks(m.cells)  # raises if the promise is broken
        assert len(blocks) >= 1


def test_gen_planted_gap_has_bounded_segment():
    from emptyq.algos1d import min_bounded_len

    for seed in range(5):
        tm = maps.gen_planted_gap_trit1d(256, 6, 0.01, seed)
        dmin = min_bounded_len(tm)
        assert dmin is not None and dmin <= 8


# ---------------------------------------------------------------------------
# instance files


def test_instance_roundtrip_1d(tmp_path):
    m = maps.gen_random_1d(17, 0.4, 3)
    path = tmp_path / "a.eq"
    maps.write_instance(path, m)
    back, d = maps.read_instance(path)
    assert d is None
    assert isinstance(back, maps.Map1D)
    assert (back.bits == m.bits).all()


def test_instance_roundtrip_trit_with_d(tmp_path):
    tm = maps.gen_random_trit1d(9, 0.2, 0.3, 5)
    path = tmp_path / "t.eq"
    maps.write_instance(path, tm, d=6)
    back, d = maps.read_instance(path)
    assert d == 6
    assert isinstance(back, maps.TritMap1D)
    assert (back.trits == tm.trits).all()


def test_instance_roundtrip_2d(tmp_path):
    m = maps.gen_random_2d(7, 0.3, 9)
    path = tmp_path / "m.eq"
    maps.write_instance(path, m)
    back, _ = maps.read_instance(path)
    assert isinstance(back, maps.Map2D)
    assert (back.cells == m.cells).all()


def test_instance_header_format():
    m = maps.Map1D([0, 1])
    text = maps.format_instance(m)
    assert text.splitlines()[0] == "EMPTYQ1 map1d 2"
    text_d = maps.format_instance(m, d=3)
    assert text_d.splitlines()[0] == "EMPTYQ1 map1d 2 3"


@pytest.mark.parametrize("text", [
    "",
    "NOPE map1d 2\n0\n1\n",
    "EMPTYQ1 bogus 2\n0\n1\n",
    "EMPTYQ1 map1d 3\n0\n1\n",          # wrong line count
    "EMPTYQ1 map1d 2\n0\n7\n",          # bad digit handled by Map1D check
    "EMPTYQ1 map2d 2\n00\n0\n",         # ragged row
])
def test_instance_parse_errors(text):
    with pytest.raises(ValueError):
        maps.parse_instance(text)
