"""Problem instances, counting oracles, and instance generators.

Maps are immutable once built.  Everything an algorithm learns about a map
must flow through a :class:`CountingOracle`, which charges one query per
classical read and supports bulk charges for simulated search iterations.
Structure caches (prefix sums, wall positions) are simulator-internal and
never charged: the simulator needs them to sample measurement outcomes from
the exact distributions, the algorithms themselves never look at them.
"""

from __future__ import annotations

import io
from contextlib import contextmanager
from dataclasses import dataclass
from typing import Optional, Union

import numpy as np

__all__ = [
    "Map1D",
    "TritMap1D",
    "Map2D",
    "CountingOracle",
    "Segment",
    "Square",
    "Rect",
    "gen_random_1d",
    "gen_random_trit1d",
    "gen_planted_gap_trit1d",
    "gen_random_2d",
    "gen_random_promise_2d",
    "gen_adversarial_1d",
    "gen_adversarial_square",
    "gen_adversarial_recw",
    "gen_adversarial_rec2",
    "gen_adversarial_rec",
    "read_instance",
    "write_instance",
    "parse_instance",
    "format_instance",
]


# ---------------------------------------------------------------------------
# result records


@dataclass(frozen=True)
class Segment:
    """Closed index interval [l, r].  A missing result is plain ``None``.

    LSEG results satisfy 0 <= l <= r <= n-1.  Bounded-segment (SZBT) results
    may use the virtual walls -1 and n.
    """

    l: int
    r: int

    @property
    def length(self) -> int:
        return self.r - self.l + 1


@dataclass(frozen=True)
class Square:
    """Axis-aligned square: rows x..x+d-1, columns y..y+d-1."""

    x: int
    y: int
    d: int


@dataclass(frozen=True)
class Rect:
    """Axis-aligned rectangle: rows x1..x2, columns y1..y2.

    ``size`` follows the (x2-x1)*(y2-y1) convention, which is off by one in
    each dimension from the covered cell count; a 1x1 rectangle has size 0.
    """

    x1: int
    y1: int
    x2: int
    y2: int

    @property
    def size(self) -> int:
        return (self.x2 - self.x1) * (self.y2 - self.y1)


def rect_size(rect: Optional[Rect]) -> int:
    return 0 if rect is None else rect.size


# ---------------------------------------------------------------------------
# maps


class Map1D:
    """Binary map f: {0..n-1} -> {0,1} stored as a dense uint8 array."""

    kind = "map1d"

    def __init__(self, bits):
        arr = np.asarray(bits, dtype=np.uint8)
        if arr.ndim != 1 or arr.size < 1:
            raise ValueError("bits must be a non-empty 1-D sequence")
        if arr.max(initial=0) > 1:
            raise ValueError("bits must be 0/1")
        self.n = int(arr.size)
        self._bits = arr
        self._bits.setflags(write=False)
        self._prefix = None
        self._ones_pos = None

    @property
    def bits(self) -> np.ndarray:
        return self._bits

    def value(self, i: int) -> int:
        return int(self._bits[i])

    # -- uncharged structure (simulator internals) --

    def prefix(self) -> np.ndarray:
        if self._prefix is None:
            p = np.zeros(self.n + 1, dtype=np.int64)
            np.cumsum(self._bits, out=p[1:])
            self._prefix = p
        return self._prefix

    def ones_positions(self) -> np.ndarray:
        if self._ones_pos is None:
            self._ones_pos = np.flatnonzero(self._bits).astype(np.int64)
        return self._ones_pos

    def count_ones(self, lo: int, hi: int) -> int:
        p = self.prefix()
        return int(p[hi + 1] - p[lo])

    def next_one(self, i: int) -> int:
        """Smallest marked index >= i, or n when none."""
        pos = self.ones_positions()
        k = int(np.searchsorted(pos, i, side="left"))
        return int(pos[k]) if k < pos.size else self.n

    def prev_one(self, i: int) -> int:
        """Largest marked index <= i, or -1 when none."""
        if i < 0:
            return -1
        pos = self.ones_positions()
        k = int(np.searchsorted(pos, i, side="right")) - 1
        return int(pos[k]) if k >= 0 else -1


class TritMap1D:
    """Ternary map f: {0..n-1} -> {0,1,2} with virtual sentinels f(-1)=f(n)=2."""

    kind = "trit1d"

    def __init__(self, trits):
        arr = np.asarray(trits, dtype=np.uint8)
        if arr.ndim != 1 or arr.size < 1:
            raise ValueError("trits must be a non-empty 1-D sequence")
        if arr.max(initial=0) > 2:
            raise ValueError("trits must be 0/1/2")
        self.n = int(arr.size)
        self._trits = arr
        self._trits.setflags(write=False)
        self._nonzero = None

    @property
    def trits(self) -> np.ndarray:
        return self._trits

    def value(self, i: int) -> int:
        if i == -1 or i == self.n:
            return 2
        return int(self._trits[i])

    def nonzero_map(self) -> Map1D:
        """Derived indicator f'(i) = 1 iff f(i) != 0 (sentinels excluded)."""
        if self._nonzero is None:
            self._nonzero = Map1D((self._trits != 0).astype(np.uint8))
        return self._nonzero


class Map2D:
    """Binary map f: {0..n-1}^2 -> {0,1} stored as a dense n x n uint8 array."""

    kind = "map2d"

    def __init__(self, cells):
        arr = np.asarray(cells, dtype=np.uint8)
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1] or arr.shape[0] < 1:
            raise ValueError("cells must be a square 2-D table")
        if arr.max(initial=0) > 1:
            raise ValueError("cells must be 0/1")
        self.n = int(arr.shape[0])
        self._cells = arr
        self._cells.setflags(write=False)
        self._row_prefix = None
        self._area_prefix = None
        self._row_maps: dict[int, Map1D] = {}
        self._col_maps: dict[int, Map1D] = {}
        self._band_maps: dict[tuple[int, int], Map1D] = {}

    @property
    def cells(self) -> np.ndarray:
        return self._cells

    def value(self, i: int, j: int) -> int:
        return int(self._cells[i, j])

    # -- uncharged structure --

    def row_prefix(self) -> np.ndarray:
        if self._row_prefix is None:
            p = np.zeros((self.n, self.n + 1), dtype=np.int64)
            np.cumsum(self._cells, axis=1, out=p[:, 1:])
            self._row_prefix = p
        return self._row_prefix

    def area_prefix(self) -> np.ndarray:
        if self._area_prefix is None:
            p = np.zeros((self.n + 1, self.n + 1), dtype=np.int64)
            np.cumsum(np.cumsum(self._cells, axis=0), axis=1, out=p[1:, 1:])
            self._area_prefix = p
        return self._area_prefix

    def ones_in_rect(self, i1: int, j1: int, i2: int, j2: int) -> int:
        p = self.area_prefix()
        return int(p[i2 + 1, j2 + 1] - p[i1, j2 + 1] - p[i2 + 1, j1] + p[i1, j1])

    def row_map(self, i: int) -> Map1D:
        m = self._row_maps.get(i)
        if m is None:
            m = Map1D(self._cells[i])
            self._row_maps[i] = m
        return m

    def col_map(self, j: int) -> Map1D:
        m = self._col_maps.get(j)
        if m is None:
            m = Map1D(np.ascontiguousarray(self._cells[:, j]))
            self._col_maps[j] = m
        return m

    def band_any_map(self, x1: int, d: int) -> Map1D:
        """Row indicator: bit i is 1 iff row i has a 1 in columns [x1, x1+d-1]."""
        key = (x1, d)
        m = self._band_maps.get(key)
        if m is None:
            p = self.row_prefix()
            m = Map1D(((p[:, x1 + d] - p[:, x1]) > 0).astype(np.uint8))
            self._band_maps[key] = m
        return m


AnyMap = Union[Map1D, TritMap1D, Map2D]


# ---------------------------------------------------------------------------
# counting oracle


class CountingOracle:
    """Charges and accumulates oracle queries against one map.

    Every charge is attributed to the innermost active scope label, and the
    per-scope subtotals form the charge ledger: their sum always equals
    ``count`` exactly, which is what the audit tests check end to end.
    """

    def __init__(self, target: AnyMap):
        self.target = target
        self.count = 0
        self.ledger: dict[str, int] = {}
        self._scopes: list[str] = ["direct"]

    @property
    def n(self) -> int:
        return self.target.n

    def charge(self, amount: int) -> None:
        if amount < 0:
            raise ValueError("charge must be non-negative")
        if amount == 0:
            return
        label = self._scopes[-1]
        self.count += amount
        self.ledger[label] = self.ledger.get(label, 0) + amount

    @contextmanager
    def scope(self, label: str):
        self._scopes.append(label)
        try:
            yield self
        finally:
            self._scopes.pop()

    # -- charged reads --

    def read1(self, i: int) -> int:
        t = self.target
        if isinstance(t, TritMap1D):
            if i == -1 or i == t.n:
                return 2  # sentinel reads are known a priori and free
            if not 0 <= i < t.n:
                raise IndexError(f"index {i} outside domain [0, {t.n - 1}]")
            self.charge(1)
            return t.value(i)
        if not isinstance(t, Map1D):
            raise TypeError("read1 requires a 1-D map")
        if not 0 <= i < t.n:
            raise IndexError(f"index {i} outside domain [0, {t.n - 1}]")
        self.charge(1)
        return t.value(i)

    def read2(self, i: int, j: int) -> int:
        t = self.target
        if not isinstance(t, Map2D):
            raise TypeError("read2 requires a 2-D map")
        if not (0 <= i < t.n and 0 <= j < t.n):
            raise IndexError(f"cell ({i}, {j}) outside domain")
        self.charge(1)
        return t.value(i, j)

    def read_all(self) -> np.ndarray:
        """Read the whole table once (classical baselines); charges n or n^2."""
        t = self.target
        if isinstance(t, Map2D):
            self.charge(t.n * t.n)
            return t.cells
        if isinstance(t, TritMap1D):
            self.charge(t.n)
            return t.trits
        self.charge(t.n)
        return t.bits


def query(oracle: CountingOracle, index) -> int:
    """Classical read of the oracle; 1-D index or (i, j) pair."""
    if isinstance(index, tuple):
        return oracle.read2(index[0], index[1])
    return oracle.read1(index)


# ---------------------------------------------------------------------------
# generators


def gen_random_1d(n: int, p_one: float, seed: int) -> Map1D:
    """Each bit independently 1 with probability p_one."""
    if n < 1:
        raise ValueError("n must be positive")
    if not 0.0 <= p_one <= 1.0:
        raise ValueError("p_one must be in [0, 1]")
    rng = np.random.default_rng(seed)
    return Map1D((rng.random(n) < p_one).astype(np.uint8))


def gen_random_trit1d(n: int, p_one: float, p_two: float, seed: int) -> TritMap1D:
    """Independent trits: 1 w.p. p_one, 2 w.p. p_two, else 0."""
    if n < 1:
        raise ValueError("n must be positive")
    if p_one < 0 or p_two < 0 or p_one + p_two > 1.0:
        raise ValueError("need p_one, p_two >= 0 and p_one + p_two <= 1")
    rng = np.random.default_rng(seed)
    u = rng.random(n)
    trits = np.zeros(n, dtype=np.uint8)
    trits[u < p_one] = 1
    trits[(u >= p_one) & (u < p_one + p_two)] = 2
    return TritMap1D(trits)


def gen_planted_gap_trit1d(n: int, gap: int, p_one: float, seed: int) -> TritMap1D:
    """Ternary map guaranteed to contain one segment of `gap` 0s bounded by 2s.

    Sparse 1s are sprinkled elsewhere; used by scaling sweeps so the minimal
    bounded-segment length stays fixed while n grows.
    """
    if gap < 0 or gap + 2 > n:
        raise ValueError("planted gap does not fit")
    rng = np.random.default_rng(seed)
    u = rng.random(n)
    trits = np.zeros(n, dtype=np.uint8)
    trits[u < p_one] = 1
    start = int(rng.integers(0, n - gap - 1))
    trits[start] = 2
    trits[start + gap + 1] = 2
    trits[start + 1 : start + gap + 1] = 0
    return TritMap1D(trits)


def gen_random_2d(n: int, p_one: float, seed: int) -> Map2D:
    if n < 1:
        raise ValueError("n must be positive")
    if not 0.0 <= p_one <= 1.0:
        raise ValueError("p_one must be in [0, 1]")
    rng = np.random.default_rng(seed)
    return Map2D((rng.random((n, n)) < p_one).astype(np.uint8))


def gen_random_promise_2d(n: int, blocks: int, seed: int,
                          min_side: int = 1, max_side: Optional[int] = None) -> Map2D:
    """All-ones map with isolated all-zero rectangles (the LREC2 promise).

    Placed blocks keep a one-cell separation from each other and may touch the
    border.  Fewer than `blocks` rectangles are placed when space runs out.
    """
    if n < 1:
        raise ValueError("n must be positive")
    if max_side is None:
        max_side = max(1, n // 3)
    rng = np.random.default_rng(seed)
    cells = np.ones((n, n), dtype=np.uint8)
    blocked = np.zeros((n, n), dtype=bool)
    placed = 0
    attempts = 0
    while placed < blocks and attempts < 60 * blocks:
        attempts += 1
        h = int(rng.integers(min_side, max_side + 1))
        w = int(rng.integers(min_side, max_side + 1))
        if h > n or w > n:
            continue
        x = int(rng.integers(0, n - h + 1))
        y = int(rng.integers(0, n - w + 1))
        xa, ya = max(0, x - 1), max(0, y - 1)
        xb, yb = min(n, x + h + 1), min(n, y + w + 1)
        if blocked[xa:xb, ya:yb].any():
            continue
        cells[x : x + h, y : y + w] = 0
        blocked[xa:xb, ya:yb] = True
        placed += 1
    return Map2D(cells)


def gen_adversarial_1d(n: int, k: int) -> Map1D:
    """Hard 1-D family: ones at 0 and k only; the best empty segment is [1, k-1]."""
    if n < 2 or n % 2 != 0:
        raise ValueError("n must be even and >= 2")
    if not n // 2 + 1 <= k <= n - 1:
        raise ValueError(f"k must lie in [{n // 2 + 1}, {n - 1}]")
    bits = np.zeros(n, dtype=np.uint8)
    bits[0] = 1
    bits[k] = 1
    return Map1D(bits)


def gen_adversarial_square(n: int, k: int, t: int) -> Map2D:
    """Hard square family: ones at (0,0) and (k,t) only."""
    if n < 2 or n % 2 != 0:
        raise ValueError("n must be even and >= 2")
    lo, hi = n // 2 + 1, n - 1
    if not (lo <= k <= hi and lo <= t <= hi):
        raise ValueError(f"k, t must lie in [{lo}, {hi}]")
    cells = np.zeros((n, n), dtype=np.uint8)
    cells[0, 0] = 1
    cells[k, t] = 1
    return Map2D(cells)


def gen_adversarial_recw(n: int, d: int, k: int, t: int) -> Map2D:
    """Hard fixed-width family: zeros confined to the first d columns.

    Columns >= d are all ones; within the d-column band the only ones sit at
    (0, 0) and (t, k).  The best width-d rectangle spans rows 1..t-1, so the
    longest run of all-zero rows in the band has length t-1.
    """
    if not 1 <= d <= n:
        raise ValueError("need 1 <= d <= n")
    if not 0 <= k <= d - 1:
        raise ValueError(f"k must lie in [0, {d - 1}]")
    if not n // 2 + 1 <= t <= n - 1:
        raise ValueError(f"t must lie in [{n // 2 + 1}, {n - 1}]")
    cells = np.ones((n, n), dtype=np.uint8)
    cells[:, :d] = 0
    cells[0, 0] = 1
    cells[t, k] = 1
    return Map2D(cells)


def gen_adversarial_rec2(n: int, k: int, t: int) -> Map2D:
    """Promise family: all ones, except a single zero at (k, t); (-1, -1) means no zero."""
    if (k, t) == (-1, -1):
        return Map2D(np.ones((n, n), dtype=np.uint8))
    if not (0 <= k <= n - 1 and 0 <= t <= n - 1):
        raise ValueError("(k, t) must be a grid cell or (-1, -1)")
    cells = np.ones((n, n), dtype=np.uint8)
    cells[k, t] = 0
    return Map2D(cells)


def gen_adversarial_rec(n: int, k: int, t: int) -> Map2D:
    """General-rectangle lower-bound family: single one at (k, t), or all zeros."""
    if (k, t) == (-1, -1):
        return Map2D(np.zeros((n, n), dtype=np.uint8))
    if not (0 <= k <= n - 1 and 0 <= t <= n - 1):
        raise ValueError("(k, t) must be a grid cell or (-1, -1)")
    cells = np.zeros((n, n), dtype=np.uint8)
    cells[k, t] = 1
    return Map2D(cells)


# ---------------------------------------------------------------------------
# instance files
#
# Header: "EMPTYQ1 <kind> <n> [d]", kind in {map1d, trit1d, map2d}, then n
# lines: one ASCII digit per line for 1-D kinds, n-digit rows for map2d.

_MAGIC = "EMPTYQ1"


def format_instance(m: AnyMap, d: Optional[int] = None) -> str:
    parts = [_MAGIC, m.kind, str(m.n)]
    if d is not None:
        parts.append(str(d))
    out = io.StringIO()
    out.write(" ".join(parts) + "\n")
    if isinstance(m, Map2D):
        for i in range(m.n):
            out.write("".join(chr(ord("0") + v) for v in m.cells[i]) + "\n")
    else:
        arr = m.trits if isinstance(m, TritMap1D) else m.bits
        for v in arr:
            out.write(chr(ord("0") + int(v)) + "\n")
    return out.getvalue()


def parse_instance(text: str) -> tuple[AnyMap, Optional[int]]:
    lines = text.splitlines()
    if not lines:
        raise ValueError("empty instance file")
    head = lines[0].split()
    if len(head) not in (3, 4) or head[0] != _MAGIC:
        raise ValueError(f"bad header: {lines[0]!r}")
    kind = head[1]
    try:
        n = int(head[2])
        d = int(head[3]) if len(head) == 4 else None
    except ValueError as exc:
        raise ValueError(f"bad header numbers: {lines[0]!r}") from exc
    if n < 1:
        raise ValueError("n must be positive")
    body = [ln.strip() for ln in lines[1:] if ln.strip()]
    if len(body) != n:
        raise ValueError(f"expected {n} data lines, found {len(body)}")
    if kind == "map2d":
        rows = []
        for ln in body:
            if len(ln) != n or not ln.isdigit():
                raise ValueError(f"bad map2d row: {ln!r}")
            rows.append([ord(c) - ord("0") for c in ln])
        return Map2D(np.array(rows, dtype=np.uint8)), d
    if kind in ("map1d", "trit1d"):
        vals = []
        for ln in body:
            if len(ln) != 1 or not ln.isdigit():
                raise ValueError(f"bad {kind} line: {ln!r}")
            vals.append(int(ln))
        arr = np.array(vals, dtype=np.uint8)
        return (TritMap1D(arr) if kind == "trit1d" else Map1D(arr)), d
    raise ValueError(f"unknown kind: {kind!r}")


def write_instance(path, m: AnyMap, d: Optional[int] = None) -> None:
    with open(path, "w", encoding="ascii") as fh:
        fh.write(format_instance(m, d))


def read_instance(path) -> tuple[AnyMap, Optional[int]]:
    with open(path, "r", encoding="ascii") as fh:
        return parse_instance(fh.read())
