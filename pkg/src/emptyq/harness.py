"""Experiment harness: configs, trials, sweeps, statistics, report emission.

A trial runs one problem instance through both the search algorithm and its
classical baseline on separate counting oracles; the trial is correct when
the two optimum values agree (results encode as integers, -1 for "no
result", so a size-0 rectangle still differs from no rectangle).  A sweep
aggregates trials per instance size and fits log-log scaling exponents of
the median charges.  Everything is deterministic given (config, seed): each
trial's randomness derives from the master seed and the trial's coordinates,
so worker-pool execution cannot change any result.
"""

from __future__ import annotations

import concurrent.futures
import hashlib
import io
import math
import random
import statistics
from dataclasses import dataclass, field
from typing import Optional

from . import algos1d, algos2d, baseline, maps

__all__ = [
    "Config",
    "TrialReport",
    "PointAggregate",
    "SweepReport",
    "parse_config",
    "read_config",
    "derive_seed",
    "derive_rng",
    "density",
    "make_instance",
    "run_trial",
    "run_sweep",
    "emit",
    "wilson_interval",
    "loglog_fit",
    "PROBLEMS",
    "TARGET_EXPONENTS",
]

PROBLEMS = ("lseg", "szbt", "lsqr", "lrecw", "lrec2")

# (sweep axis, quantum target exponent, classical target exponent)
TARGET_EXPONENTS = {
    "lseg": ("n", 0.5, 1.0),
    "szbt": ("n", 0.5, 1.0),
    "lsqr": ("n", 1.5, 2.0),
    "lrecw": ("d", 0.5, None),
    "lrec2": ("n", 1.5, 2.0),
}

CSV_TRIAL_HEADER = "problem,n,d,seed,q_charge,c_charge,q_value,c_value,correct"


# ---------------------------------------------------------------------------
# configuration


_CONFIG_KEYS = {
    "problem", "ns", "ds", "trials", "seed", "generator",
    "p_one", "p_two", "gap", "blocks", "d", "h", "w", "workers",
}


@dataclass
class Config:
    problem: str
    ns: tuple[int, ...]
    trials: int
    seed: int
    generator: str
    p_one: str = "0.02"
    p_two: str = "0.02"
    gap: int = 6
    blocks: int = 5
    d: int = 4
    ds: tuple[int, ...] = ()
    h: int = 1
    w: int = 1
    workers: int = 1

    def validate(self) -> None:
        if self.problem not in PROBLEMS:
            raise ValueError(f"unknown problem {self.problem!r}")
        if not self.ns and not self.ds:
            raise ValueError("need a non-empty ns (or ds) grid")
        if self.trials < 1:
            raise ValueError("trials must be >= 1")
        if self.workers < 1:
            raise ValueError("workers must be >= 1")
        for n in self.ns:
            if n < 1:
                raise ValueError("grid sizes must be positive")


def parse_config(text: str) -> Config:
    fields: dict[str, str] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ValueError(f"config line {lineno}: expected key = value")
        key, value = (part.strip() for part in line.split("=", 1))
        if key not in _CONFIG_KEYS:
            raise ValueError(f"config line {lineno}: unknown key {key!r}")
        fields[key] = value
    if "problem" not in fields:
        raise ValueError("config must set 'problem'")

    def ints(key: str, default: tuple[int, ...]) -> tuple[int, ...]:
        if key not in fields:
            return default
        return tuple(int(part) for part in fields[key].split(",") if part.strip())

    cfg = Config(
        problem=fields["problem"],
        ns=ints("ns", ()),
        trials=int(fields.get("trials", "100")),
        seed=int(fields.get("seed", "1")),
        generator=fields.get("generator", "random"),
        p_one=fields.get("p_one", "0.02"),
        p_two=fields.get("p_two", "0.02"),
        gap=int(fields.get("gap", "6")),
        blocks=int(fields.get("blocks", "5")),
        d=int(fields.get("d", "4")),
        ds=ints("ds", ()),
        h=int(fields.get("h", "1")),
        w=int(fields.get("w", "1")),
        workers=int(fields.get("workers", "1")),
    )
    cfg.validate()
    return cfg


def read_config(path) -> Config:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_config(fh.read())


# ---------------------------------------------------------------------------
# randomness and densities


def derive_seed(*parts) -> int:
    digest = hashlib.blake2b(":".join(map(str, parts)).encode(), digest_size=8)
    return int.from_bytes(digest.digest(), "big")


def derive_rng(*parts) -> random.Random:
    return random.Random(derive_seed(*parts))


def density(expr: str, n: int) -> float:
    """Densities may scale with the grid: '0.02', '4/n', or '8/n2'."""
    expr = expr.strip()
    if expr.endswith("/n2"):
        return float(expr[:-3]) / (n * n)
    if expr.endswith("/n"):
        return float(expr[:-2]) / n
    return float(expr)


# ---------------------------------------------------------------------------
# instances


def make_instance(cfg: Config, n: int, d: int, seed: int):
    """Build one instance; returns (map, descriptor)."""
    gen = cfg.generator
    rng = random.Random(seed)
    if cfg.problem == "lseg":
        if gen == "random":
            p = density(cfg.p_one, n)
            return maps.gen_random_1d(n, p, seed), f"random1d:n={n}:p={p:.6g}:seed={seed}"
        if gen == "adversarial":
            k = rng.randrange(n // 2 + 1, n)
            return maps.gen_adversarial_1d(n, k), f"adv1d:n={n}:k={k}"
    elif cfg.problem == "szbt":
        if gen == "random":
            p1, p2 = density(cfg.p_one, n), density(cfg.p_two, n)
            return (maps.gen_random_trit1d(n, p1, p2, seed),
                    f"randomtrit:n={n}:p1={p1:.6g}:p2={p2:.6g}:seed={seed}")
        if gen == "planted":
            p1 = density(cfg.p_one, n)
            return (maps.gen_planted_gap_trit1d(n, cfg.gap, p1, seed),
                    f"planted:n={n}:gap={cfg.gap}:p1={p1:.6g}:seed={seed}")
    elif cfg.problem in ("lsqr", "lrecw"):
        if gen == "random":
            p = density(cfg.p_one, n)
            return maps.gen_random_2d(n, p, seed), f"random2d:n={n}:p={p:.6g}:seed={seed}"
        if gen == "adversarial" and cfg.problem == "lsqr":
            k = rng.randrange(n // 2 + 1, n)
            t = rng.randrange(n // 2 + 1, n)
            return maps.gen_adversarial_square(n, k, t), f"advsq:n={n}:k={k}:t={t}"
        if gen == "adversarial" and cfg.problem == "lrecw":
            k = rng.randrange(0, d)
            t = rng.randrange(n // 2 + 1, n)
            return maps.gen_adversarial_recw(n, d, k, t), f"advrecw:n={n}:d={d}:k={k}:t={t}"
    elif cfg.problem == "lrec2":
        if gen == "promise":
            return (maps.gen_random_promise_2d(n, cfg.blocks, seed),
                    f"promise:n={n}:blocks={cfg.blocks}:seed={seed}")
        if gen == "adversarial":
            if rng.random() < 0.2:
                k = t = -1
            else:
                k, t = rng.randrange(n), rng.randrange(n)
            return maps.gen_adversarial_rec2(n, k, t), f"advrec2:n={n}:k={k}:t={t}"
    raise ValueError(f"generator {gen!r} not supported for problem {cfg.problem!r}")


# ---------------------------------------------------------------------------
# trials


@dataclass
class TrialReport:
    problem: str
    instance: str
    n: int
    d: int
    seed: int
    q_result: object
    q_charge: int
    q_value: int
    c_result: object
    c_charge: int
    c_value: int
    sound: bool

    @property
    def correct(self) -> bool:
        return self.q_value == self.c_value

    def csv_row(self) -> str:
        return (f"{self.problem},{self.n},{self.d},{self.seed},{self.q_charge},"
                f"{self.c_charge},{self.q_value},{self.c_value},{int(self.correct)}")


def _value_lseg(seg: Optional[maps.Segment]) -> int:
    return -1 if seg is None else seg.length


def _value_exists(res) -> int:
    return 0 if res is None else 1


def _value_square(sq: Optional[maps.Square]) -> int:
    return -1 if sq is None else sq.d


def _value_rect(rect: Optional[maps.Rect]) -> int:
    return -1 if rect is None else rect.size


def run_trial(cfg: Config, n: int, d: int, trial_index: int) -> TrialReport:
    seed = derive_seed(cfg.seed, cfg.problem, n, d, trial_index)
    instance, descriptor = make_instance(cfg, n, d, seed)
    rng = derive_rng(seed, "alg")

    q_oracle = maps.CountingOracle(instance)
    c_oracle = maps.CountingOracle(instance)
    problem = cfg.problem
    if problem == "lseg":
        q_res = algos1d.lseg(q_oracle, rng)
        c_res = baseline.lseg_scan(c_oracle)
        q_value, c_value = _value_lseg(q_res), _value_lseg(c_res)
        sound = q_res is None or baseline.segment_is_empty(instance, q_res)
    elif problem == "szbt":
        q_res = algos1d.szbt(q_oracle, rng)
        c_res = baseline.szbt_scan(c_oracle)
        q_value, c_value = _value_exists(q_res), _value_exists(c_res)
        sound = q_res is None or baseline.szbt_segment_is_valid(instance, q_res)
    elif problem == "lsqr":
        q_res = algos2d.lsqr(q_oracle, rng)
        c_res = baseline.lsqr_dp(c_oracle)
        q_value, c_value = _value_square(q_res), _value_square(c_res)
        sound = q_res is None or baseline.square_is_empty(instance, q_res)
    elif problem == "lrecw":
        q_res = algos2d.lrecw(q_oracle, d, rng)
        c_res = baseline.lrecw_scan(c_oracle, d)
        q_value, c_value = _value_rect(q_res), _value_rect(c_res)
        sound = q_res is None or baseline.rect_is_empty(instance, q_res)
    elif problem == "lrec2":
        q_res = algos2d.lrec2(q_oracle, cfg.h, cfg.w, rng)
        c_res = baseline.lrec2_scan(c_oracle, cfg.h, cfg.w)
        q_value, c_value = _value_rect(q_res), _value_rect(c_res)
        sound = q_res is None or baseline.rect_is_empty(instance, q_res)
    else:
        raise ValueError(f"unknown problem {problem!r}")

    return TrialReport(
        problem=problem, instance=descriptor, n=n, d=d, seed=seed,
        q_result=q_res, q_charge=q_oracle.count, q_value=q_value,
        c_result=c_res, c_charge=c_oracle.count, c_value=c_value,
        sound=sound,
    )


# ---------------------------------------------------------------------------
# sweeps


@dataclass
class PointAggregate:
    axis_value: int
    trials: int
    q_charge_median: float
    q_charge_mean: float
    c_charge_median: float
    error_rate: float
    wilson_low: float
    wilson_high: float


@dataclass
class SweepReport:
    problem: str
    axis: str                      # "n" or "d"
    config_seed: int
    points: list[PointAggregate]
    trials: list[TrialReport] = field(repr=False, default_factory=list)
    slope_q: Optional[float] = None
    resid_q: Optional[float] = None
    slope_c: Optional[float] = None
    resid_c: Optional[float] = None


def wilson_interval(successes: int, total: int,
                    z: float = 1.959963984540054) -> tuple[float, float]:
    """95% Wilson score interval for a binomial proportion."""
    if total == 0:
        return 0.0, 1.0
    phat = successes / total
    denom = 1.0 + z * z / total
    center = (phat + z * z / (2 * total)) / denom
    half = z * math.sqrt(phat * (1 - phat) / total + z * z / (4 * total * total)) / denom
    low = center - half
    return (0.0 if low < 1e-12 else low), min(1.0, center + half)


def loglog_fit(xs: list[float], ys: list[float]) -> tuple[float, float]:
    """(slope, rms residual) of a least-squares line through (log2 x, log2 y)."""
    if len(xs) < 4:
        raise ValueError("scaling fits need at least 4 points")
    lx = [math.log2(x) for x in xs]
    ly = [math.log2(max(y, 1e-12)) for y in ys]
    mx = sum(lx) / len(lx)
    my = sum(ly) / len(ly)
    sxx = sum((x - mx) ** 2 for x in lx)
    sxy = sum((x - mx) * (y - my) for x, y in zip(lx, ly))
    slope = sxy / sxx
    intercept = my - slope * mx
    resid = math.sqrt(sum((y - (intercept + slope * x)) ** 2
                          for x, y in zip(lx, ly)) / len(lx))
    return slope, resid


def _trial_spec(cfg: Config, axis_value: int, index: int) -> tuple:
    if TARGET_EXPONENTS[cfg.problem][0] == "d" and cfg.ds:
        return (cfg, cfg.ns[0], axis_value, index)
    return (cfg, axis_value, cfg.d, index)


def _run_spec(spec: tuple) -> TrialReport:
    cfg, n, d, index = spec
    return run_trial(cfg, n, d, index)


def run_sweep(cfg: Config) -> SweepReport:
    """Run the full grid; aggregation is ordered by (axis value, trial index)."""
    cfg.validate()
    axis = TARGET_EXPONENTS[cfg.problem][0]
    grid = list(cfg.ds) if (axis == "d" and cfg.ds) else list(cfg.ns)
    specs = [_trial_spec(cfg, v, i) for v in grid for i in range(cfg.trials)]

    if cfg.workers > 1:
        with concurrent.futures.ProcessPoolExecutor(max_workers=cfg.workers) as pool:
            results = list(pool.map(_run_spec, specs, chunksize=4))
    else:
        results = [_run_spec(spec) for spec in specs]

    points = []
    for v in grid:
        sub = [t for t in results if (t.d if axis == "d" else t.n) == v]
        wrong = sum(1 for t in sub if not t.correct)
        lo, hi = wilson_interval(wrong, len(sub))
        points.append(PointAggregate(
            axis_value=v,
            trials=len(sub),
            q_charge_median=float(statistics.median(t.q_charge for t in sub)),
            q_charge_mean=float(statistics.fmean(t.q_charge for t in sub)),
            c_charge_median=float(statistics.median(t.c_charge for t in sub)),
            error_rate=wrong / len(sub),
            wilson_low=lo,
            wilson_high=hi,
        ))

    report = SweepReport(problem=cfg.problem, axis=axis, config_seed=cfg.seed,
                         points=points, trials=results)
    if len(points) >= 4:
        xs = [float(p.axis_value) for p in points]
        report.slope_q, report.resid_q = loglog_fit(xs, [p.q_charge_median for p in points])
        report.slope_c, report.resid_c = loglog_fit(xs, [p.c_charge_median for p in points])
    return report


# ---------------------------------------------------------------------------
# emission


def emit(report: SweepReport, fmt: str) -> bytes:
    """Serialize a sweep report; 'csv' (per trial), 'aggregate-csv', or 'text'."""
    if fmt == "csv":
        out = io.StringIO()
        out.write(CSV_TRIAL_HEADER + "\n")
        for t in report.trials:
            out.write(t.csv_row() + "\n")
        return out.getvalue().encode()
    if fmt == "aggregate-csv":
        out = io.StringIO()
        out.write("problem,axis,axis_value,trials,q_charge_median,q_charge_mean,"
                  "c_charge_median,error_rate,wilson_low,wilson_high\n")
        for p in report.points:
            out.write(f"{report.problem},{report.axis},{p.axis_value},{p.trials},"
                      f"{p.q_charge_median:.6g},{p.q_charge_mean:.6g},"
                      f"{p.c_charge_median:.6g},{p.error_rate:.6g},"
                      f"{p.wilson_low:.6g},{p.wilson_high:.6g}\n")
        return out.getvalue().encode()
    if fmt == "text":
        _, target_q, target_c = TARGET_EXPONENTS[report.problem]
        out = io.StringIO()
        out.write(f"sweep report: problem={report.problem} axis={report.axis} "
                  f"seed={report.config_seed}\n")
        out.write(f"{'#':>2} {report.axis:>8} {'trials':>7} {'q_median':>12} "
                  f"{'c_median':>12} {'err':>7} {'wilson95':>17}\n")
        for idx, p in enumerate(report.points):
            out.write(f"{idx:>2} {p.axis_value:>8} {p.trials:>7} "
                      f"{p.q_charge_median:>12.6g} {p.c_charge_median:>12.6g} "
                      f"{p.error_rate:>7.3f} "
                      f"[{p.wilson_low:.3f}, {p.wilson_high:.3f}]\n")
        if report.slope_q is not None:
            out.write(f"fitted exponent (median charge vs {report.axis}): "
                      f"quantum {report.slope_q:.3f} (rms resid {report.resid_q:.3f}), "
                      f"target {target_q:g} plus log factors\n")
            if target_c is not None:
                out.write(f"fitted exponent classical {report.slope_c:.3f} "
                          f"(rms resid {report.resid_c:.3f}), target {target_c:g}\n")
        return out.getvalue().encode()
    raise ValueError(f"unknown format {fmt!r}")
