"""emptyq: query-model simulation and benchmarks for largest-empty-region search."""

from .maps import (
    CountingOracle,
    Map1D,
    Map2D,
    Rect,
    Segment,
    Square,
    TritMap1D,
    gen_adversarial_1d,
    gen_adversarial_rec,
    gen_adversarial_rec2,
    gen_adversarial_recw,
    gen_adversarial_square,
    gen_planted_gap_trit1d,
    gen_random_1d,
    gen_random_2d,
    gen_random_promise_2d,
    gen_random_trit1d,
    query,
    read_instance,
    write_instance,
)
from .qcore import (
    BaseRoutine,
    CandidateSet,
    GroverSpec,
    OutcomeSample,
    amplitude_amplify,
    boost,
    first_one,
    grover_success_prob,
    last_one,
    qmax,
    qsearch,
    sample_grover_run,
)
from .window import MonotoneQueue
from .algos1d import (
    fixed_len,
    fixed_len_fixed_point,
    fixed_len_fixed_point_szbt,
    lseg,
    szbt,
)
from .algos2d import (
    fixed_point_rec_area,
    fixed_size_fixed_point_square,
    fixed_size_square,
    g_window,
    lrec2,
    lrecw,
    lsqr,
)
from .baseline import (
    lrec2_scan,
    lrecw_scan,
    lseg_scan,
    lsqr_dp,
    rect_empty_check,
    szbt_scan,
)
from .harness import Config, SweepReport, TrialReport, run_sweep, run_trial

__version__ = "0.1.0"
