"""
Monte Carlo Type I / Type II estimation.

H₀ trial i draws from substream (seed, 0, i) and H₁ trial i from (seed, 1, i).
Trials run in joblib batches; results are reassembled by trial index, so the
report is identical for any worker count.
"""

import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import List, Optional, Tuple, Union

import numpy as np
from joblib import Parallel, delayed
from scipy import stats
from tqdm import tqdm

from ..config import Config
from ..contrasts import Side, contrast_matrix
from ..detectors import combined_decision, max_decision, pbj_decision
from ..errors import InputError
from ..grids import AUTO, Grid, resolve_scan_grid
from .generators import draw
from .likelihood import lrt_test
from .rng import STREAM_ALTERNATIVE, STREAM_NULL, check_seed, substream
from .scenarios import MixturePrior, MixtureScenario, Scenario

logger = logging.getLogger(__name__)


class TestKind(str, Enum):
    __test__ = False

    PBJ = "pbj"
    MAX = "max"
    COMBINED = "combined"
    LRT = "lrt"

    @classmethod
    def parse(cls, value: Union["TestKind", str]) -> "TestKind":
        if isinstance(value, cls):
            return value
        try:
            return cls(str(value).strip().lower())
        except ValueError:
            raise InputError(f"unknown test '{value}' (expected pbj|max|combined|lrt)") from None


@dataclass(frozen=True)
class ErrorConfig:
    """Everything estimate_errors needs; p and n come from the scenarios."""

    h0: Scenario
    h1: Scenario
    test: TestKind = TestKind.COMBINED
    trials: int = Config.DEFAULT_TRIALS
    seed: int = Config.DEFAULT_SEED
    side: Side = Side.ONE
    gamma: float = Config.DEFAULT_GAMMA
    delta: Union[float, str] = AUTO
    lrt_prior: Optional[MixturePrior] = None

    def __post_init__(self):
        object.__setattr__(self, "test", TestKind.parse(self.test))
        object.__setattr__(self, "side", Side.parse(self.side))
        problems = []
        if int(self.trials) < 1:
            problems.append("trials must be at least 1")
        if (self.h0.p, self.h0.n) != (self.h1.p, self.h1.n):
            problems.append("h0 and h1 dimensions disagree")
        if not self.gamma > 0:
            problems.append("penalty exponent must be positive")
        if self.test is TestKind.LRT and self.resolved_lrt_prior() is None:
            problems.append("lrt test needs a mixture prior (h1 mixture or lrt_prior)")
        try:
            check_seed(self.seed)
        except ValueError as exc:
            problems.append(str(exc))
        if problems:
            raise InputError("; ".join(problems))

    @property
    def p(self) -> int:
        return self.h0.p

    @property
    def n(self) -> int:
        return self.h0.n

    def resolved_lrt_prior(self) -> Optional[MixturePrior]:
        if self.lrt_prior is not None:
            return self.lrt_prior
        if isinstance(self.h1, MixtureScenario):
            return self.h1.prior
        return None

    def describe(self) -> dict:
        return {
            "h0": self.h0.describe(),
            "h1": self.h1.describe(),
            "test": self.test.value,
            "trials": int(self.trials),
            "seed": int(self.seed),
            "side": self.side.value,
            "gamma": self.gamma,
            "delta": self.delta,
        }


@dataclass
class McErrorReport:
    """Empirical errors with Wilson 95% intervals."""

    trials: int
    seed: int
    rejections_h0: int
    rejections_h1: int
    type1_hat: float
    type1_ci: Tuple[float, float]
    type2_hat: float
    type2_ci: Tuple[float, float]
    config: dict = field(default_factory=dict)
    grid_size: Optional[int] = None
    flags: List[str] = field(default_factory=list)
    h0_statistics: Optional[np.ndarray] = field(default=None, repr=False)
    h1_statistics: Optional[np.ndarray] = field(default=None, repr=False)

    @property
    def risk(self) -> float:
        return self.type1_hat + self.type2_hat

    def to_dict(self) -> dict:
        return {
            "trials": self.trials,
            "seed": self.seed,
            "rejections_h0": self.rejections_h0,
            "rejections_h1": self.rejections_h1,
            "type1_hat": self.type1_hat,
            "type1_ci": list(self.type1_ci),
            "type2_hat": self.type2_hat,
            "type2_ci": list(self.type2_ci),
            "risk": self.risk,
            "grid_size": self.grid_size,
            "flags": list(self.flags),
            "config": self.config,
        }


def wilson_interval(successes: int, trials: int) -> Tuple[float, float]:
    """Wilson score 95% interval for a binomial proportion."""
    ci = stats.binomtest(int(successes), int(trials)).proportion_ci(confidence_level=0.95, method="wilson")
    return float(ci.low), float(ci.high)


def _decide(config: ErrorConfig, grid: Optional[Grid], X) -> Tuple[bool, float]:
    if config.test is TestKind.LRT:
        decision = lrt_test(X, config.resolved_lrt_prior())
        return decision.reject, decision.statistic
    Y = contrast_matrix(X, grid)
    if config.test is TestKind.PBJ:
        decision = pbj_decision(Y, config.side, config.gamma)
    elif config.test is TestKind.MAX:
        decision = max_decision(Y, config.gamma, config.side)
    else:
        decision = combined_decision(Y, config.side, config.gamma)
    return decision.reject, decision.statistic


def _run_batch(config: ErrorConfig, grid: Optional[Grid], stream: int,
               trial_ids: range) -> Tuple[np.ndarray, np.ndarray]:
    scenario = config.h0 if stream == STREAM_NULL else config.h1
    rejects = np.zeros(len(trial_ids), dtype=bool)
    statistics = np.zeros(len(trial_ids))
    for pos, trial in enumerate(trial_ids):
        X = draw(scenario, substream(config.seed, stream, trial))
        rejects[pos], statistics[pos] = _decide(config, grid, X)
    return rejects, statistics


def _batches(trials: int, size: int) -> List[range]:
    return [range(start, min(start + size, trials)) for start in range(0, trials, size)]


def estimate_errors(config: ErrorConfig, workers: Optional[int] = None,
                    show_progress: bool = False) -> McErrorReport:
    """
    Run paired H₀/H₁ trial streams and report empirical Type I and Type II errors.
    """
    trials = int(config.trials)
    grid = None
    flags: List[str] = []
    if config.test is not TestKind.LRT:
        grid = resolve_scan_grid(config.n, config.delta)
        if grid.fallback:
            flags.append(f"grid_fallback:{grid.fallback}")
        if config.p * len(grid) == 1 and config.test in (TestKind.MAX, TestKind.COMBINED):
            flags.append("degenerate_threshold")

    jobs = [(stream, ids) for stream in (STREAM_NULL, STREAM_ALTERNATIVE)
            for ids in _batches(trials, Config.BATCH_SIZE)]
    n_jobs = Config.workers(workers)
    logger.info("estimating errors: %d trials, %d batches, %d workers", trials, len(jobs), n_jobs)

    if n_jobs == 1:
        iterator = tqdm(jobs, desc="trial batches", disable=not show_progress, leave=False)
        outputs = [_run_batch(config, grid, stream, ids) for stream, ids in iterator]
    else:
        outputs = Parallel(n_jobs=n_jobs)(
            delayed(_run_batch)(config, grid, stream, ids) for stream, ids in jobs
        )

    per_stream = {STREAM_NULL: ([], []), STREAM_ALTERNATIVE: ([], [])}
    for (stream, _), (rejects, statistics) in zip(jobs, outputs):
        per_stream[stream][0].append(rejects)
        per_stream[stream][1].append(statistics)
    h0_rejects = np.concatenate(per_stream[STREAM_NULL][0])
    h1_rejects = np.concatenate(per_stream[STREAM_ALTERNATIVE][0])

    rejections_h0 = int(h0_rejects.sum())
    accepted_h1 = int(trials - h1_rejects.sum())
    return McErrorReport(
        trials=trials,
        seed=int(config.seed),
        rejections_h0=rejections_h0,
        rejections_h1=int(h1_rejects.sum()),
        type1_hat=rejections_h0 / trials,
        type1_ci=wilson_interval(rejections_h0, trials),
        type2_hat=accepted_h1 / trials,
        type2_ci=wilson_interval(accepted_h1, trials),
        config=config.describe(),
        grid_size=None if grid is None else len(grid),
        flags=flags,
        h0_statistics=np.concatenate(per_stream[STREAM_NULL][1]),
        h1_statistics=np.concatenate(per_stream[STREAM_ALTERNATIVE][1]),
    )
