"""
Phase-plane sweeps: signal multiples of the detection boundary at each (a, β) cell.

Desk-scale n cannot reach the triple-log calibration, so every cell runs at a
concrete (p, n, s) and is labelled with the effective (a, β) those dimensions
give. Cells requested by a whose n exceeds the desk cap are clamped and flagged
as saturated.
"""

import logging
import math
import sys
from dataclasses import asdict, dataclass
from typing import List, Optional, Sequence, Tuple, Union

import pandas as pd

from ..boundaries import (
    BoundaryValue,
    Calibration,
    Regime,
    boundary_one_sided,
    boundary_regime2,
    boundary_two_sided,
    calibration_from_dims,
    dims_from_calibration,
    regime2_rate,
)
from ..config import Config
from ..contrasts import Side
from ..errors import InputError
from ..grids import AUTO
from .harness import ErrorConfig, TestKind, estimate_errors
from .rng import child_seed
from .scenarios import AlternativeSpec, NullScenario

logger = logging.getLogger(__name__)

CSV_COLUMNS = [
    "a", "beta", "multiplier", "p", "n", "s", "rho",
    "type1", "type1_lo", "type1_hi", "type2", "type2_lo", "type2_hi",
    "risk", "saturated_flag",
]


@dataclass(frozen=True)
class PhasePlan:
    """Sweep definition. Exactly one of n_values/a_values and one of s_values/beta_values."""

    p: int
    multipliers: Tuple[float, ...]
    n_values: Tuple[int, ...] = ()
    a_values: Tuple[float, ...] = ()
    s_values: Tuple[int, ...] = ()
    beta_values: Tuple[float, ...] = ()
    side: Side = Side.ONE
    regime: Regime = Regime.THREE_LOG
    test: TestKind = TestKind.COMBINED
    trials: int = Config.DEFAULT_TRIALS
    seed: int = Config.DEFAULT_SEED
    gamma: float = Config.DEFAULT_GAMMA
    delta: Union[float, str] = AUTO
    n_max: int = 4096
    t_star_fraction: float = 0.35

    def __post_init__(self):
        object.__setattr__(self, "side", Side.parse(self.side))
        object.__setattr__(self, "regime", Regime.parse(self.regime))
        object.__setattr__(self, "test", TestKind.parse(self.test))
        if self.test is TestKind.LRT:
            raise InputError("phase sweeps run the scan tests (pbj|max|combined)")
        if self.n_values and self.a_values:
            raise InputError("give n_values or a_values, not both")
        if self.s_values and self.beta_values:
            raise InputError("give s_values or beta_values, not both")
        if not 0.0 < self.t_star_fraction < 1.0:
            raise InputError("t_star_fraction must lie in (0, 1)")

    def is_empty(self) -> bool:
        return not ((self.n_values or self.a_values) and (self.s_values or self.beta_values)
                    and self.multipliers)


@dataclass
class PhasePoint:
    a: float
    beta: float
    multiplier: float
    p: int
    n: int
    s: int
    rho: float
    type1: float
    type1_lo: float
    type1_hi: float
    type2: float
    type2_lo: float
    type2_hi: float
    risk: float
    saturated_flag: bool
    case_label: str = ""
    a_target: Optional[float] = None
    beta_target: Optional[float] = None
    seed: int = 0

    def to_dict(self) -> dict:
        return asdict(self)


@dataclass(frozen=True)
class _Cell:
    index: int
    n: int
    s: int
    calibration: Calibration
    boundary: BoundaryValue
    saturated: bool
    a_target: Optional[float]
    beta_target: Optional[float]


def _boundary_for(regime: Regime, side: Side, cal: Calibration) -> BoundaryValue:
    if regime is Regime.THREE_LOG:
        if side is Side.ONE:
            return boundary_one_sided(cal.a, cal.beta, cal.p)
        return boundary_two_sided(cal.a, cal.beta, cal.p)
    if cal.beta > 0.5:
        return boundary_regime2(cal.a, cal.beta, cal.p)
    return regime2_rate(cal.beta, cal.p)


def boundary_at(p: int, n: int, s: int, side: Union[Side, str] = Side.ONE,
                regime: Union[Regime, str] = Regime.THREE_LOG) -> Tuple[Calibration, BoundaryValue]:
    """Effective (a, β) of concrete dimensions and the boundary there."""
    regime = Regime.parse(regime)
    cal = calibration_from_dims(p, n, s, regime)
    return cal, _boundary_for(regime, Side.parse(side), cal)


class PhaseSweepEngine:
    """
    Resolves each (n|a, s|β) cell, then runs estimate_errors for every multiplier.
    All multipliers of a cell share one seed so their trials are paired.
    """

    def __init__(self, plan: PhasePlan, workers: Optional[int] = None, show_progress: bool = False):
        self.plan = plan
        self.workers = workers
        self.show_progress = show_progress
        self.points: List[PhasePoint] = []

    def _n_axis(self) -> List[Tuple[int, bool, Optional[float]]]:
        plan = self.plan
        if plan.n_values:
            return [(int(n), False, None) for n in plan.n_values]
        axis = []
        for a in plan.a_values:
            dims = dims_from_calibration(Calibration(plan.regime, float(a), 1.0, plan.p))
            n = min(dims.n, plan.n_max)
            axis.append((n, dims.saturated or dims.n > plan.n_max, float(a)))
        return axis

    def _s_axis(self) -> List[Tuple[int, Optional[float]]]:
        plan = self.plan
        if plan.s_values:
            return [(int(s), None) for s in plan.s_values]
        return [(max(1, int(round(plan.p ** (1.0 - float(b))))), float(b)) for b in plan.beta_values]

    def resolve_cells(self) -> List[_Cell]:
        """Map the plan onto concrete cells, reporting every out-of-domain cell at once."""
        plan = self.plan
        cells, problems = [], []
        if plan.is_empty():
            return cells
        index = 0
        for n, saturated, a_target in self._n_axis():
            for s, beta_target in self._s_axis():
                label = f"cell(n={n}, s={s})"
                try:
                    cal, boundary = boundary_at(plan.p, n, s, plan.side, plan.regime)
                    t_star = int(round(plan.t_star_fraction * n))
                    if not 1 <= t_star <= n - 1:
                        raise InputError("split outside sequence")
                except InputError as exc:
                    problems.append(f"{label}: {exc}")
                    continue
                cells.append(_Cell(index, n, s, cal, boundary, saturated, a_target, beta_target))
                index += 1
        if problems:
            raise InputError("sweep cells outside calculator domains:\n" + "\n".join(problems))
        return cells

    def run(self):
        plan = self.plan
        cells = self.resolve_cells()
        print(f"🚀 Starting phase sweep: {len(cells)} cells x {len(plan.multipliers)} multipliers", file=sys.stderr)
        for i, cell in enumerate(cells):
            seed = child_seed(plan.seed, cell.index)
            t_star = int(round(plan.t_star_fraction * cell.n))
            print(f"  - Cell [{i + 1}/{len(cells)}] a={cell.calibration.a:.4f} "
                  f"beta={cell.calibration.beta:.4f} ({cell.boundary.case_label.value})", file=sys.stderr)
            if cell.saturated:
                print(f"    ⚠️  n saturated at {cell.n}", file=sys.stderr)
            for m in plan.multipliers:
                rho = float(m) * cell.boundary.rho
                signs = None
                if plan.side is Side.TWO:
                    signs = tuple(1 if j % 2 == 0 else -1 for j in range(cell.s))
                h1 = AlternativeSpec(p=plan.p, n=cell.n, t_star=t_star, support=tuple(range(cell.s)),
                                     rho=rho, side=plan.side, sign_pattern=signs)
                config = ErrorConfig(h0=NullScenario(plan.p, cell.n), h1=h1, test=plan.test,
                                     trials=plan.trials, seed=seed, side=plan.side,
                                     gamma=plan.gamma, delta=plan.delta)
                report = estimate_errors(config, workers=self.workers, show_progress=self.show_progress)
                self.points.append(PhasePoint(
                    a=cell.calibration.a, beta=cell.calibration.beta, multiplier=float(m),
                    p=plan.p, n=cell.n, s=cell.s, rho=rho,
                    type1=report.type1_hat, type1_lo=report.type1_ci[0], type1_hi=report.type1_ci[1],
                    type2=report.type2_hat, type2_lo=report.type2_ci[0], type2_hi=report.type2_ci[1],
                    risk=report.risk, saturated_flag=cell.saturated,
                    case_label=cell.boundary.case_label.value,
                    a_target=cell.a_target, beta_target=cell.beta_target, seed=seed,
                ))
                logger.debug("cell %d m=%s risk=%.3f", cell.index, m, report.risk)
        print(f"✅ Sweep complete. {len(self.points)} phase points.", file=sys.stderr)

    def get_results(self) -> List[PhasePoint]:
        return list(self.points)


def phase_sweep(plan: PhasePlan, workers: Optional[int] = None,
                show_progress: bool = False) -> List[PhasePoint]:
    engine = PhaseSweepEngine(plan, workers=workers, show_progress=show_progress)
    engine.run()
    return engine.get_results()


def points_to_frame(points: Sequence[PhasePoint]) -> pd.DataFrame:
    """CSV-ordered table; header-only when there are no points."""
    if not points:
        return pd.DataFrame(columns=CSV_COLUMNS)
    frame = pd.DataFrame([pt.to_dict() for pt in points])
    return frame[CSV_COLUMNS]


def isotonic_violations(risks: Sequence[float], widths: Sequence[float]) -> List[int]:
    """Indices where risk rises above the running minimum by more than two interval widths."""
    bad = []
    best = math.inf
    for i, (risk, width) in enumerate(zip(risks, widths)):
        if risk > best + 2.0 * width:
            bad.append(i)
        best = min(best, risk)
    return bad
