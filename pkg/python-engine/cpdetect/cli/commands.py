"""
Subcommand bodies. Each returns the report it wrote; exit codes are decided in main.py.
"""

import dataclasses
import logging
import sys
from typing import Any, Dict, Optional, Union

import numpy as np
import pandas as pd

from ..boundaries import (
    boundary_one_sided,
    boundary_regime2,
    boundary_two_sided,
    idj_mu_star,
    r2_star,
    reference_rates,
)
from ..config import Config
from ..contrasts import Side, contrast_matrix, mean_contrast
from ..detectors import combined_decision
from ..errors import InputError
from ..grids import AUTO, resolve_scan_grid
from ..reporting import ReportGenerator, RunClock, read_matrix_csv, run_metadata, write_matrix_csv
from ..simulation import (
    AlternativeSpec,
    ErrorConfig,
    PhasePlan,
    PhaseSweepEngine,
    SimulationConfigLoader,
    alternative_mean,
    estimate_errors,
    generate_alternative,
    generate_null,
    points_to_frame,
    substream,
)

logger = logging.getLogger(__name__)


def parse_delta(value: Union[str, float, None]) -> Union[str, float]:
    if value is None or str(value).strip().lower() == AUTO:
        return AUTO
    try:
        delta = float(value)
    except ValueError:
        raise InputError(f"--delta expects 'auto' or a positive number, got '{value}'") from None
    if not delta > 0:
        raise InputError("delta must be positive")
    return delta


def cmd_detect(matrix_csv_path: str, side: Union[Side, str] = Side.ONE,
               gamma: float = Config.DEFAULT_GAMMA, delta: Union[str, float] = AUTO,
               out: Optional[str] = None, quiet: bool = False) -> Dict[str, Any]:
    """ψ_PBJ ∨ ψ_max on a CSV matrix."""
    clock = RunClock()
    side = Side.parse(side)
    delta = parse_delta(delta)
    if not quiet:
        print(f"📂 Loading observation matrix from: {matrix_csv_path}", file=sys.stderr)
    X = read_matrix_csv(matrix_csv_path)
    grid = resolve_scan_grid(X.n, delta)
    if not quiet:
        print(f"  - Loaded {X.p} x {X.n} matrix, scanning {len(grid)} candidate splits.", file=sys.stderr)

    decision = combined_decision(contrast_matrix(X, grid), side, gamma)
    pbj, mx = decision.components["pbj"], decision.components["max"]
    scan = pbj.scan
    flags = list(decision.flags)
    if grid.fallback:
        flags.append(f"grid_fallback:{grid.fallback}")
    report = {
        "command": "detect",
        "input": str(matrix_csv_path),
        "p": X.p,
        "n": X.n,
        "grid_size": len(grid),
        "side": side.value,
        "gamma": gamma,
        "delta": grid.delta if grid.delta is not None else delta,
        "pbj": {
            "statistic": scan.statistic,
            "penalized": scan.penalized,
            "threshold": pbj.threshold,
            "reject": pbj.reject,
            "argmax_t": scan.argmax_t,
            "argmax_j": scan.argmax_order_index,
        },
        "max": mx.to_dict(),
        "combined_reject": decision.reject,
        "flags": flags,
        "run": run_metadata(None, clock),
    }
    reporter = ReportGenerator()
    reporter.generate_json(report, out)
    if not quiet:
        reporter.print_detection_summary(report)
    return report


def cmd_boundary(a: Optional[float], beta: float, p: float, side: Union[Side, str] = Side.ONE,
                 regime2: bool = False, n: Optional[float] = None, s: Optional[float] = None,
                 out: Optional[str] = None) -> Dict[str, Any]:
    """Boundary calculators; reference rates are added when n and s are given."""
    if a is None:
        raise InputError("--a is required")
    side = Side.parse(side)
    report: Dict[str, Any] = {"command": "boundary", "a": a, "beta": beta, "p": p}
    if regime2:
        value = boundary_regime2(a, beta, p)
        report.update({"regime": "TwoLog", "r": r2_star(a, beta)})
    else:
        value = boundary_one_sided(a, beta, p) if side is Side.ONE else boundary_two_sided(a, beta, p)
        report.update({"regime": "ThreeLog", "side": side.value})
    report.update(value.to_dict())
    if 0.0 < beta < 1.0:
        report["idj_mu_star"] = idj_mu_star(beta, p)
    if n is not None and s is not None:
        report["reference_rates"] = reference_rates(p, n, s).to_dict()
    ReportGenerator().generate_json(report, out)
    return report


def _apply_overrides(config, seed: Optional[int], trials: Optional[int]):
    changes = {}
    if seed is not None:
        changes["seed"] = int(seed)
    if trials is not None:
        changes["trials"] = int(trials)
    return dataclasses.replace(config, **changes) if changes else config


def cmd_simulate(config_path: str, out: Optional[str] = None, fmt: str = "json",
                 seed: Optional[int] = None, trials: Optional[int] = None,
                 workers: Optional[int] = None, verbose: bool = False) -> Dict[str, Any]:
    """Monte Carlo Type I/II estimate for a simulate config."""
    clock = RunClock()
    print(f"📚 Loading run config from: {config_path}", file=sys.stderr)
    loader = SimulationConfigLoader(config_path)
    if loader.kind != "simulate":
        raise InputError(f"{loader.path} is a '{loader.kind}' config; use the sweep command")
    config: ErrorConfig = _apply_overrides(loader.config, seed, trials)
    n_jobs = Config.workers(workers if workers is not None else loader.workers)
    print(f"🚀 Running {config.trials} paired trials ({config.test.value}, p={config.p}, n={config.n})",
          file=sys.stderr)
    report = estimate_errors(config, workers=n_jobs, show_progress=verbose)
    payload = {"command": "simulate", "config_file": str(loader.path), **report.to_dict(),
               "run": run_metadata(config.seed, clock, n_jobs)}

    reporter = ReportGenerator()
    if fmt == "csv":
        row = {k: v for k, v in report.to_dict().items() if not isinstance(v, (dict, list))}
        row.update({"type1_lo": report.type1_ci[0], "type1_hi": report.type1_ci[1],
                    "type2_lo": report.type2_ci[0], "type2_hi": report.type2_ci[1]})
        reporter.generate_csv(pd.DataFrame([row]), out, metadata=payload["run"])
    else:
        reporter.generate_json(payload, out)
    reporter.print_error_summary(payload)
    return payload


def cmd_sweep(config_path: str, out: Optional[str] = None, fmt: str = "csv",
              seed: Optional[int] = None, trials: Optional[int] = None,
              workers: Optional[int] = None, verbose: bool = False) -> Dict[str, Any]:
    """Phase sweep; CSV by default, one row per (cell, multiplier)."""
    clock = RunClock()
    print(f"📚 Loading sweep plan from: {config_path}", file=sys.stderr)
    loader = SimulationConfigLoader(config_path)
    if loader.kind != "sweep":
        raise InputError(f"{loader.path} is a '{loader.kind}' config; use the simulate command")
    plan: PhasePlan = _apply_overrides(loader.config, seed, trials)
    n_jobs = Config.workers(workers if workers is not None else loader.workers)

    engine = PhaseSweepEngine(plan, workers=n_jobs, show_progress=verbose)
    engine.run()
    points = engine.get_results()
    rows = [pt.to_dict() for pt in points]
    payload = {"command": "sweep", "config_file": str(loader.path), "points": rows,
               "run": run_metadata(plan.seed, clock, n_jobs)}

    reporter = ReportGenerator()
    if fmt == "json":
        reporter.generate_json(payload, out)
    else:
        reporter.generate_csv(points_to_frame(points), out, metadata=payload["run"])
    reporter.print_sweep_summary(rows)
    return payload


def cmd_generate(p: int, n: int, out: str, seed: int = Config.DEFAULT_SEED,
                 t_star: Optional[int] = None, s: int = 0, rho: float = 0.0,
                 side: Union[Side, str] = Side.ONE) -> Dict[str, Any]:
    """Seeded fixture: null matrix, or a planted change on the first s rows at t_star."""
    side = Side.parse(side)
    rng = substream(seed, 0, 0)
    preview = None
    if s > 0 and rho > 0:
        if t_star is None:
            t_star = int(round(0.35 * n))
        signs = None
        if side is Side.TWO:
            signs = tuple(1 if j % 2 == 0 else -1 for j in range(s))
        spec = AlternativeSpec(p=p, n=n, t_star=t_star, support=tuple(range(s)), rho=rho,
                               side=side, sign_pattern=signs)
        X = generate_alternative(spec, rng)
        scenario = spec.describe()
        preview = signal_preview(spec)
    else:
        X = generate_null(p, n, None, rng)
        scenario = {"model": "null", "p": p, "n": n}
    write_matrix_csv(X, out)
    print(f"📄 Matrix saved to: {out} ({p} x {n}, seed {seed})", file=sys.stderr)
    if preview is not None:
        print(f"  - Strongest noiseless contrast on the scan grid: {preview['max_mean_contrast']:.4f} "
              f"(rho={rho:g}, split {preview['best_split']})", file=sys.stderr)
    return {"command": "generate", "output": out, "seed": seed, "scenario": scenario, "preview": preview}


def signal_preview(spec: AlternativeSpec, delta: Union[str, float] = AUTO) -> Dict[str, Any]:
    """What the detect scan grid sees of a planted change, before any noise is added."""
    grid = resolve_scan_grid(spec.n, delta)
    seen = np.abs(mean_contrast(alternative_mean(spec), grid))
    best = int(np.argmax(seen.max(axis=0)))
    return {
        "grid_size": len(grid),
        "delta": grid.delta,
        "max_mean_contrast": float(seen[:, best].max()),
        "best_split": int(grid.points[best]),
    }
