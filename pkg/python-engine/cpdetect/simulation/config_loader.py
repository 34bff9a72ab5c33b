"""
YAML run configs for `simulate` and `sweep`.

Every problem in a file is collected and raised together as one ConfigError,
so a user fixes all offending keys in one pass.
"""

import logging
from pathlib import Path
from typing import Any, Dict, List, Optional, Union

import yaml

from ..boundaries import interpolate_beta_bar
from ..config import Config
from ..contrasts import Side
from ..errors import ConfigError, InputError
from ..grids import AUTO, build_lower_grid, build_upper_grid
from .harness import ErrorConfig, TestKind
from .scenarios import (
    AlternativeSpec,
    EvenSpread,
    MixtureScenario,
    NullScenario,
    SingleRow,
    SparseMixture,
    sparse_mixture_from_beta,
)
from .sweep import PhasePlan, boundary_at

logger = logging.getLogger(__name__)

SUPPORTED_SCHEMA = 1

_COMMON_KEYS = {"schema_version", "kind", "description", "seed", "trials", "workers",
                "test", "side", "gamma", "delta"}
_SIMULATE_KEYS = _COMMON_KEYS | {"h0", "h1", "lrt_prior"}
_SWEEP_KEYS = _COMMON_KEYS | {"p", "regime", "n_values", "a_values", "s_values", "beta_values",
                              "multipliers", "n_max", "t_star_fraction"}
_SCENARIO_KEYS = {
    "null": {"model", "p", "n", "base_means"},
    "alternative": {"model", "p", "n", "t_star", "s", "support", "rho", "boundary_multiple", "side", "sign_pattern",
                    "base_means"},
    "sparse_mixture": {"model", "p", "n", "rho", "side", "epsilon", "beta_bar", "beta1", "beta",
                       "grid", "base", "delta"},
    "single_row": {"model", "p", "n", "rho", "grid", "base", "delta"},
    "even_spread": {"model", "p", "n", "s", "rho", "grid", "base", "delta"},
}


class _Section:
    """Typed access to one mapping, recording problems instead of raising."""

    def __init__(self, data: Dict[str, Any], where: str, problems: List[str]):
        self.data = data
        self.where = where
        self.problems = problems

    def check_keys(self, allowed):
        for key in sorted(set(self.data) - set(allowed)):
            self.problems.append(f"{self.where}{key}: unknown key")

    def get(self, key: str, kind, required: bool = False, default=None, check=None, message: str = ""):
        if key not in self.data or self.data[key] is None:
            if required:
                self.problems.append(f"{self.where}{key}: required")
            return default
        value = self.data[key]
        if kind is float and isinstance(value, int) and not isinstance(value, bool):
            value = float(value)
        if not isinstance(value, kind) or isinstance(value, bool) and kind is not bool:
            self.problems.append(f"{self.where}{key}: expected {getattr(kind, '__name__', kind)}")
            return default
        if check is not None and not check(value):
            self.problems.append(f"{self.where}{key}: {message or 'out of range'}")
            return default
        return value

    def number_list(self, key: str, kind, required: bool = False, check=None, message: str = ""):
        raw = self.data.get(key)
        if raw is None:
            if required:
                self.problems.append(f"{self.where}{key}: required")
            return ()
        if not isinstance(raw, list):
            self.problems.append(f"{self.where}{key}: expected list")
            return ()
        values = []
        for i, item in enumerate(raw):
            if kind is float and isinstance(item, int) and not isinstance(item, bool):
                item = float(item)
            if not isinstance(item, kind) or isinstance(item, bool):
                self.problems.append(f"{self.where}{key}[{i}]: expected {kind.__name__}")
            elif check is not None and not check(item):
                self.problems.append(f"{self.where}{key}[{i}]: {message or 'out of range'}")
            else:
                values.append(item)
        return tuple(values)

    def delta(self, key: str = "delta"):
        raw = self.data.get(key, AUTO)
        if raw == AUTO:
            return AUTO
        if isinstance(raw, (int, float)) and not isinstance(raw, bool) and raw > 0:
            return float(raw)
        self.problems.append(f"{self.where}{key}: expected 'auto' or a positive number")
        return AUTO

    def choice(self, key: str, parser, default):
        raw = self.data.get(key)
        if raw is None:
            return parser(default)
        try:
            return parser(raw)
        except InputError as exc:
            self.problems.append(f"{self.where}{key}: {exc}")
            return parser(default)


def _positive(v) -> bool:
    return v > 0


class SimulationConfigLoader:
    """YAML 실행 설정 파일을 로드하고 스키마를 검증합니다."""

    def __init__(self, source: Union[str, Path]):
        self.path = self.resolve(source)
        self.raw = self._load_from_yaml(self.path)
        self.problems: List[str] = []
        self.kind: str = ""
        self.workers: Optional[int] = None
        self.config: Union[ErrorConfig, PhasePlan, None] = None
        self._validate()
        if self.problems:
            raise ConfigError(str(self.path), self.problems)
        logger.debug("loaded %s config from %s", self.kind, self.path)

    @staticmethod
    def resolve(source: Union[str, Path]) -> Path:
        """파일 경로 또는 presets/ 아래의 preset 이름을 실제 경로로 변환합니다."""
        path = Path(source)
        if path.exists():
            return path
        for candidate in (Config.PRESETS_DIR / f"{source}.yaml", Config.PRESETS_DIR / str(source)):
            if candidate.exists():
                return candidate
        raise InputError(f"config file not found: {source}")

    @staticmethod
    def _load_from_yaml(path: Path) -> Dict[str, Any]:
        """YAML 파일에서 설정을 로드합니다."""
        try:
            with open(path, "r", encoding="utf-8") as f:
                data = yaml.safe_load(f)
        except yaml.YAMLError as e:
            raise ConfigError(str(path), [f"YAML parse failure: {e}"]) from None
        if not isinstance(data, dict):
            raise ConfigError(str(path), ["top level must be a mapping"])
        return data

    def _validate(self):
        top = _Section(self.raw, "", self.problems)
        version = top.get("schema_version", int, required=True)
        if version is not None and version != SUPPORTED_SCHEMA:
            self.problems.append(f"schema_version: unsupported version {version} (expected {SUPPORTED_SCHEMA})")
        self.kind = top.get("kind", str, required=True, default="",
                            check=lambda v: v in ("simulate", "sweep"), message="expected simulate|sweep")
        if self.kind == "simulate":
            top.check_keys(_SIMULATE_KEYS)
            self.config = self._build_simulate(top)
        elif self.kind == "sweep":
            top.check_keys(_SWEEP_KEYS)
            self.config = self._build_sweep(top)
        self.workers = top.get("workers", int, check=_positive, message="must be positive")

    def _common(self, top: _Section) -> Dict[str, Any]:
        return {
            "seed": top.get("seed", int, default=Config.DEFAULT_SEED,
                            check=lambda v: 0 <= v < 2 ** 64, message="must be an unsigned 64-bit integer"),
            "trials": top.get("trials", int, default=Config.DEFAULT_TRIALS, check=_positive,
                              message="must be at least 1"),
            "test": top.choice("test", TestKind.parse, "combined"),
            "side": top.choice("side", Side.parse, "one"),
            "gamma": top.get("gamma", float, default=Config.DEFAULT_GAMMA, check=_positive,
                             message="penalty exponent must be positive"),
            "delta": top.delta(),
        }

    def _scenario(self, data: Any, where: str, default_side: Side):
        if not isinstance(data, dict):
            self.problems.append(f"{where.rstrip('.')}: expected mapping")
            return None
        if "model" in data and data["model"] is None:
            # YAML reads a bare `null` as None
            data = {**data, "model": "null"}
        sec = _Section(data, where, self.problems)
        model = sec.get("model", str, required=True, check=lambda v: v in _SCENARIO_KEYS,
                        message=f"expected one of {sorted(_SCENARIO_KEYS)}")
        if model is None:
            return None
        sec.check_keys(_SCENARIO_KEYS[model])
        p = sec.get("p", int, required=True, check=_positive, message="must be positive")
        n = sec.get("n", int, required=True, check=lambda v: v >= 2, message="must be at least 2")
        before = len(self.problems)

        if model == "null":
            base_means = sec.number_list("base_means", float) or None
            if len(self.problems) > before or p is None or n is None:
                return None
            return self._guard(lambda: NullScenario(p, n, base_means), where)

        side = sec.choice("side", Side.parse, default_side.value)

        if model == "alternative":
            # rho directly, or as a multiple of the detection boundary at (p, n, s)
            if "rho" in data and "boundary_multiple" in data:
                self.problems.append(f"{where}boundary_multiple: give rho or boundary_multiple, not both")
            elif "boundary_multiple" not in data and data.get("rho") is None:
                self.problems.append(f"{where}rho: required (or boundary_multiple)")
            rho = sec.get("rho", float, check=lambda v: v >= 0, message="must be non-negative")
            multiple = sec.get("boundary_multiple", float, check=lambda v: v >= 0,
                               message="must be non-negative")
            t_star = sec.get("t_star", int, required=True)
            support = sec.number_list("support", int)
            s = sec.get("s", int, check=lambda v: v >= 0, message="must be non-negative")
            if not support and s is None:
                self.problems.append(f"{where}s: required when support is absent")
            signs = data.get("sign_pattern")
            base_means = sec.number_list("base_means", float) or None
            if len(self.problems) > before or p is None or n is None:
                return None
            rows = support or tuple(range(s))
            if multiple is not None:
                unit = self._guard(lambda: boundary_at(p, n, len(rows), side)[1].rho, where)
                if unit is None:
                    return None
                rho = multiple * unit
                logger.info("%s rho = %g x boundary %.4f = %.4f", where.rstrip("."), multiple, unit, rho)
            if signs == "alternating":
                signs = tuple(1 if i % 2 == 0 else -1 for i in range(len(rows)))
            return self._guard(lambda: AlternativeSpec(p=p, n=n, t_star=t_star, support=rows, rho=rho,
                                                       side=side, sign_pattern=signs,
                                                       base_means=base_means), where)

        rho = sec.get("rho", float, required=True, check=lambda v: v >= 0, message="must be non-negative")

        grid_kind = sec.get("grid", str, default="lower", check=lambda v: v in ("lower", "upper"),
                            message="expected lower|upper")
        base = data.get("base", AUTO)
        delta = sec.delta()
        if len(self.problems) > before or p is None or n is None:
            return None
        grid = self._guard(lambda: build_lower_grid(n, base) if grid_kind == "lower"
                           else build_upper_grid(n, delta), where)
        if grid is None:
            return None

        if model == "sparse_mixture":
            epsilon = sec.get("epsilon", float, check=lambda v: 0 <= v <= 1, message="must lie in [0, 1]")
            beta_bar = sec.get("beta_bar", float, check=_positive, message="must be positive")
            beta1 = sec.get("beta1", float)
            beta = sec.get("beta", float)
            if beta_bar is None and beta1 is not None and beta is not None:
                beta_bar = self._guard(lambda: interpolate_beta_bar(beta1, beta), where)
            if (epsilon is None) == (beta_bar is None):
                self.problems.append(f"{where}epsilon: give exactly one of epsilon, beta_bar, or beta1+beta")
                return None
            if epsilon is not None:
                prior = SparseMixture(epsilon=epsilon, rho=rho, grid=grid, side=side)
            else:
                prior = sparse_mixture_from_beta(p, beta_bar, rho, grid, side)
        elif model == "single_row":
            prior = SingleRow(rho=rho, grid=grid)
        else:
            s = sec.get("s", int, required=True, check=_positive, message="must be positive")
            if s is None:
                return None
            prior = self._guard(lambda: EvenSpread(s=s, rho=rho, grid=grid), where)
            if prior is None:
                return None
        return self._guard(lambda: MixtureScenario(p, n, prior), where)

    def _guard(self, build, where: str):
        try:
            return build()
        except InputError as exc:
            self.problems.append(f"{where.rstrip('.')}: {exc}")
            return None

    def _build_simulate(self, top: _Section) -> Optional[ErrorConfig]:
        common = self._common(top)
        h0 = self._scenario(self.raw.get("h0"), "h0.", common["side"])
        h1 = self._scenario(self.raw.get("h1"), "h1.", common["side"])
        lrt_prior = None
        if "lrt_prior" in self.raw:
            scenario = self._scenario(self.raw["lrt_prior"], "lrt_prior.", common["side"])
            lrt_prior = scenario.prior if isinstance(scenario, MixtureScenario) else None
        if self.problems or h0 is None or h1 is None:
            return None
        return self._guard(lambda: ErrorConfig(h0=h0, h1=h1, lrt_prior=lrt_prior, **common), "config")

    def _build_sweep(self, top: _Section) -> Optional[PhasePlan]:
        common = self._common(top)
        p = top.get("p", int, required=True, check=lambda v: v >= 2, message="must be at least 2")
        plan_kwargs = {
            "n_values": top.number_list("n_values", int, check=lambda v: v >= 16, message="must be at least 16"),
            "a_values": top.number_list("a_values", float, check=_positive, message="must be positive"),
            "s_values": top.number_list("s_values", int, check=_positive, message="must be positive"),
            "beta_values": top.number_list("beta_values", float, check=lambda v: 0 < v <= 1,
                                           message="must lie in (0, 1]"),
            "multipliers": top.number_list("multipliers", float, required=True,
                                           check=lambda v: v >= 0, message="must be non-negative"),
            "n_max": top.get("n_max", int, default=4096, check=lambda v: v >= 16, message="must be at least 16"),
            "t_star_fraction": top.get("t_star_fraction", float, default=0.35,
                                       check=lambda v: 0 < v < 1, message="must lie in (0, 1)"),
        }
        regime = top.get("regime", str, default="ThreeLog")
        if self.problems:
            return None
        return self._guard(lambda: PhasePlan(p=p, regime=regime, **plan_kwargs, **common), "config")
