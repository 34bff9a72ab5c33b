import json
import platform
import sys
import time
from datetime import datetime, timezone
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence

import numpy as np
import pandas as pd
import scipy

from .. import SCHEMA_VERSION, __version__

# 재현성 비교에서 무시되는 필드
VOLATILE_KEYS = ("timestamp", "execution")


def _jsonable(value):
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if isinstance(value, np.ndarray):
        return [_jsonable(v) for v in value.tolist()]
    if isinstance(value, np.generic):
        return value.item()
    if hasattr(value, "value") and not isinstance(value, (int, float, str, bool)):
        return value.value
    return value


class RunClock:
    """Wall-clock timer for run metadata."""

    def __init__(self):
        self.started = time.perf_counter()

    def elapsed(self) -> float:
        return time.perf_counter() - self.started


def run_metadata(seed: Optional[int], clock: RunClock, workers: Optional[int] = None) -> Dict[str, Any]:
    """seed와 버전 정보, 실행 시간을 담은 메타데이터 블록을 만듭니다."""
    return {
        "seed": seed,
        "versions": {
            "cpdetect": __version__,
            "python": platform.python_version(),
            "numpy": np.__version__,
            "scipy": scipy.__version__,
            "pandas": pd.__version__,
        },
        "timestamp": {
            "utc": datetime.now(timezone.utc).isoformat(timespec="seconds"),
            "wall_time_s": round(clock.elapsed(), 3),
        },
        "execution": {"workers": workers},
    }


class ReportGenerator:
    """분석 결과를 파일로 저장하고 요약 정보를 출력합니다."""

    def generate_json(self, payload: Dict[str, Any], output_path: Optional[str] = None):
        """결과를 JSON 파일로 저장합니다. 경로가 없으면 stdout 으로 출력합니다."""
        document = {"schema_version": SCHEMA_VERSION, **_jsonable(payload)}
        text = json.dumps(document, indent=2, ensure_ascii=False)
        if not output_path:
            sys.stdout.write(text + "\n")
            return
        Path(output_path).parent.mkdir(parents=True, exist_ok=True)
        with open(output_path, "w", encoding="utf-8") as f:
            f.write(text + "\n")
        print(f"📄 Report saved to: {output_path}", file=sys.stderr)

    def generate_csv(self, frame: pd.DataFrame, output_path: Optional[str] = None,
                     metadata: Optional[Dict[str, Any]] = None):
        """표 형식 결과를 CSV 로 저장합니다. 메타데이터는 <out>.meta.json 에 따로 기록합니다."""
        if not output_path:
            frame.to_csv(sys.stdout, index=False, float_format="%.17g")
            return
        Path(output_path).parent.mkdir(parents=True, exist_ok=True)
        frame.to_csv(output_path, index=False, float_format="%.17g")
        print(f"📄 Table saved to: {output_path} ({len(frame)} rows)", file=sys.stderr)
        if metadata is not None:
            self.generate_json({"run": metadata}, f"{output_path}.meta.json")

    def print_detection_summary(self, report: Dict[str, Any]):
        """detect 결과 요약을 출력합니다."""
        pbj, mx = report["pbj"], report["max"]
        print("\n" + "=" * 50, file=sys.stderr)
        print("📊 DETECTION SUMMARY", file=sys.stderr)
        print("=" * 50, file=sys.stderr)
        print(f"Matrix:             {report['p']} x {report['n']} (grid {report['grid_size']})", file=sys.stderr)
        print(f"PBJ penalized:      {pbj['penalized']:.4f} vs {pbj['threshold']:.4f}"
              f" -> {'REJECT' if pbj['reject'] else 'accept'}", file=sys.stderr)
        print(f"Max contrast:       {mx['statistic']:.4f} vs {mx['threshold']:.4f}"
              f" -> {'REJECT' if mx['reject'] else 'accept'}", file=sys.stderr)
        print(f"Combined decision:  {'CHANGE DETECTED' if report['combined_reject'] else 'no change'}",
              file=sys.stderr)
        print("=" * 50, file=sys.stderr)

    def print_error_summary(self, report: Dict[str, Any]):
        """Monte Carlo 오류율 요약을 출력합니다."""
        lo1, hi1 = report["type1_ci"]
        lo2, hi2 = report["type2_ci"]
        print("\n" + "=" * 50, file=sys.stderr)
        print("📊 MONTE CARLO SUMMARY", file=sys.stderr)
        print("=" * 50, file=sys.stderr)
        print(f"Trials:       {report['trials']} (seed {report['seed']})", file=sys.stderr)
        print(f"Type I:       {report['type1_hat']:.4f}  [{lo1:.4f}, {hi1:.4f}]", file=sys.stderr)
        print(f"Type II:      {report['type2_hat']:.4f}  [{lo2:.4f}, {hi2:.4f}]", file=sys.stderr)
        print(f"Risk:         {report['risk']:.4f}", file=sys.stderr)
        print("=" * 50, file=sys.stderr)

    def print_sweep_summary(self, rows: Sequence[Dict[str, Any]]):
        """셀별 위험도 상위 목록을 출력합니다."""
        print("\n" + "=" * 50, file=sys.stderr)
        print("📊 PHASE SWEEP SUMMARY", file=sys.stderr)
        print("=" * 50, file=sys.stderr)
        print(f"Phase points: {len(rows)}", file=sys.stderr)
        saturated = sum(1 for r in rows if r.get("saturated_flag"))
        if saturated:
            print(f"Saturated:    {saturated}", file=sys.stderr)
        cells: Dict[tuple, List[Dict[str, Any]]] = {}
        for row in rows:
            cells.setdefault((row["a"], row["beta"]), []).append(row)
        for (a, beta), items in cells.items():
            risks = ", ".join(f"m={r['multiplier']:g}:{r['risk']:.2f}" for r in items)
            print(f"  - a={a:.3f} beta={beta:.3f}  {risks}", file=sys.stderr)
        print("=" * 50, file=sys.stderr)
