import argparse
import json
import math
import sys
from pathlib import Path
from typing import Any, List

import pandas as pd

# cpdetect 패키지를 찾을 수 있도록 경로 추가
sys.path.append(str(Path(__file__).parent.resolve() / "python-engine"))

from cpdetect.reporting import VOLATILE_KEYS


def _same_value(a: Any, b: Any) -> bool:
    if isinstance(a, float) and isinstance(b, float) and math.isnan(a) and math.isnan(b):
        return True
    return a == b


def _diff_documents(a: Any, b: Any, path: str, out: List[str]):
    """Recursive structural diff; volatile run metadata is skipped."""
    if isinstance(a, dict) and isinstance(b, dict):
        for key in sorted(set(a) | set(b)):
            if key in VOLATILE_KEYS:
                continue
            child = f"{path}.{key}" if path else str(key)
            if key not in a or key not in b:
                out.append(child)
            else:
                _diff_documents(a[key], b[key], child, out)
    elif isinstance(a, list) and isinstance(b, list):
        if len(a) != len(b):
            out.append(f"{path} (length {len(a)} != {len(b)})")
            return
        for i, (x, y) in enumerate(zip(a, b)):
            _diff_documents(x, y, f"{path}[{i}]", out)
    elif not _same_value(a, b):
        out.append(path or "<root>")


def _diff_tables(a: pd.DataFrame, b: pd.DataFrame) -> List[str]:
    if list(a.columns) != list(b.columns):
        return [f"columns {list(a.columns)} != {list(b.columns)}"]
    if len(a) != len(b):
        return [f"row count {len(a)} != {len(b)}"]
    out = []
    for i in range(len(a)):
        for col in a.columns:
            x, y = a.iloc[i][col], b.iloc[i][col]
            if not (_same_value(x, y) or (pd.isna(x) and pd.isna(y))):
                out.append(f"row {i}: {col}")
    return out


def load_artifact(path: Path):
    """JSON 리포트 또는 CSV 표를 읽어옵니다."""
    if not path.exists():
        print(f"❌ Error: File not found at '{path}'", file=sys.stderr)
        sys.exit(2)
    if path.suffix == ".csv":
        return pd.read_csv(path)
    with open(path, "r", encoding="utf-8") as f:
        return json.load(f)


def compare_files(first: Path, second: Path) -> List[str]:
    """Returns the paths where two run artifacts disagree (timestamps and worker counts ignored)."""
    a, b = load_artifact(Path(first)), load_artifact(Path(second))
    if isinstance(a, pd.DataFrame) != isinstance(b, pd.DataFrame):
        return ["<format>"]
    if isinstance(a, pd.DataFrame):
        return _diff_tables(a, b)
    out: List[str] = []
    _diff_documents(a, b, "", out)
    return out


def print_comparison(first: Path, second: Path, differences: List[str]):
    print("=" * 60)
    print("🚀 Run Artifact Comparison")
    print(f"  - FIRST  : '{first}'")
    print(f"  - SECOND : '{second}'")
    print("=" * 60)
    if not differences:
        print("\n🎉 Identical (ignoring volatile metadata).")
        return
    print(f"\n❌ DIFFERENCES ({len(differences)})\n" + "-" * 50)
    for item in differences:
        print(f"  - {item}")


if __name__ == "__main__":
    parser = argparse.ArgumentParser(
        description="Check that two simulate/sweep outputs are reproductions of each other.",
        formatter_class=argparse.RawTextHelpFormatter
    )
    parser.add_argument("first", type=Path, help="JSON report or CSV table (e.g., results/typeI-audit.json)")
    parser.add_argument("second", type=Path, help="The artifact to compare against")
    args = parser.parse_args()

    diffs = compare_files(args.first, args.second)
    print_comparison(args.first, args.second, diffs)
    sys.exit(0 if not diffs else 1)
