"""Observation matrix CSV: no header, row-major, comma separated, '.' decimal."""

import math
from pathlib import Path
from typing import Union

import numpy as np

from ..contrasts import ObservationMatrix
from ..errors import MatrixParseError


def read_matrix_csv(path: Union[str, Path]) -> ObservationMatrix:
    """Parse a p×n matrix, reporting the first bad cell by line and column."""
    try:
        with open(path, "r", encoding="utf-8") as f:
            lines = f.read().splitlines()
    except FileNotFoundError:
        raise MatrixParseError(f"matrix file not found: {path}") from None
    except UnicodeDecodeError:
        raise MatrixParseError(f"matrix file is not UTF-8 text: {path}") from None

    while lines and not lines[-1].strip():
        lines.pop()
    if not lines:
        raise MatrixParseError("empty matrix file")

    rows = []
    width = None
    for line_no, line in enumerate(lines, start=1):
        if not line.strip():
            raise MatrixParseError("empty line inside matrix", line=line_no)
        cells = line.split(",")
        if width is None:
            width = len(cells)
        elif len(cells) != width:
            raise MatrixParseError(f"ragged row: expected {width} columns, found {len(cells)}", line=line_no)
        row = []
        for col_no, cell in enumerate(cells, start=1):
            text = cell.strip()
            try:
                value = float(text)
            except ValueError:
                raise MatrixParseError(f"non-numeric cell '{text}'", line=line_no, column=col_no) from None
            if not math.isfinite(value):
                raise MatrixParseError(f"non-finite cell '{text}'", line=line_no, column=col_no)
            row.append(value)
        rows.append(row)

    if width < 2:
        raise MatrixParseError("matrix needs at least 2 columns", line=1)
    return ObservationMatrix(np.array(rows, dtype=float))


def write_matrix_csv(values, path: Union[str, Path]):
    """17 significant digits, so re-reading gives bit-identical floats."""
    arr = values.values if isinstance(values, ObservationMatrix) else np.asarray(values, dtype=float)
    np.savetxt(path, np.atleast_2d(arr), delimiter=",", fmt="%.17g")
