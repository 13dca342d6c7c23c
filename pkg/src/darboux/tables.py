"""CSV and JSON emission with deterministic formatting."""

from __future__ import annotations

import csv
import io
import json
import math
from fractions import Fraction
from pathlib import Path
from typing import Iterable, Sequence, TextIO


def _cell(v):
    if isinstance(v, bool):
        return str(int(v))
    if isinstance(v, (int,)):
        return str(v)
    if isinstance(v, Fraction):
        v = float(v)
    if isinstance(v, float):
        return repr(v)
    if hasattr(v, "dtype"):
        return _cell(v.item())
    return str(v)


def format_csv(header: Sequence[str], rows: Iterable[Sequence]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for r in rows:
        w.writerow([_cell(v) for v in r])
    return buf.getvalue()


def _parse_cell(s: str):
    for conv in (int, float):
        try:
            return conv(s)
        except ValueError:
            pass
    return s


def parse_csv(text: str):
    """(header, rows) with ints and floats restored."""
    rd = csv.reader(io.StringIO(text))
    header = next(rd)
    return header, [tuple(_parse_cell(c) for c in r) for r in rd]


def _jsonable(v):
    if isinstance(v, Fraction):
        return float(v)
    if isinstance(v, complex):
        return {"re": v.real, "im": v.imag}
    if isinstance(v, float) and not math.isfinite(v):
        return None
    if hasattr(v, "item"):
        return _jsonable(v.item())
    if isinstance(v, dict):
        return {k: _jsonable(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    return v


def format_json(obj) -> str:
    return json.dumps(_jsonable(obj), indent=2, sort_keys=True, allow_nan=False) + "\n"


def table_json(header: Sequence[str], rows: Iterable[Sequence]) -> str:
    return format_json({"columns": list(header), "rows": [list(r) for r in rows]})


def emit(text: str, out=None, stream: TextIO = None):
    """Write to a path (LF endings) or to the given stream."""
    if out is None:
        stream.write(text)
        return
    Path(out).write_text(text, encoding="utf-8", newline="\n")
