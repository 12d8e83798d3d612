"""Deterministic JSON and CSV rendering.

All numeric output is rounded to 9 significant digits before encoding and
keys are sorted, so repeated runs with the same inputs produce identical
bytes regardless of dict construction order or accumulated last-bit noise.
"""
import csv
import io
import json


def round9(x: float) -> float:
    """Round to 9 significant digits (idempotent)."""
    return float(f"{x:.9g}")


def canonical(obj):
    """Recursively round floats and normalize containers for encoding."""
    if isinstance(obj, bool) or obj is None or isinstance(obj, (int, str)):
        return obj
    if isinstance(obj, float):
        return round9(obj)
    if isinstance(obj, dict):
        return {str(key): canonical(val) for key, val in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [canonical(val) for val in obj]
    raise TypeError(f"cannot canonicalize {type(obj).__name__}")


def dumps(payload) -> str:
    return json.dumps(canonical(payload), sort_keys=True, indent=2) + "\n"


def csv_text(header, rows) -> str:
    """Render a header and iterable of row sequences as stable CSV."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([canonical(cell) if isinstance(cell, float) else cell
                         for cell in row])
    return buf.getvalue()
