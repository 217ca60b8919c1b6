"""Deterministic JSON/CSV report emission: stable key order, floats at 12
significant digits, no timestamps."""
from __future__ import annotations

import csv
import io
import json
import math

SCHEMA_VERSION = 1


def _normalize(obj):
    if isinstance(obj, float):
        if math.isinf(obj):
            return "inf" if obj > 0 else "-inf"
        if math.isnan(obj):
            return "nan"
        return float(f"{obj:.12g}")
    if isinstance(obj, dict):
        return {str(k): _normalize(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_normalize(x) for x in obj]
    if hasattr(obj, "item") and not isinstance(obj, (str, bytes)):  # numpy scalars
        try:
            return _normalize(obj.item())
        except (AttributeError, ValueError):
            pass
    if hasattr(obj, "tolist"):
        return _normalize(obj.tolist())
    return obj


def make_report(command: str, invariant: str, params: dict, result: dict) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "command": command,
        "invariant": invariant,
        "params": _normalize(params),
        "result": _normalize(result),
    }


def render_json(report: dict) -> str:
    return json.dumps(_normalize(report), indent=2, sort_keys=True) + "\n"


def _flatten(prefix, obj, row):
    if isinstance(obj, dict):
        for k in sorted(obj):
            _flatten(f"{prefix}.{k}" if prefix else str(k), obj[k], row)
    elif isinstance(obj, list):
        row[prefix] = json.dumps(obj)
    else:
        row[prefix] = obj


def render_csv(report: dict) -> str:
    """One row per entry of result['rows'] when present, else a single row."""
    norm = _normalize(report)
    rows = norm["result"].get("rows") if isinstance(norm.get("result"), dict) else None
    if rows is None:
        rows = [norm["result"]]
    flat_rows = []
    for r in rows:
        row = {}
        _flatten("", r, row)
        flat_rows.append(row)
    fields = sorted({k for r in flat_rows for k in r})
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=fields, lineterminator="\n")
    writer.writeheader()
    for r in flat_rows:
        writer.writerow(r)
    return buf.getvalue()


def emit(report: dict, out_path=None, fmt: str = "json") -> str:
    text = render_csv(report) if fmt == "csv" else render_json(report)
    if out_path:
        with open(out_path, "w") as fh:
            fh.write(text)
    return text
