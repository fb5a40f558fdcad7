"""Structured reports and the single text formatter derived from them."""

from __future__ import annotations

import json
import math
from typing import Any, List

SCHEMA_VERSION = 1


def _clean(obj: Any) -> Any:
    if isinstance(obj, float):
        if math.isnan(obj):
            return "nan"
        if math.isinf(obj):
            return "inf" if obj > 0 else "-inf"
        return obj
    if isinstance(obj, dict):
        return {str(k): _clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_clean(v) for v in obj]
    return obj


def make_report(command: str, request: dict, result: dict) -> dict:
    return {"schema": SCHEMA_VERSION, "command": command, "request": request, "result": result}


def to_json(report: dict) -> str:
    """Deterministic JSON: sorted keys, fixed separators, trailing newline."""
    return json.dumps(_clean(report), sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def _lines(obj: Any, indent: int) -> List[str]:
    pad = "  " * indent
    out: List[str] = []
    if isinstance(obj, dict):
        for k in sorted(obj):
            v = obj[k]
            if isinstance(v, (dict, list)) and v:
                out.append(f"{pad}{k}:")
                out.extend(_lines(v, indent + 1))
            else:
                out.append(f"{pad}{k}: {_scalar(v)}")
    elif isinstance(obj, list):
        for v in obj:
            if isinstance(v, (dict, list)) and v:
                out.append(f"{pad}-")
                out.extend(_lines(v, indent + 1))
            else:
                out.append(f"{pad}- {_scalar(v)}")
    else:
        out.append(pad + _scalar(obj))
    return out


def _scalar(v: Any) -> str:
    if v is None:
        return "undefined"
    if isinstance(v, bool):
        return "yes" if v else "no"
    if isinstance(v, float):
        return f"{v:.12g}"
    if isinstance(v, (dict, list)):
        return "(none)"
    return str(v)


def to_text(report: dict) -> str:
    return "\n".join(_lines(_clean(report), 0)) + "\n"


def render(report: dict, fmt: str) -> str:
    return to_json(report) if fmt == "structured" else to_text(report)
