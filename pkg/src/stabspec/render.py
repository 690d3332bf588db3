"""Locale-independent number rendering for CSV/JSON output."""
from __future__ import annotations

import json
from typing import Any, Iterable, Sequence

from . import __version__


def fmt(value: float) -> str:
    """17 significant digits, lowercase scientific notation."""
    return format(float(value), ".16e")


def csv_table(header: Sequence[str], rows: Iterable[Sequence[Any]]) -> str:
    lines = [",".join(header)]
    for row in rows:
        lines.append(",".join(fmt(v) if isinstance(v, float) else str(v) for v in row))
    return "\n".join(lines) + "\n"


def json_document(meta: dict[str, Any], data: list[dict[str, Any]]) -> str:
    doc = {"meta": {**meta, "version": __version__}, "data": data}
    return json.dumps(doc, indent=2, sort_keys=False) + "\n"
