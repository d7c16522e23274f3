"""CSV / JSON / text emitters for triangular cell tables.

All methods share one cell format: a map (n, m) -> value (or None for a
flagged cell).  Traversal order is fixed (n ascending, m ascending) so a
given input always produces byte-identical output.
"""

from __future__ import annotations

import json
from typing import Optional

from .numerics import HPComplex, PrecisionConfig, format_number
from .diagnostics import acc as acc_digits


def _cell_text(content: str, value: Optional[HPComplex], base: Optional[HPComplex],
               limit: Optional[HPComplex], cfg: PrecisionConfig,
               condition: Optional[HPComplex], digits: int) -> str:
    if value is None:
        return ""
    if content == "value":
        return format_number(value, digits)
    if content == "acc":
        return f"{acc_digits(value, limit, cfg):.1f}"
    if content == "ratio":
        if base is None:
            return ""
        num = abs(value - limit)
        den = abs(base - limit)
        if den == 0:
            return ""
        return f"{float(num / den):.6e}"
    if content == "condition":
        if condition is None:
            return ""
        return format_number(condition, 6)
    raise ValueError(f"unknown content {content!r}")


def table_csv(cells: dict, budget: int, max_m: int, p: int, content: str,
              limit: Optional[HPComplex], cfg: PrecisionConfig,
              conditions: Optional[dict] = None, digits: int = 32,
              stencil: int = None) -> str:
    """Rows n, columns m0..m{max_m}; absent cells are empty strings."""
    step = p if stencil is None else stencil
    header = "n," + ",".join(f"m{m}" for m in range(max_m + 1))
    lines = [header]
    for n in range(1, budget + 1):
        row = [str(n)]
        for m in range(max_m + 1):
            if n + m * step > budget:
                break
            value = cells.get((n, m))
            base = cells.get((n, 0))
            cond = conditions.get((n, m)) if conditions else None
            row.append(_cell_text(content, value, base, limit, cfg, cond, digits))
        lines.append(",".join(row))
    return "\n".join(lines) + "\n"


def table_json(cells: dict, meta: dict, limit: Optional[HPComplex],
               cfg: PrecisionConfig, conditions: Optional[dict] = None,
               digits: int = 32) -> str:
    out_cells = []
    for (n, m) in sorted(cells):
        value = cells[(n, m)]
        entry = {"n": n, "m": m}
        if value is None:
            entry["flag"] = "degenerate"
        else:
            entry["value"] = format_number(value, digits)
            if limit is not None:
                entry["acc"] = acc_digits(value, limit, cfg)
                base = cells.get((n, 0))
                if base is not None and abs(base - limit) != 0:
                    entry["ratio"] = float(abs(value - limit) / abs(base - limit))
        if conditions and (n, m) in conditions:
            entry["condition"] = format_number(conditions[(n, m)], digits)
        out_cells.append(entry)
    return json.dumps({"meta": meta, "cells": out_cells}, indent=2) + "\n"


def table_text(cells: dict, budget: int, max_m: int, p: int, content: str,
               limit: Optional[HPComplex], cfg: PrecisionConfig,
               conditions: Optional[dict] = None, digits: int = 32,
               stencil: int = None) -> str:
    """Paper-style aligned triangle, one row per n."""
    step = p if stencil is None else stencil
    rows = []
    for n in range(1, budget + 1):
        entries = []
        for m in range(max_m + 1):
            if n + m * step > budget:
                break
            value = cells.get((n, m))
            base = cells.get((n, 0))
            cond = conditions.get((n, m)) if conditions else None
            entries.append(
                _cell_text(content, value, base, limit, cfg, cond, digits) or "-"
            )
        rows.append((n, entries))
    width = max((len(e) for _, row in rows for e in row), default=1)
    lines = ["n\\m  " + "  ".join(f"{('m%d' % m):>{width}}" for m in range(max_m + 1))]
    for n, entries in rows:
        lines.append(f"{n:>3}  " + "  ".join(f"{e:>{width}}" for e in entries))
    return "\n".join(lines) + "\n"
