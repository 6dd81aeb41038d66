"""Deterministic serialization of command output as json, csv or text tables.

Every float is written with nine decimal places and every mapping with its
keys sorted, so identical input always yields identical bytes.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from typing import Any, Sequence

DECIMALS = 9


def fixed(x: float) -> str:
    text = f"{x:.{DECIMALS}f}"
    return "0." + "0" * DECIMALS if text == "-0." + "0" * DECIMALS else text


def to_json(obj: Any, indent: int = 2) -> str:
    """JSON text with sorted keys and fixed-precision floats."""
    return _encode(obj, 0, indent) + "\n"


def _encode(obj: Any, level: int, indent: int) -> str:
    pad = " " * (indent * (level + 1))
    end = " " * (indent * level)
    if isinstance(obj, bool) or obj is None or isinstance(obj, (int, str)):
        return json.dumps(obj, ensure_ascii=False)
    if isinstance(obj, float):
        return fixed(obj)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{pad}{json.dumps(str(k), ensure_ascii=False)}: {_encode(obj[k], level + 1, indent)}" for k in sorted(obj)]
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        items = [pad + _encode(v, level + 1, indent) for v in obj]
        return "[\n" + ",\n".join(items) + "\n" + end + "]"
    raise TypeError(f"cannot serialize {type(obj).__name__}")


@dataclass
class Section:
    name: str
    columns: Sequence[str]
    rows: list[Sequence[Any]] = field(default_factory=list)


def _cell(value: Any) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return fixed(value)
    return str(value)


def to_csv(sections: Sequence[Section], headers: bool = True) -> str:
    """Sections separated by ``# name`` lines; a single section may omit them."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    for section in sections:
        if headers:
            buf.write(f"# {section.name}\n")
        writer.writerow(section.columns)
        for row in section.rows:
            writer.writerow([_cell(v) for v in row])
    return buf.getvalue()


def to_table(sections: Sequence[Section]) -> str:
    out = []
    for section in sections:
        cells = [[str(c) for c in section.columns]] + [[_cell(v) for v in row] for row in section.rows]
        widths = [max(len(r[i]) for r in cells) for i in range(len(section.columns))]
        out.append(f"{section.name}")
        for j, row in enumerate(cells):
            out.append("  ".join(c.ljust(w) for c, w in zip(row, widths)).rstrip())
            if j == 0:
                out.append("  ".join("-" * w for w in widths))
        out.append("")
    return "\n".join(out)
