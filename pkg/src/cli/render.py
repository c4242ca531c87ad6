# render.py
"""
输出信封与三种格式: text (人读表格) / json (单个文档) / csv (仅行型结果)。

JSON 键顺序固定 (dataclass 字段顺序), 只含整数/布尔/字符串/null, 解析后再渲染字节一致。
CSV 走 pandas.DataFrame(dtype=object), 任意精度整数原样写出。
"""

from __future__ import annotations
import json
from dataclasses import dataclass
from enum import Enum
from typing import Any, Dict, List, Sequence

import pandas as pd


class OutputFormat(Enum):
    TEXT = "text"
    JSON = "json"
    CSV = "csv"


@dataclass(frozen=True)
class OutputEnvelope:
    format: OutputFormat
    command: str
    payload: Any
    version: str

    def to_dict(self) -> Dict[str, Any]:
        return {"version": self.version, "command": self.command, "payload": self.payload}


def render_json(envelope: OutputEnvelope) -> str:
    return json.dumps(envelope.to_dict(), ensure_ascii=False)


def render_csv(rows: Sequence[Dict[str, Any]], columns: Sequence[str]) -> str:
    frame = pd.DataFrame(list(rows), columns=list(columns), dtype=object)
    return frame.to_csv(index=False)


def render_table(rows: Sequence[Dict[str, Any]], columns: Sequence[str]) -> str:
    """等宽文本表格; None 显示为 '-'"""

    def cell(v):
        if v is None:
            return "-"
        if isinstance(v, bool):
            return "✓" if v else "✗"
        return str(v)

    body: List[List[str]] = [[cell(r.get(c)) for c in columns] for r in rows]
    widths = [max([len(c)] + [len(row[i]) for row in body]) for i, c in enumerate(columns)]
    lines = ["  ".join(c.rjust(w) for c, w in zip(columns, widths))]
    lines.append("  ".join("-" * w for w in widths))
    lines.extend("  ".join(v.rjust(w) for v, w in zip(row, widths)) for row in body)
    return "\n".join(lines)


def banner(title: str) -> str:
    return "\n".join(["=" * 50, title, "=" * 50])


def yes_no(flag: bool) -> str:
    return "满足 ✓" if flag else "不满足 ✗"
