"""Count reports shared by the formula, enumeration and oracle paths."""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from typing import Dict, Union

from .group import GroupDescriptor, InvalidInput, PGroupType

KINDS = ("all", "maximal", "cyclic", "elements")
SOURCES = ("formula", "enumeration", "oracle")


@dataclass
class CountReport:
    """Counts keyed by subgroup (or element) order."""

    group: Union[GroupDescriptor, PGroupType]
    kind: str
    by_order: Dict[int, int]
    source: str = "formula"
    component_sources: Dict[int, str] = field(default_factory=dict)

    def __post_init__(self):
        if self.kind not in KINDS:
            raise InvalidInput(f"unknown kind {self.kind!r}")
        if self.source not in SOURCES:
            raise InvalidInput(f"unknown source {self.source!r}")
        self.by_order = {d: c for d, c in sorted(self.by_order.items()) if c}

    @property
    def total(self) -> int:
        return sum(self.by_order.values())

    def to_dict(self) -> dict:
        out = {
            "group": str(self.group),
            "kind": self.kind,
            "source": self.source,
            "total": self.total,
            "by_order": {str(d): c for d, c in self.by_order.items()},
        }
        if self.component_sources:
            out["component_sources"] = {str(p): s for p, s in sorted(self.component_sources.items())}
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=False)

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["order", "count"])
        for d, c in self.by_order.items():
            w.writerow([d, c])
        return buf.getvalue()

    def to_text(self) -> str:
        lines = [f"{self.kind} subgroups of {self.group}" if self.kind != "elements"
                 else f"elements of {self.group}"]
        lines.append(f"{'order':>10}  {'count':>10}")
        for d, c in self.by_order.items():
            lines.append(f"{d:>10}  {c:>10}")
        lines.append(f"{'total':>10}  {self.total:>10}  [{self.source}]")
        return "\n".join(lines)
