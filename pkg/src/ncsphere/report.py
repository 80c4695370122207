"""Verification reports: ordered checks with witnesses and timings."""

from __future__ import annotations

import json
import time
from contextlib import contextmanager
from dataclasses import dataclass, field
from importlib import resources
from typing import Any, Dict, List, Optional

__all__ = ["Check", "Report", "load_schema"]


@dataclass
class Check:
    name: str
    passed: bool
    details: str = ""
    witness: Optional[str] = None
    seconds: float = 0.0

    def to_json(self) -> Dict[str, Any]:
        return {
            "name": self.name,
            "status": "pass" if self.passed else "fail",
            "details": self.details,
            "witness": self.witness,
            "seconds": round(self.seconds, 6),
        }


@dataclass
class Report:
    task: str
    params: Dict[str, Any] = field(default_factory=dict)
    checks: List[Check] = field(default_factory=list)
    output: Dict[str, Any] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def add(self, name: str, passed: bool, details: str = "", witness: Optional[str] = None,
            seconds: float = 0.0) -> Check:
        chk = Check(name, bool(passed), details, witness, seconds)
        self.checks.append(chk)
        return chk

    @contextmanager
    def timed(self, name: str):
        """Run a block that fills in a Check; records wall time even on failure."""
        chk = Check(name, False)
        start = time.perf_counter()
        try:
            yield chk
        finally:
            chk.seconds = time.perf_counter() - start
            self.checks.append(chk)

    def to_json(self) -> Dict[str, Any]:
        return {
            "schema": "ncsphere.report/1",
            "task": self.task,
            "status": "pass" if self.passed else "fail",
            "params": self.params,
            "checks": [c.to_json() for c in self.checks],
            "output": self.output,
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2, ensure_ascii=False)

    def render(self) -> str:
        lines = [f"{self.task}: {'PASS' if self.passed else 'FAIL'}"]
        for c in self.checks:
            mark = "PASS" if c.passed else "FAIL"
            line = f"  [{mark}] {c.name} ({c.seconds:.3f}s)"
            if c.details:
                line += f": {c.details}"
            lines.append(line)
            if c.witness:
                lines.extend("      " + w for w in c.witness.splitlines())
        for key, val in self.output.items():
            if isinstance(val, list):
                lines.append(f"  {key}:")
                lines.extend(f"    {v}" for v in val)
            else:
                lines.append(f"  {key}: {val}")
        return "\n".join(lines)


def load_schema() -> Dict[str, Any]:
    text = resources.files("ncsphere").joinpath("report.schema.json").read_text()
    return json.loads(text)
