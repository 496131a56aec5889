"""Pass/fail reports shared by every verifier.

A report is a flat list of named checks plus a few counters. The text, JSON
and DataFrame renderings carry the same fields in the same order so either
output can be diffed between runs.
"""
import json

import numpy as np
import pandas as pd
from attrs import define, field


def plain(value: object) -> object:
    """Convert numpy scalars, tuples and sets into JSON-friendly values."""
    if isinstance(value, np.generic):
        return value.item()
    if isinstance(value, np.ndarray):
        return [plain(v) for v in value.tolist()]
    if isinstance(value, dict):
        return {str(k): plain(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [plain(v) for v in value]
    if isinstance(value, (set, frozenset)):
        return sorted((plain(v) for v in value), key=repr)
    if value is None or isinstance(value, (bool, int, float, str)):
        return value
    return str(value)


@define
class Check:
    name: str
    passed: bool
    witness: object = None
    detail: str = ""
    informational: bool = False

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "passed": bool(self.passed),
            "informational": self.informational,
            "detail": self.detail,
            "witness": plain(self.witness),
        }


@define
class Report:
    title: str
    checks: list[Check] = field(factory=list)
    stats: dict[str, object] = field(factory=dict)
    header: dict[str, object] = field(factory=dict)

    def add(
        self,
        name: str,
        passed: bool,
        witness: object = None,
        detail: str = "",
        informational: bool = False,
    ) -> Check:
        check = Check(name, bool(passed), witness, detail, informational)
        self.checks.append(check)
        return check

    def merge(self, other: "Report", prefix: str = "") -> "Report":
        for c in other.checks:
            name = f"{prefix}{c.name}" if prefix else c.name
            self.checks.append(Check(name, c.passed, c.witness, c.detail, c.informational))
        for k, v in other.stats.items():
            self.stats[f"{prefix}{k}" if prefix else k] = v
        return self

    @property
    def failures(self) -> list[Check]:
        return [c for c in self.checks if not c.passed and not c.informational]

    @property
    def passed(self) -> bool:
        return not self.failures

    def check(self, name: str) -> Check:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(f"No check named {name!r} in {self.title!r}")

    def to_dict(self) -> dict:
        return {
            "title": self.title,
            "header": plain(self.header),
            "stats": plain(self.stats),
            "checks": [c.to_dict() for c in self.checks],
            "passed": self.passed,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, ensure_ascii=False)

    def to_frame(self) -> pd.DataFrame:
        rows = [c.to_dict() for c in self.checks]
        df = pd.DataFrame(rows, columns=["name", "passed", "informational", "detail", "witness"])
        df["witness"] = df["witness"].apply(lambda w: "" if w is None else json.dumps(w))
        return df

    def to_text(self) -> str:
        lines = [f"== {self.title} =="]
        for k, v in plain(self.header).items():
            lines.append(f"{k}: {v}")
        for k, v in plain(self.stats).items():
            lines.append(f"{k}: {v}")
        for c in self.checks:
            status = "PASS" if c.passed else ("NOTE" if c.informational else "FAIL")
            line = f"[{status}] {c.name}"
            if c.detail:
                line += f" | {c.detail}"
            if c.witness is not None and not c.passed:
                line += f" | witness: {json.dumps(plain(c.witness))}"
            lines.append(line)
        lines.append(f"passed: {self.passed}")
        return "\n".join(lines)
