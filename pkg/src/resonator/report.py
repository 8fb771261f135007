"""Run reports: deterministic JSON documents describing one command invocation."""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from typing import Any


def digest(*parts: str) -> str:
    h = hashlib.sha256()
    for part in parts:
        h.update(part.encode())
        h.update(b"\0")
    return h.hexdigest()[:16]


@dataclass
class RunReport:
    command: str
    inputs_digest: str
    seed: int
    field: str
    results: Any
    failure_bounds: list[str] = field(default_factory=list)
    exact: bool = True
    warnings: list[str] = field(default_factory=list)
    wall_time: float | None = None

    def to_json(self) -> dict:
        out = {"command": self.command, "inputs_digest": self.inputs_digest, "seed": self.seed,
               "field": self.field, "exact": self.exact, "results": self.results}
        if self.failure_bounds:
            out["failure_bounds"] = list(self.failure_bounds)
        if self.warnings:
            out["warnings"] = list(self.warnings)
        if self.wall_time is not None:
            out["wall_time"] = round(self.wall_time, 3)
        return out

    def render(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True, indent=2) + "\n"


def collect_bounds(obj: Any) -> list[str]:
    """Every "failure_bound" value found anywhere in a JSON-like tree, in order."""
    found: list[str] = []

    def walk(x):
        if isinstance(x, dict):
            for k in sorted(x):
                if k == "failure_bound":
                    found.append(x[k])
                else:
                    walk(x[k])
        elif isinstance(x, list):
            for y in x:
                walk(y)

    walk(obj)
    return found
