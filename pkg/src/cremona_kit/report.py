"""Verification reports, their JSON schema, and suite configuration."""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, field as dc_field
from typing import Any

from . import __version__

__all__ = [
    "CheckRecord",
    "VerificationReport",
    "SuiteConfig",
    "REPORT_SCHEMA",
    "emit_schema",
    "default_groebner_steps",
    "STATUSES",
]

STATUSES = ("pass", "fail", "skipped")
BUDGET_ENV = "CREMONA_KIT_GROEBNER_STEPS"
DEFAULT_GROEBNER_STEPS = 50000


def default_groebner_steps() -> int:
    raw = os.environ.get(BUDGET_ENV)
    if raw is None:
        return DEFAULT_GROEBNER_STEPS
    value = int(raw)
    if value <= 0:
        raise ValueError(f"{BUDGET_ENV} must be positive")
    return value


@dataclass
class SuiteConfig:
    suite: str
    groebner_steps: int = dc_field(default_factory=default_groebner_steps)
    order_bound: int = 12
    timings: bool = False
    out: str | None = None
    params: dict = dc_field(default_factory=dict)

    def __post_init__(self):
        if self.groebner_steps <= 0 or self.order_bound <= 0:
            raise ValueError("budgets must be positive")

    @classmethod
    def from_dict(cls, data: dict, suite: str | None = None) -> "SuiteConfig":
        budgets = data.get("budgets", {})
        kwargs = {
            "suite": suite or data.get("suite"),
            "timings": bool(data.get("timings", False)),
            "out": data.get("out"),
            "params": dict(data.get("params", {})),
        }
        if "groebner_steps" in budgets:
            kwargs["groebner_steps"] = int(budgets["groebner_steps"])
        if "order_bound" in budgets:
            kwargs["order_bound"] = int(budgets["order_bound"])
        if not kwargs["suite"]:
            raise ValueError("config names no suite")
        return cls(**kwargs)

    def echo(self) -> dict:
        # the output path is deliberately left out so reports do not depend on where they are written
        return {
            "suite": self.suite,
            "budgets": {"groebner_steps": self.groebner_steps, "order_bound": self.order_bound},
            "timings": self.timings,
            "params": self.params,
        }


@dataclass
class CheckRecord:
    claim_id: str
    anchor: str
    status: str
    witness: Any = None
    reason: str | None = None
    wall_time: float | None = None

    def __post_init__(self):
        if self.status not in STATUSES:
            raise ValueError(f"unknown status {self.status!r}")

    def to_dict(self) -> dict:
        return {
            "claim_id": self.claim_id,
            "anchor": self.anchor,
            "status": self.status,
            "witness": self.witness,
            "reason": self.reason,
            "wall_time": self.wall_time,
        }


@dataclass
class VerificationReport:
    suite: str
    config: dict
    checks: list[CheckRecord]
    version: str = __version__

    @property
    def failed(self) -> bool:
        return any(c.status == "fail" for c in self.checks)

    def summary(self) -> dict:
        return {s: sum(1 for c in self.checks if c.status == s) for s in STATUSES}

    def to_dict(self) -> dict:
        return {
            "schema_version": self.version,
            "toolkit_version": self.version,
            "suite": self.suite,
            "config": self.config,
            "summary": self.summary(),
            "checks": [c.to_dict() for c in sorted(self.checks, key=lambda c: c.claim_id)],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True) + "\n"


REPORT_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "$id": f"https://cremona-kit.invalid/schema/report-{__version__}.json",
    "title": "cremona-kit verification report",
    "version": __version__,
    "type": "object",
    "required": ["schema_version", "toolkit_version", "suite", "config", "summary", "checks"],
    "properties": {
        "schema_version": {"const": __version__},
        "toolkit_version": {"type": "string"},
        "suite": {"type": "string"},
        "config": {
            "type": "object",
            "required": ["suite", "budgets", "timings", "params"],
            "properties": {
                "suite": {"type": "string"},
                "budgets": {
                    "type": "object",
                    "properties": {
                        "groebner_steps": {"type": "integer", "minimum": 1},
                        "order_bound": {"type": "integer", "minimum": 1},
                    },
                },
                "timings": {"type": "boolean"},
                "params": {"type": "object"},
            },
        },
        "summary": {
            "type": "object",
            "required": list(STATUSES),
            "properties": {s: {"type": "integer", "minimum": 0} for s in STATUSES},
        },
        "checks": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["claim_id", "anchor", "status", "witness", "reason", "wall_time"],
                "properties": {
                    "claim_id": {"type": "string", "minLength": 1},
                    "anchor": {"type": "string", "minLength": 1},
                    "status": {"enum": list(STATUSES)},
                    "witness": {},
                    "reason": {"type": ["string", "null"]},
                    "wall_time": {"type": ["number", "null"]},
                },
                "additionalProperties": False,
            },
        },
    },
    "additionalProperties": False,
}


def emit_schema() -> str:
    return json.dumps(REPORT_SCHEMA, indent=2, sort_keys=True) + "\n"
