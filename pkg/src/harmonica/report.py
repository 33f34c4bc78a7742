"""Uniform result records for theorem checks.

A report carries named booleans (what held), named residuals (how far
the float backend was from zero, or the exact witness values), and a
witness dictionary with the constructed objects that let a reader
reproduce the verdict.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

REPORT_SCHEMA = 1


@dataclass
class TheoremReport:
    theorem: str
    booleans: dict[str, bool] = field(default_factory=dict)
    residuals: dict[str, Any] = field(default_factory=dict)
    witness: dict[str, Any] = field(default_factory=dict)

    def all_true(self) -> bool:
        return all(self.booleans.values())

    def to_json(self) -> dict:
        return {
            "schema": REPORT_SCHEMA,
            "theorem": self.theorem,
            "booleans": dict(self.booleans),
            "residuals": {k: _plain(v) for k, v in self.residuals.items()},
            "witness": {k: _plain(v) for k, v in self.witness.items()},
        }


def _plain(value: Any) -> Any:
    if hasattr(value, "to_json"):
        return value.to_json()
    if isinstance(value, dict):
        return {k: _plain(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_plain(v) for v in value]
    if isinstance(value, (bool, int, float, str)) or value is None:
        return value
    from .core import format_scalar

    try:
        return format_scalar(value)
    except (TypeError, ValueError):
        return repr(value)
