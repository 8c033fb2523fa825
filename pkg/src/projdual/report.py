"""Structured verdicts produced by the verification routines."""

from __future__ import annotations

import json
from dataclasses import dataclass, field

__all__ = ["VerificationReport", "VERDICTS", "summarize"]

VERDICTS = ("pass", "fail", "hypotheses_violated", "budget_exhausted")


def summarize(value):
    """JSON-ready form of a measurement (ideals become generator strings)."""
    if hasattr(value, "summary"):
        return value.summary()
    if hasattr(value, "as_json"):
        return value.as_json()
    if isinstance(value, bool) or value is None or isinstance(value, (int, str)):
        return value
    if isinstance(value, dict):
        return {str(k): summarize(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [summarize(v) for v in value]
    return str(value)


@dataclass
class VerificationReport:
    """Hypotheses checked, measurements taken and the resulting verdict.

    ``conclude`` never yields ``pass`` while a recorded hypothesis is false.
    """

    name: str
    seed: int
    hypotheses: list = field(default_factory=list)
    measurements: dict = field(default_factory=dict)
    verdict: str | None = None

    def hypothesis(self, description: str, checked: bool) -> bool:
        self.hypotheses.append((description, bool(checked)))
        return bool(checked)

    def measure(self, name: str, value) -> None:
        self.measurements[name] = summarize(value)

    @property
    def hypotheses_hold(self) -> bool:
        return all(ok for _, ok in self.hypotheses)

    def conclude(self, holds: bool) -> str:
        if not self.hypotheses_hold:
            self.verdict = "hypotheses_violated"
        else:
            self.verdict = "pass" if holds else "fail"
        return self.verdict

    @property
    def passed(self) -> bool:
        return self.verdict == "pass"

    def as_json(self) -> dict:
        return {
            "name": self.name,
            "seed": self.seed,
            "hypotheses": [{"description": d, "checked": ok} for d, ok in self.hypotheses],
            "measurements": self.measurements,
            "verdict": self.verdict,
        }

    def dumps(self) -> str:
        return json.dumps(self.as_json(), sort_keys=True, indent=2)
