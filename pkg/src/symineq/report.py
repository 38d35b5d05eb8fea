"""Check reports: the uniform outcome record for every inequality check."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

__all__ = ["CheckReport"]


@dataclass
class CheckReport:
    """Outcome of one inequality check.

    ``worst_ratio`` is sup LHS/RHS over the checked points, and the pass flag
    is tied to it: pass iff worst_ratio <= constant_used * (1 + tolerance).
    Error outcomes carry a non-"ok" status and never pass.
    """

    inequality_id: str
    params: dict
    worst_ratio: float
    worst_location: float | None
    constant_used: float
    tolerance: float
    passed: bool = field(init=False)
    status: str = "ok"
    function_id: str | None = None
    trace: list | None = None

    def __post_init__(self):
        self.passed = self._evaluate()

    def _evaluate(self) -> bool:
        if self.status != "ok":
            return False
        if math.isnan(self.worst_ratio):
            return False
        return self.worst_ratio <= self.constant_used * (1.0 + self.tolerance)

    @classmethod
    def error(cls, inequality_id: str, status: str, function_id=None, params=None):
        """A failed-with-reason row; keeps suites running past bad inputs."""
        return cls(
            inequality_id=inequality_id,
            params=params or {},
            worst_ratio=math.nan,
            worst_location=None,
            constant_used=math.nan,
            tolerance=0.0,
            status=status,
            function_id=function_id,
        )

    def to_dict(self, include_trace: bool = False) -> dict:
        doc = {
            "inequality_id": self.inequality_id,
            "function_id": self.function_id,
            "params": self.params,
            "worst_ratio": _nan_as_none(self.worst_ratio),
            "worst_location": self.worst_location,
            "constant_used": _nan_as_none(self.constant_used),
            "tolerance": self.tolerance,
            "pass": self.passed,
            "status": self.status,
        }
        if include_trace and self.trace is not None:
            doc["trace"] = self.trace
        return doc

    @classmethod
    def from_dict(cls, doc: dict) -> "CheckReport":
        report = cls(
            inequality_id=doc["inequality_id"],
            params=dict(doc["params"]),
            worst_ratio=_none_as_nan(doc["worst_ratio"]),
            worst_location=doc["worst_location"],
            constant_used=_none_as_nan(doc["constant_used"]),
            tolerance=doc["tolerance"],
            status=doc.get("status", "ok"),
            function_id=doc.get("function_id"),
            trace=doc.get("trace"),
        )
        if report.passed != doc["pass"]:
            raise ValueError("pass flag inconsistent with ratio/constant/tolerance")
        return report


def _none_as_nan(x):
    return math.nan if x is None else float(x)


def _nan_as_none(x):
    return None if isinstance(x, float) and math.isnan(x) else x
