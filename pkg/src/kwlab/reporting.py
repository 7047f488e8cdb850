"""Machine-readable pass/fail reports for the verification suites."""

from __future__ import annotations

import json
from dataclasses import dataclass, field


@dataclass
class CheckResult:
    """One check: an identity or bound with its measured metric.

    ref names the mathematical fact being checked (or 'plumbing' for
    artifact-internal checks); status is 'pass', 'fail' or 'flagged'
    (flagged = reported anomaly that does not fail the suite).
    """

    check_id: str
    ref: str
    status: str
    metric: float | None = None
    tolerance: float | None = None
    worst_location: str | None = None

    @classmethod
    def from_bound(cls, check_id, ref, metric, tolerance, location=None):
        status = "pass" if metric <= tolerance else "fail"
        return cls(check_id, ref, status, float(metric), float(tolerance), location)

    @classmethod
    def from_bool(cls, check_id, ref, ok, location=None):
        return cls(check_id, ref, "pass" if ok else "fail", None, None, location)

    def to_dict(self):
        return {
            "check_id": self.check_id,
            "ref": self.ref,
            "status": self.status,
            "metric": self.metric,
            "tolerance": self.tolerance,
            "worst_location": self.worst_location,
        }


@dataclass
class SuiteReport:
    suite: str
    seed: int
    checks: list[CheckResult] = field(default_factory=list)
    wall_time_s: float | None = None  # kept out of the JSON payload so that
    # identical invocations produce byte-identical reports

    @property
    def n_fail(self) -> int:
        return sum(1 for c in self.checks if c.status == "fail")

    @property
    def n_flagged(self) -> int:
        return sum(1 for c in self.checks if c.status == "flagged")

    @property
    def exit_code(self) -> int:
        return 1 if self.n_fail else 0

    def to_json(self) -> str:
        payload = {
            "suite": self.suite,
            "seed": self.seed,
            "n_checks": len(self.checks),
            "n_fail": self.n_fail,
            "n_flagged": self.n_flagged,
            "checks": [c.to_dict() for c in self.checks],
        }
        return json.dumps(payload, indent=2, sort_keys=True)

    def table(self) -> str:
        lines = [f"suite: {self.suite} (seed {self.seed})"]
        width = max((len(c.check_id) for c in self.checks), default=10)
        for c in self.checks:
            metric = "" if c.metric is None else f"  metric={c.metric:.3e}"
            tol = "" if c.tolerance is None else f" tol={c.tolerance:.1e}"
            lines.append(f"  [{c.status.upper():7s}] {c.check_id:<{width}s}{metric}{tol}")
        lines.append(f"  -> {len(self.checks)} checks, {self.n_fail} failed, "
                     f"{self.n_flagged} flagged")
        return "\n".join(lines)
