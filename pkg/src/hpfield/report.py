"""Check records shared by the verification suites and the CLI."""

from __future__ import annotations

from dataclasses import asdict, dataclass, field

SCHEMA_VERSION = 1


@dataclass
class CheckResult:
    check: str
    samples: int
    max_residual: float
    tol: float
    r: int | None = None
    s: int | None = None
    details: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.max_residual <= self.tol

    @property
    def status(self) -> str:
        return "pass" if self.passed else "fail"

    def to_dict(self) -> dict:
        out = asdict(self)
        out["status"] = self.status
        if not out["details"]:
            del out["details"]
        return out

    def summary(self) -> str:
        rs = f" r={self.r} s={self.s}" if self.r is not None else ""
        return f"[{self.status.upper()}] {self.check}{rs}: samples={self.samples} max_residual={self.max_residual:.3e} tol={self.tol:.1e}"


def relative_gap(a: float, b: float) -> float:
    return abs(a - b) / max(1.0, abs(a), abs(b))
