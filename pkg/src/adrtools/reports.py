"""Check reports and the exception types shared across the package."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any


class VerificationError(AssertionError):
    """A certified property failed. On valid input this never fires."""

    def __init__(self, report: "CheckReport | str"):
        self.report = report if isinstance(report, CheckReport) else None
        msg = report if isinstance(report, str) else f"{report.name}: " + "; ".join(report.failures)
        super().__init__(msg)


class NonSplitSemisimpleQuotient(ValueError):
    """The semisimple quotient is not a product of matrix algebras over Q
    (or no splitting element was found by the deterministic search)."""


class InfiniteDimensional(ValueError):
    pass


class NotDeltaFiltered(ValueError):
    def __init__(self, layer: int, reason: str):
        self.layer = layer
        self.reason = reason
        super().__init__(f"layer {layer}: {reason}")


class InternalInconsistency(AssertionError):
    pass


def _jsonable(x: Any) -> Any:
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if hasattr(x, "to_dict"):
        return x.to_dict()
    return x


@dataclass
class CheckReport:
    name: str
    status: str = "pass"
    dims: dict = field(default_factory=dict)
    certificates: dict = field(default_factory=dict)
    failures: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def __bool__(self) -> bool:
        return self.ok

    def fail(self, message: str) -> None:
        self.failures.append(message)
        self.status = "fail"

    def require(self, condition: bool, message: str) -> bool:
        if not condition:
            self.fail(message)
        return bool(condition)

    def absorb(self, other: "CheckReport", prefix: str | None = None) -> "CheckReport":
        tag = prefix or other.name
        for f in other.failures:
            self.fail(f"{tag}: {f}")
        return self

    def raise_if_failed(self) -> "CheckReport":
        if self.failures:
            raise VerificationError(self)
        return self

    def to_dict(self) -> dict:
        out = {
            "name": self.name,
            "status": self.status,
            "dims": _jsonable(self.dims),
            "certificates": _jsonable(self.certificates),
        }
        if self.failures:
            out["failures"] = list(self.failures)
        return out
