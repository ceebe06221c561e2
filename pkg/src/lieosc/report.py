"""Reports collected by the exact verification routines."""

from __future__ import annotations

from dataclasses import dataclass, field

from .matrix import SurdMatrix
from .scalar import Surd

__all__ = ["CheckReport", "merge_reports"]


@dataclass
class CheckReport:
    """Outcome of a batch of exact checks.

    Each entry records the relation checked, the exact residual of largest
    magnitude (as a canonical Surd string) and a pass flag.  ``meta`` holds
    run parameters such as interior column counts or spectral parameters.
    """

    name: str
    tag: str
    checks: list[dict] = field(default_factory=list)
    meta: dict = field(default_factory=dict)
    _worst: Surd = field(default_factory=Surd, repr=False)

    def add(self, relation: str, residual, **extra) -> bool:
        if isinstance(residual, SurdMatrix):
            ok = residual.is_zero()
            worst = residual.max_abs_entry()
        else:
            worst = Surd.coerce(residual)
            ok = worst.is_zero()
        self.record(relation, ok, worst, **extra)
        return ok

    def record(self, relation: str, ok: bool, residual: Surd | None = None, **extra) -> None:
        residual = residual if residual is not None else Surd()
        if abs(residual) > abs(self._worst):
            self._worst = residual
        self.checks.append({"relation": relation, "max_residual": str(residual), "pass": bool(ok), **extra})

    @property
    def passed(self) -> bool:
        return all(c["pass"] for c in self.checks)

    @property
    def max_residual(self) -> Surd:
        return self._worst

    def failures(self) -> list[dict]:
        return [c for c in self.checks if not c["pass"]]

    def to_json(self, detail: bool = True) -> dict:
        out = {
            "identity": self.tag,
            "name": self.name,
            **self.meta,
            "checked": len(self.checks),
            "max_residual": str(self._worst),
            "pass": self.passed,
        }
        if detail:
            out["checks"] = self.checks
        return out


def merge_reports(name: str, tag: str, reports) -> CheckReport:
    out = CheckReport(name, tag)
    for r in reports:
        for c in r.checks:
            out.checks.append({"group": r.tag, **c})
        if abs(r.max_residual) > abs(out._worst):
            out._worst = r.max_residual
    return out
