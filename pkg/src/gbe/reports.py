"""Small result records shared by the checking functions."""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass
class StructureReport:
    subject: str
    checks: list = field(default_factory=list)   # (name, ok, detail)

    def add(self, name: str, ok: bool, detail: str = "") -> None:
        self.checks.append((name, bool(ok), detail))

    @property
    def ok(self) -> bool:
        return all(c[1] for c in self.checks)

    @property
    def violations(self) -> list:
        return [c for c in self.checks if not c[1]]

    def __bool__(self):
        return self.ok


@dataclass
class ZeroReport:
    """Root locations of the kappa-polynomials, relative to the unit circle."""
    per_coefficient: list = field(default_factory=list)   # (N-degree, degree, max dev, min separation)
    max_deviation: float = 0.0
    min_separation: float = float("inf")

    def within(self, tol: float) -> bool:
        return self.max_deviation < tol
