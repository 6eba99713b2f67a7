"""Schema consistency check: every table read by an analytical or
real-time statement must be written by some online statement."""

from __future__ import annotations

from dataclasses import dataclass

from .types import BenchmarkCatalog


@dataclass(frozen=True)
class Violation:
    statement_of: str  # template name
    kind: str  # "analytical" | "realtime"
    tables: tuple[str, ...]  # read but never OLTP-written


@dataclass(frozen=True)
class ConsistencyReport:
    catalog: str
    oltp_written: tuple[str, ...]
    violations: tuple[Violation, ...]

    @property
    def passed(self) -> bool:
        return not self.violations

    @property
    def violating_tables(self) -> tuple[str, ...]:
        out: set[str] = set()
        for v in self.violations:
            out.update(v.tables)
        return tuple(sorted(out))

    def render(self) -> str:
        lines = [f"{self.catalog}: {'PASS' if self.passed else 'FAIL'}"]
        for v in self.violations:
            lines.append(
                f"  {v.kind} {v.statement_of}: reads never-written table(s) "
                + ", ".join(v.tables)
            )
        return "\n".join(lines)


def check_semantic_consistency(catalog: BenchmarkCatalog) -> ConsistencyReport:
    written: set[str] = set()
    for tx in catalog.online:
        written |= tx.tables_written

    violations: list[Violation] = []

    def check(name, kind, statement):
        missing = tuple(sorted(statement.tables_read - written))
        if missing:
            violations.append(Violation(name, kind, missing))

    for tx in catalog.analytical:
        for s in tx.statements:
            check(tx.name, "analytical", s)
    for h in catalog.hybrid:
        check(h.name, "realtime", h.realtime_query)

    return ConsistencyReport(
        catalog=catalog.name,
        oltp_written=tuple(sorted(written)),
        violations=tuple(violations),
    )
