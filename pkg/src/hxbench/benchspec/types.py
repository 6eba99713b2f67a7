"""Domain types for benchmark catalogs: schemas, statement templates,
transaction templates, and hybrid transactions.

Everything here is a frozen dataclass holding tuples, so catalogs are
immutable after construction and safe to share across threads.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from ..errors import ValidationError

# Closed abstract SQL type set.
_SQL_TYPE_RE = re.compile(
    r"^(integer|float|timestamp|decimal\(\d+,\s*\d+\)|varchar\(\d+\))$"
)

ONLINE = "online"
ANALYTICAL = "analytical"
HYBRID = "hybrid"
WORKLOAD_CLASSES = (ONLINE, ANALYTICAL, HYBRID)


@dataclass(frozen=True)
class ColumnDef:
    name: str
    sql_type: str
    nullable: bool = False

    def __post_init__(self):
        if not _SQL_TYPE_RE.match(self.sql_type):
            raise ValidationError(
                f"column {self.name}: sql_type {self.sql_type!r} outside the abstract type set"
            )


@dataclass(frozen=True)
class ForeignKey:
    columns: tuple[str, ...]
    ref_table: str
    ref_columns: tuple[str, ...]

    def __post_init__(self):
        if len(self.columns) != len(self.ref_columns):
            raise ValidationError(f"FK to {self.ref_table}: column arity mismatch")


@dataclass(frozen=True)
class TableDef:
    name: str
    columns: tuple[ColumnDef, ...]
    primary_key: tuple[str, ...] = ()
    indexes: tuple[tuple[str, ...], ...] = ()
    foreign_keys: tuple[ForeignKey, ...] = ()

    def __post_init__(self):
        names = [c.name for c in self.columns]
        if len(set(names)) != len(names):
            raise ValidationError(f"table {self.name}: duplicate column names")
        known = set(names)
        for col in self.primary_key:
            if col not in known:
                raise ValidationError(f"table {self.name}: PK column {col} undefined")
        for idx in self.indexes:
            for col in idx:
                if col not in known:
                    raise ValidationError(f"table {self.name}: index column {col} undefined")
        for fk in self.foreign_keys:
            for col in fk.columns:
                if col not in known:
                    raise ValidationError(f"table {self.name}: FK column {col} undefined")

    @property
    def column_names(self) -> tuple[str, ...]:
        return tuple(c.name for c in self.columns)


# ---------------------------------------------------------------------------
# Parameter generators (closed vocabulary). A ParamBinding attaches a
# generator to one positional slot; slots sharing a `share` key receive a
# single drawn value, which is how one customer/warehouse id stays coherent
# across a transaction's statements.


@dataclass(frozen=True)
class UniformInt:
    lo: int
    hi: int

    def draw(self, rng, scale):
        return int(rng.integers(self.lo, self.hi + 1))


@dataclass(frozen=True)
class Zipf:
    a: float
    lo: int
    hi: int

    def draw(self, rng, scale):
        # bounded zipf by rejection; falls back to lo after 64 misses
        for _ in range(64):
            v = self.lo + int(rng.zipf(self.a)) - 1
            if v <= self.hi:
                return v
        return self.lo


@dataclass(frozen=True)
class ScaledId:
    """Uniform over [1, base_per_scale * scale]. With `pad` set the id is
    rendered as its zero-padded string form (dialable-number style keys)."""

    base_per_scale: int
    pad: int | None = None

    def draw(self, rng, scale):
        v = int(rng.integers(1, self.base_per_scale * scale + 1))
        return str(v).zfill(self.pad) if self.pad else v


@dataclass(frozen=True)
class StringPattern:
    """Pattern markers: '#' digit, '@' lowercase letter, '*' alphanumeric.
    Every other character is literal (so '%' builds LIKE patterns)."""

    pattern: str

    def draw(self, rng, scale):
        out = []
        for ch in self.pattern:
            if ch == "#":
                out.append(chr(ord("0") + int(rng.integers(0, 10))))
            elif ch == "@":
                out.append(chr(ord("a") + int(rng.integers(0, 26))))
            elif ch == "*":
                k = int(rng.integers(0, 36))
                out.append(chr(ord("0") + k) if k < 10 else chr(ord("a") + k - 10))
            else:
                out.append(ch)
        return "".join(out)


@dataclass(frozen=True)
class Constant:
    value: object

    def draw(self, rng, scale):
        return self.value


@dataclass(frozen=True)
class ParamBinding:
    spec: object
    share: str | None = None


@dataclass(frozen=True)
class StatementTemplate:
    """One parameterized SQL statement plus its read/write table sets."""

    sql_text: str
    tables_read: frozenset[str] = frozenset()
    tables_written: frozenset[str] = frozenset()
    param_specs: tuple[ParamBinding, ...] = ()

    def __post_init__(self):
        slots = _count_slots(self.sql_text)
        if slots != len(self.param_specs):
            raise ValidationError(
                f"statement has {slots} slots but {len(self.param_specs)} param specs: "
                f"{self.sql_text[:80]!r}"
            )
        if not (self.tables_read or self.tables_written):
            raise ValidationError(f"statement touches no table: {self.sql_text[:80]!r}")


def _count_slots(sql: str) -> int:
    n = 0
    in_str = False
    for ch in sql:
        if ch == "'":
            in_str = not in_str
        elif ch == "?" and not in_str:
            n += 1
    return n


@dataclass(frozen=True)
class TransactionTemplate:
    name: str
    workload_class: str  # online | analytical
    statements: tuple[StatementTemplate, ...]
    weight: int = 1
    read_only: bool = field(default=False)

    def __post_init__(self):
        if self.workload_class not in (ONLINE, ANALYTICAL):
            raise ValidationError(f"{self.name}: bad class {self.workload_class}")
        if self.weight < 0:
            raise ValidationError(f"{self.name}: negative weight")
        writes = any(s.tables_written for s in self.statements)
        if self.read_only == writes:
            raise ValidationError(
                f"{self.name}: read_only={self.read_only} but "
                f"{'has' if writes else 'has no'} writing statements"
            )

    @property
    def tables_written(self) -> frozenset[str]:
        out: set[str] = set()
        for s in self.statements:
            out |= s.tables_written
        return frozenset(out)


@dataclass(frozen=True)
class HybridTemplate:
    """An online transaction with a read-only real-time query spliced in at
    insertion_index."""

    name: str
    base: TransactionTemplate
    realtime_query: StatementTemplate
    insertion_index: int
    weight: int = 1

    def __post_init__(self):
        if self.base.workload_class != ONLINE:
            raise ValidationError(f"{self.name}: hybrid base must be an online transaction")
        if not 0 <= self.insertion_index <= len(self.base.statements):
            raise ValidationError(f"{self.name}: insertion_index out of range")
        if self.realtime_query.tables_written:
            raise ValidationError(f"{self.name}: real-time query must not write")
        if self.weight < 0:
            raise ValidationError(f"{self.name}: negative weight")

    @property
    def read_only(self) -> bool:
        return self.base.read_only


@dataclass(frozen=True)
class BenchmarkCatalog:
    name: str
    tables: tuple[TableDef, ...]
    online: tuple[TransactionTemplate, ...]
    analytical: tuple[TransactionTemplate, ...]
    hybrid: tuple[HybridTemplate, ...]

    def __post_init__(self):
        table_names = [t.name for t in self.tables]
        if len(set(table_names)) != len(table_names):
            raise ValidationError(f"{self.name}: duplicate table names")
        known = set(table_names)
        for t in self.tables:
            for fk in t.foreign_keys:
                if fk.ref_table not in known:
                    raise ValidationError(
                        f"{self.name}: {t.name} references unknown table {fk.ref_table}"
                    )
        for tx in self.online:
            if tx.workload_class != ONLINE:
                raise ValidationError(f"{self.name}: {tx.name} listed online but is not")
        for tx in self.analytical:
            if tx.workload_class != ANALYTICAL:
                raise ValidationError(f"{self.name}: {tx.name} listed analytical but is not")

    def table(self, name: str) -> TableDef:
        for t in self.tables:
            if t.name == name:
                return t
        raise KeyError(name)

    def templates(self, workload_class: str):
        if workload_class == ONLINE:
            return self.online
        if workload_class == ANALYTICAL:
            return self.analytical
        if workload_class == HYBRID:
            return self.hybrid
        raise ValidationError(f"unknown workload class {workload_class!r}")

    @property
    def column_count(self) -> int:
        return sum(len(t.columns) for t in self.tables)

    @property
    def index_count(self) -> int:
        return sum(len(t.indexes) for t in self.tables)
