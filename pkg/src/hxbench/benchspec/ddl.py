"""DDL emission. Pure function of (catalog, fk_variant): identical inputs
produce byte-identical scripts."""

from __future__ import annotations

from ..errors import UnorderableSchemaError
from .types import BenchmarkCatalog, TableDef

_TYPE_SQL = {
    "integer": "INTEGER",
    "float": "FLOAT",
    "timestamp": "TIMESTAMP",
}


def _sql_type(abstract: str) -> str:
    if abstract in _TYPE_SQL:
        return _TYPE_SQL[abstract]
    return abstract.upper().replace(" ", "")  # decimal(p,s) / varchar(n)


def creation_order(catalog: BenchmarkCatalog) -> list[TableDef]:
    """Tables ordered so every FK target precedes its referrer (stable
    Kahn topological sort; declaration order breaks ties)."""
    tables = list(catalog.tables)
    deps = {t.name: {fk.ref_table for fk in t.foreign_keys if fk.ref_table != t.name}
            for t in tables}
    placed: list[TableDef] = []
    done: set[str] = set()
    while len(placed) < len(tables):
        progressed = False
        for t in tables:
            if t.name in done:
                continue
            if deps[t.name] <= done:
                placed.append(t)
                done.add(t.name)
                progressed = True
        if not progressed:
            cyclic = sorted(set(deps) - done)
            raise UnorderableSchemaError(
                f"{catalog.name}: FK cycle among tables {', '.join(cyclic)}"
            )
    return placed


def emit_ddl(catalog: BenchmarkCatalog, fk_variant: bool) -> str:
    tables = creation_order(catalog) if fk_variant else list(catalog.tables)
    parts: list[str] = []
    for t in tables:
        lines = []
        for c in t.columns:
            null = "" if c.nullable else " NOT NULL"
            lines.append(f"    {c.name} {_sql_type(c.sql_type)}{null}")
        if t.primary_key:
            lines.append(f"    PRIMARY KEY ({', '.join(t.primary_key)})")
        if fk_variant:
            for fk in t.foreign_keys:
                lines.append(
                    f"    FOREIGN KEY ({', '.join(fk.columns)})"
                    f" REFERENCES {fk.ref_table} ({', '.join(fk.ref_columns)})"
                )
        parts.append(f"CREATE TABLE {t.name} (\n" + ",\n".join(lines) + "\n);")
    for t in tables:
        for i, idx in enumerate(t.indexes, start=1):
            parts.append(
                f"CREATE INDEX idx_{t.name.lower()}_{i} ON {t.name} ({', '.join(idx)});"
            )
    return "\n\n".join(parts) + "\n"
