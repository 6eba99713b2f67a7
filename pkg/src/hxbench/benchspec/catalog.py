"""Catalog loading and default transaction mixes."""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from ..errors import UnknownBenchmarkError, ValidationError
from .suites import build_fibenchmark, build_stitched_fixture, build_subenchmark, build_tabenchmark
from .types import HYBRID, WORKLOAD_CLASSES, BenchmarkCatalog

_BUILDERS = {
    "subenchmark": build_subenchmark,
    "fibenchmark": build_fibenchmark,
    "tabenchmark": build_tabenchmark,
}

BENCHMARK_NAMES = tuple(sorted(_BUILDERS))


@lru_cache(maxsize=None)
def load_catalog(name: str) -> BenchmarkCatalog:
    """Return the named built-in catalog (cached; catalogs are immutable)."""
    try:
        builder = _BUILDERS[name]
    except KeyError:
        raise UnknownBenchmarkError(
            f"unknown benchmark {name!r}; valid choices: {', '.join(BENCHMARK_NAMES)}"
        ) from None
    return builder()


@lru_cache(maxsize=None)
def stitched_fixture() -> BenchmarkCatalog:
    return build_stitched_fixture()


def default_mix(
    catalog: BenchmarkCatalog,
    workload_class: str,
    overrides: dict[str, int] | None = None,
) -> dict[str, Fraction]:
    """Normalized weight per template name, as exact fractions summing to 1.

    `overrides` replaces the class's weights entirely: templates named there
    get the given weight, everything else in the class gets zero.
    """
    if workload_class not in WORKLOAD_CLASSES:
        raise ValidationError(f"unknown workload class {workload_class!r}")
    templates = catalog.templates(workload_class)
    if overrides is not None:
        known = {t.name for t in templates}
        bad = set(overrides) - known
        if bad:
            raise ValidationError(
                f"weight override names unknown {workload_class} templates: {sorted(bad)}"
            )
        weights = {t.name: int(overrides.get(t.name, 0)) for t in templates}
    else:
        weights = {t.name: t.weight for t in templates}
    total = sum(weights.values())
    if total <= 0:
        raise ValidationError(f"{catalog.name}/{workload_class}: weights sum to zero")
    return {name: Fraction(w, total) for name, w in weights.items()}


def read_only_fraction(catalog: BenchmarkCatalog, workload_class: str) -> Fraction:
    mix = default_mix(catalog, workload_class)
    templates = {t.name: t for t in catalog.templates(workload_class)}
    return sum(
        (frac for name, frac in mix.items() if templates[name].read_only),
        Fraction(0),
    )


def inventory(catalog: BenchmarkCatalog) -> dict:
    """Structured listing of the catalog for documentation and tooling."""

    def _templates(ts, hybrid=False):
        out = []
        for t in ts:
            entry = {
                "name": t.name,
                "weight": t.weight,
                "read_only": t.read_only,
            }
            if hybrid:
                entry["base"] = t.base.name
                entry["insertion_index"] = t.insertion_index
                entry["realtime_sql"] = t.realtime_query.sql_text
                entry["statements"] = len(t.base.statements) + 1
            else:
                entry["statements"] = len(t.statements)
            out.append(entry)
        return out

    return {
        "name": catalog.name,
        "tables": [
            {
                "name": t.name,
                "columns": len(t.columns),
                "primary_key": list(t.primary_key),
                "indexes": [list(i) for i in t.indexes],
                "foreign_keys": [
                    {"columns": list(fk.columns), "ref": fk.ref_table} for fk in t.foreign_keys
                ],
            }
            for t in catalog.tables
        ],
        "counts": {
            "tables": len(catalog.tables),
            "columns": catalog.column_count,
            "indexes": catalog.index_count,
            "online": len(catalog.online),
            "analytical": len(catalog.analytical),
            "hybrid": len(catalog.hybrid),
        },
        "online": _templates(catalog.online),
        "analytical": _templates(catalog.analytical),
        "hybrid": _templates(catalog.hybrid, hybrid=True),
        "read_only_pct": {
            "online": float(read_only_fraction(catalog, "online") * 100),
            "hybrid": float(read_only_fraction(catalog, HYBRID) * 100)
            if catalog.hybrid
            else None,
        },
    }
