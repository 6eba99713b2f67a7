"""Consistency rule: tables read by analytical/real-time statements must
be written by some online statement."""

import pytest

from hxbench.benchspec import check_semantic_consistency, load_catalog, stitched_fixture
from hxbench.benchspec.types import BenchmarkCatalog


@pytest.mark.parametrize("name", ["subenchmark", "fibenchmark", "tabenchmark"])
def test_builtin_suites_pass(name):
    report = check_semantic_consistency(load_catalog(name))
    assert report.passed
    assert report.violations == ()


def test_stitched_fixture_fails_on_reference_tables_only():
    report = check_semantic_consistency(stitched_fixture())
    assert not report.passed
    assert report.violating_tables == ("NATION", "REGION", "SUPPLIER")


def test_stitched_violations_name_statements():
    report = check_semantic_consistency(stitched_fixture())
    kinds = {v.kind for v in report.violations}
    assert kinds == {"analytical"}
    assert {v.statement_of for v in report.violations} == {"SQ1", "SQ2", "SQ3"}


def test_catalog_without_analytical_passes_vacuously():
    base = load_catalog("fibenchmark")
    empty = BenchmarkCatalog("no-olap", base.tables, base.online, (), ())
    report = check_semantic_consistency(empty)
    assert report.passed


def test_written_set_matches_online_side():
    report = check_semantic_consistency(load_catalog("subenchmark"))
    # ITEM is read-only for the online transactions and must not appear
    assert "ITEM" not in report.oltp_written
    assert set(report.oltp_written) == {
        "WAREHOUSE", "DISTRICT", "CUSTOMER", "HISTORY",
        "ORDERS", "NEW_ORDER", "ORDER_LINE", "STOCK",
    }


def test_realtime_queries_confined_to_written_tables():
    for name in ("subenchmark", "fibenchmark", "tabenchmark"):
        c = load_catalog(name)
        written = set()
        for tx in c.online:
            written |= tx.tables_written
        for h in c.hybrid:
            assert h.realtime_query.tables_read <= written
