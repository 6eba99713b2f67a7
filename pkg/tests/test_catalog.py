"""Catalog conformance: fixed table/column/index/template counts and the
default-mix read-only fractions, plus structural invariants."""

from fractions import Fraction

import pytest

from hxbench.benchspec import (
    BENCHMARK_NAMES,
    default_mix,
    inventory,
    load_catalog,
    read_only_fraction,
)
from hxbench.errors import UnknownBenchmarkError, ValidationError

# benchmark -> (tables, columns, indexes, online, analytical, hybrid,
#               online read-only %, hybrid read-only %)
CONFORMANCE = {
    "subenchmark": (9, 92, 3, 5, 9, 5, Fraction(8, 100), Fraction(60, 100)),
    "fibenchmark": (3, 6, 4, 6, 4, 6, Fraction(15, 100), Fraction(20, 100)),
    "tabenchmark": (4, 51, 5, 7, 5, 6, Fraction(80, 100), Fraction(40, 100)),
}


@pytest.mark.parametrize("name", sorted(CONFORMANCE))
def test_counts_match(name):
    tables, columns, indexes, online, analytical, hybrid, ro_online, ro_hybrid = (
        CONFORMANCE[name]
    )
    c = load_catalog(name)
    assert len(c.tables) == tables
    assert c.column_count == columns
    assert c.index_count == indexes
    assert len(c.online) == online
    assert len(c.analytical) == analytical
    assert len(c.hybrid) == hybrid
    assert read_only_fraction(c, "online") == ro_online
    assert read_only_fraction(c, "hybrid") == ro_hybrid


def test_benchmark_name_set():
    assert BENCHMARK_NAMES == ("fibenchmark", "subenchmark", "tabenchmark")


def test_unknown_benchmark_names_choices():
    with pytest.raises(UnknownBenchmarkError) as exc:
        load_catalog("tpcc")
    msg = str(exc.value)
    for name in BENCHMARK_NAMES:
        assert name in msg


def test_catalogs_are_cached_and_immutable():
    a = load_catalog("subenchmark")
    assert load_catalog("subenchmark") is a
    with pytest.raises(Exception):
        a.name = "other"


def test_fibenchmark_inventory():
    c = load_catalog("fibenchmark")
    assert [t.name for t in c.tables] == ["ACCOUNT", "SAVING", "CHECKING"]
    assert sorted(t.name for t in c.online) == [
        "Amalgamate",
        "Balance",
        "DepositChecking",
        "SendPayment",
        "TransactSavings",
        "WriteCheck",
    ]


@pytest.mark.parametrize("name", sorted(CONFORMANCE))
@pytest.mark.parametrize("workload_class", ["online", "analytical", "hybrid"])
def test_default_mix_sums_to_one(name, workload_class):
    c = load_catalog(name)
    mix = default_mix(c, workload_class)
    assert sum(mix.values()) == Fraction(1)
    assert all(v >= 0 for v in mix.values())


def test_default_mix_override_replaces_class():
    c = load_catalog("subenchmark")
    mix = default_mix(c, "online", {"NewOrder": 100})
    assert mix["NewOrder"] == 1
    assert all(v == 0 for n, v in mix.items() if n != "NewOrder")
    # read-only fraction under this override is zero
    ro = {t.name: t.read_only for t in c.online}
    assert sum(v for n, v in mix.items() if ro[n]) == 0


def test_default_mix_rejects_unknown_names():
    c = load_catalog("fibenchmark")
    with pytest.raises(ValidationError):
        default_mix(c, "online", {"NoSuchTxn": 1})


def test_subenchmark_default_weights():
    c = load_catalog("subenchmark")
    weights = {t.name: t.weight for t in c.online}
    assert weights == {
        "NewOrder": 45,
        "Payment": 43,
        "OrderStatus": 4,
        "Delivery": 4,
        "StockLevel": 4,
    }


@pytest.mark.parametrize("name", sorted(CONFORMANCE))
def test_template_structure_invariants(name):
    c = load_catalog(name)
    table_names = {t.name for t in c.tables}
    for tx in c.online + c.analytical:
        writes = any(s.tables_written for s in tx.statements)
        assert tx.read_only == (not writes)
        for s in tx.statements:
            assert s.tables_read | s.tables_written
            assert (s.tables_read | s.tables_written) <= table_names
    for h in c.hybrid:
        assert not h.realtime_query.tables_written
        assert 0 <= h.insertion_index <= len(h.base.statements)
        assert h.read_only == h.base.read_only
        assert h.base in c.online


@pytest.mark.parametrize("name", sorted(CONFORMANCE))
def test_fk_targets_exist_and_composite_pks_ordered(name):
    c = load_catalog(name)
    table_names = {t.name for t in c.tables}
    for t in c.tables:
        for fk in t.foreign_keys:
            assert fk.ref_table in table_names
        assert len(t.primary_key) == len(set(t.primary_key))


def test_subscriber_composite_primary_key():
    c = load_catalog("tabenchmark")
    assert c.table("SUBSCRIBER").primary_key == ("s_id", "sf_type")


def test_inventory_dump_shape():
    inv = inventory(load_catalog("tabenchmark"))
    assert inv["counts"] == {
        "tables": 4,
        "columns": 51,
        "indexes": 5,
        "online": 7,
        "analytical": 5,
        "hybrid": 6,
    }
    assert inv["read_only_pct"]["online"] == 80.0
    assert {h["base"] for h in inv["hybrid"]} <= {t["name"] for t in inv["online"]}
