"""Backend pool contracts, transaction execution, isolation validation,
and the embedded reference backend."""

import threading

import numpy as np
import pytest

from hxbench import driver
from hxbench.benchspec import emit_ddl, instantiate, load_catalog
from hxbench.benchspec.instantiate import BoundStatement, BoundTransaction
from hxbench.errors import (
    BackendUnreachableError,
    UnsupportedIsolationError,
    ValidationError,
)


def bound(name, statements, read_only=False, realtime_index=None, cls="online"):
    return BoundTransaction(
        name=name,
        workload_class=cls,
        read_only=read_only,
        statements=tuple(statements),
        realtime_index=realtime_index,
    )


def test_pool_has_requested_sessions(make_backend):
    be = make_backend(pool_size=4)
    assert be.pool_size == 4
    sessions = [be.acquire() for _ in range(4)]
    assert len({s.index for s in sessions}) == 4
    for s in sessions:
        be.release(s)


def test_pool_size_zero_rejected():
    with pytest.raises(ValidationError):
        driver.BackendTarget("embedded:///tmp/x.db", pool_size=0)


def test_malformed_descriptor_rejected():
    with pytest.raises(ValidationError):
        driver.BackendTarget("not-a-descriptor")


def test_bad_isolation_name_rejected():
    with pytest.raises(ValidationError):
        driver.BackendTarget("embedded:///tmp/x.db", isolation="chaos")


def test_embedded_smoke_loads_ddl(make_backend):
    be = make_backend(name="smoke")
    be.run_script(emit_ddl(load_catalog("subenchmark"), False))
    assert be.table_row_count("WAREHOUSE") == 0


def test_embedded_supports_all_abstract_isolations(tmp_path):
    for iso in driver.ISOLATION_LEVELS:
        be = driver.connect(
            driver.embedded_backend(str(tmp_path / f"{iso}.db"), 1, isolation=iso)
        )
        be.close()


def test_external_sqlite_rejects_weaker_isolation(tmp_path):
    # this dialect offers serializable only, mirroring backends that
    # support a single isolation level
    url = f"sqlite:///{tmp_path}/ext.db"
    with pytest.raises(UnsupportedIsolationError) as exc:
        driver.connect(driver.BackendTarget(url, pool_size=1, isolation="repeatable-read"))
    assert "snapshot" in exc.value.supported


def test_external_sqlite_happy_path(tmp_path):
    url = f"sqlite:///{tmp_path}/ext.db"
    be = driver.connect(driver.BackendTarget(url, pool_size=2, isolation="snapshot"))
    try:
        be.run_script("CREATE TABLE t (a INTEGER NOT NULL, PRIMARY KEY (a))")
        be.insert_rows("t", ("a",), [(1,), (2,)])
        assert be.table_row_count("t") == 2
        out = driver.execute_transaction(
            be, bound("probe", [BoundStatement("SELECT a FROM t WHERE a = ?", (1,), False)],
                      read_only=True)
        )
        assert out.status == "committed"
        assert out.rows_touched >= 1
    finally:
        be.close()


def test_unreachable_backend_errors():
    with pytest.raises(BackendUnreachableError):
        driver.connect(driver.BackendTarget("nosuchdialect://nowhere/db", pool_size=1))


def test_execute_readonly_outcome(populated):
    cat, be = populated("fibenchmark")
    inst = instantiate(
        next(t for t in cat.online if t.name == "Balance"), np.random.default_rng(1), 1
    )
    out = driver.execute_transaction(be, inst)
    assert out.status == "committed"
    assert out.rows_touched >= 1
    assert out.latency_us > 0
    assert out.latency_us >= out.max_statement_us


def test_execute_missing_table_reports_statement_index(populated):
    _, be = populated("fibenchmark")
    inst = bound(
        "broken",
        [
            BoundStatement("SELECT custid FROM ACCOUNT WHERE custid = ?", (1,), False),
            BoundStatement("SELECT * FROM NO_SUCH_TABLE", (), False),
        ],
        read_only=True,
    )
    out = driver.execute_transaction(be, inst)
    assert out.status == "failed"
    assert out.failed_statement == 1


def test_failed_write_rolls_back_prior_statements(populated):
    cat, be = populated("fibenchmark", name="rollback")
    before = driver.table_checksum(be, "CHECKING")
    inst = bound(
        "half-write",
        [
            BoundStatement("UPDATE CHECKING SET bal = bal + 100 WHERE custid = ?", (1,), True),
            BoundStatement("INSERT INTO NOPE VALUES (1)", (), True),
        ],
    )
    out = driver.execute_transaction(be, inst)
    assert out.status == "failed"
    assert driver.table_checksum(be, "CHECKING") == before


def test_hybrid_single_commit_covers_realtime_query(populated):
    cat, be = populated("subenchmark")
    h = next(x for x in cat.hybrid if x.name == "X1")
    inst = instantiate(h, np.random.default_rng(42), 1)
    orders_before = be.table_row_count("ORDERS")
    out = driver.execute_transaction(be, inst)
    assert out.status == "committed"
    assert out.attempts == 1
    assert be.table_row_count("ORDERS") == orders_before + 1


def test_abort_after_realtime_query_restores_state(populated):
    cat, be = populated("subenchmark", name="abortprobe")
    h = next(x for x in cat.hybrid if x.name == "X1")
    tables = [t.name for t in cat.tables]
    before = driver.database_checksums(be, tables)
    inst = instantiate(h, np.random.default_rng(7), 1)
    # writes happen before the real-time query in this hybrid
    assert any(s.writes for s in inst.statements[: inst.realtime_index])
    out = driver.execute_transaction(be, inst, abort_after=inst.realtime_index)
    assert out.status == "aborted-retryable"
    assert out.rows_touched == 0
    assert driver.database_checksums(be, tables) == before


def test_concurrent_conflicting_writes_serialize_without_lost_updates(populated, monkeypatch):
    _, be = populated("fibenchmark", pool_size=4, name="conflict")
    rounds = 40
    errors = []

    def hammer():
        for _ in range(rounds):
            inst = bound(
                "bump",
                [BoundStatement(
                    "UPDATE CHECKING SET bal = bal + 1 WHERE custid = ?", (1,), True
                )],
            )
            out = driver.execute_transaction(be, inst, max_retries=50)
            if out.status != "committed":
                errors.append(out)

    base = be.fetch_all("SELECT bal FROM CHECKING WHERE custid = 1")[0][0]
    threads = [threading.Thread(target=hammer) for _ in range(2)]
    for t in threads:
        t.start()
    for t in threads:
        t.join()
    assert not errors
    final = be.fetch_all("SELECT bal FROM CHECKING WHERE custid = 1")[0][0]
    # writers held the lock one at a time: no lost updates
    assert final == pytest.approx(base + 2 * rounds)


def test_write_conflict_aborts_when_lock_unavailable(tmp_path, monkeypatch):
    monkeypatch.setattr(driver, "_BUSY_TIMEOUT_MS", 1)
    cat = load_catalog("fibenchmark")
    target = driver.embedded_backend(str(tmp_path / "busy.db"), pool_size=2)
    be = driver.connect(target)
    try:
        be.run_script(emit_ddl(cat, False))
        be.insert_rows("CHECKING", ("custid", "bal"), [(1, 0.0)])
        s = be.acquire()  # hold the write lock on one session
        s.begin(True)
        s.execute("UPDATE CHECKING SET bal = bal + 1 WHERE custid = 1", ())
        inst = bound(
            "contender",
            [BoundStatement("UPDATE CHECKING SET bal = bal + 1 WHERE custid = ?", (1,), True)],
        )
        out = driver.execute_transaction(be, inst, max_retries=2)
        assert out.status == "aborted-retryable"
        assert out.attempts == 3  # initial try + 2 retries
        s.rollback()
        be.release(s)
    finally:
        be.close()


def test_pool_fairness_all_sessions_used(populated):
    cat, be = populated("fibenchmark", pool_size=2, name="fair")
    balance = next(t for t in cat.online if t.name == "Balance")

    def worker(seed):
        inst = instantiate(balance, np.random.default_rng(seed), 1)
        driver.execute_transaction(be, inst)

    threads = [threading.Thread(target=worker, args=(i,)) for i in range(8)]
    for t in threads:
        t.start()
    for t in threads:
        t.join()
    uses = be.session_use_counts()
    assert sum(uses) >= 8
    assert all(u > 0 for u in uses)  # no session idled through the burst


def test_checksum_order_independent(make_backend):
    a = make_backend(name="ck_a")
    b = make_backend(name="ck_b")
    for be in (a, b):
        be.run_script("CREATE TABLE t (x INTEGER NOT NULL, y VARCHAR(4))")
    a.insert_rows("t", ("x", "y"), [(1, "a"), (2, "b"), (3, None)])
    b.insert_rows("t", ("x", "y"), [(3, None), (1, "a"), (2, "b")])
    assert driver.table_checksum(a, "t") == driver.table_checksum(b, "t")
