"""Backend abstraction: connection pooling, transaction demarcation,
statement execution, and an embedded SQLite reference backend so the
whole suite runs at desk scale.

Connection descriptors:
    embedded://<path>          file-backed SQLite database (path created
                               on first connect; empty path -> temp file)
    <dialect>://host:port/db?user=&pass=   any SQL backend SQLAlchemy can
                               reach (user/pass map to the URL credentials)

Each pooled session is used by exactly one agent at a time; checkout is
FIFO, so no session idles while requests wait. SQLite executes under its
serializable locking model, which satisfies any of the three requestable
isolation levels; external dialects are validated at connect time and
reject levels they cannot provide, reporting the supported set.
"""

from __future__ import annotations

import hashlib
import queue
import sqlite3
import threading
import time
import urllib.parse
from dataclasses import dataclass
from pathlib import Path

from .benchspec.instantiate import BoundTransaction
from .errors import (
    BackendUnreachableError,
    PreconditionError,
    UnsupportedIsolationError,
    ValidationError,
)

EMBEDDED = "embedded"
EXTERNAL = "external-sql"

ISOLATION_LEVELS = ("read-committed", "repeatable-read", "snapshot")

# SQLAlchemy naming for the abstract levels.
_SA_ISOLATION = {
    "read-committed": "READ COMMITTED",
    "repeatable-read": "REPEATABLE READ",
    "snapshot": "SERIALIZABLE",
}

COMMITTED = "committed"
ABORTED_RETRYABLE = "aborted-retryable"
FAILED = "failed"

DEFAULT_MAX_RETRIES = 3
_BUSY_TIMEOUT_MS = 20_000


@dataclass(frozen=True)
class BackendTarget:
    descriptor: str
    pool_size: int = 8
    isolation: str = "read-committed"

    def __post_init__(self):
        if self.pool_size < 1:
            raise ValidationError(f"pool_size must be >= 1, got {self.pool_size}")
        if self.isolation not in ISOLATION_LEVELS:
            raise ValidationError(
                f"isolation must be one of {ISOLATION_LEVELS}, got {self.isolation!r}"
            )
        if "://" not in self.descriptor:
            raise ValidationError(f"malformed descriptor {self.descriptor!r}")

    @property
    def kind(self) -> str:
        return EMBEDDED if self.descriptor.startswith("embedded://") else EXTERNAL


@dataclass(frozen=True)
class ExecutionOutcome:
    status: str
    rows_touched: int
    latency_us: int
    attempts: int = 1
    failed_statement: int | None = None
    max_statement_us: int = 0


def embedded_backend(path: str | None = None, pool_size: int = 8,
                     isolation: str = "read-committed") -> BackendTarget:
    """In-process reference backend (SQLite file database)."""
    if path is None:
        import tempfile

        fd = tempfile.NamedTemporaryFile(prefix="hxbench_", suffix=".db", delete=False)
        path = fd.name
        fd.close()
    return BackendTarget(f"embedded://{path}", pool_size=pool_size, isolation=isolation)


class _Session:
    """One backend connection plus its statement adapter."""

    def __init__(self, index, execute, executemany, begin, commit, rollback, close):
        self.index = index
        self.execute = execute          # (sql, params) -> rowcount-ish, rows fetched
        self.executemany = executemany  # (sql, seq_of_params) -> None
        self.begin = begin              # (writes: bool) -> None
        self.commit = commit
        self.rollback = rollback
        self.close = close
        self.uses = 0


class PooledBackend:
    """Fixed set of sessions shared across agents; FIFO checkout."""

    def __init__(self, target: BackendTarget, sessions: list[_Session], closer=None):
        self.target = target
        self._q: queue.Queue[_Session] = queue.Queue()
        self._sessions = sessions
        self._closer = closer
        self._lock = threading.Lock()
        self.checkouts = 0
        for s in sessions:
            self._q.put(s)

    @property
    def pool_size(self) -> int:
        return len(self._sessions)

    def acquire(self) -> _Session:
        s = self._q.get()
        with self._lock:
            self.checkouts += 1
            s.uses += 1
        return s

    def release(self, s: _Session):
        self._q.put(s)

    def session_use_counts(self) -> list[int]:
        return [s.uses for s in self._sessions]

    def close(self):
        for s in self._sessions:
            try:
                s.close()
            except Exception:
                pass
        if self._closer:
            self._closer()

    # -- script / bulk helpers -------------------------------------------

    def run_script(self, script: str):
        s = self.acquire()
        try:
            s.begin(True)
            for statement in _split_script(script):
                s.execute(statement, ())
            s.commit()
        except Exception:
            s.rollback()
            raise
        finally:
            self.release(s)

    def table_row_count(self, table: str) -> int:
        s = self.acquire()
        try:
            s.begin(False)
            _, rows = s.execute(f"SELECT COUNT(*) FROM {table}", ())
            s.commit()
            return int(rows[0][0])
        finally:
            self.release(s)

    def insert_rows(self, table: str, columns: tuple[str, ...], rows: list[tuple]):
        placeholders = ", ".join("?" * len(columns))
        sql = f"INSERT INTO {table} ({', '.join(columns)}) VALUES ({placeholders})"
        s = self.acquire()
        try:
            s.begin(True)
            s.executemany(sql, rows)
            s.commit()
        except Exception:
            s.rollback()
            raise
        finally:
            self.release(s)

    def fetch_all(self, sql: str, params: tuple = ()):
        s = self.acquire()
        try:
            s.begin(False)
            _, rows = s.execute(sql, params)
            s.commit()
            return rows
        finally:
            self.release(s)


def _split_script(script: str):
    return [part.strip() for part in script.split(";") if part.strip()]


# ---------------------------------------------------------------------------
# Embedded (sqlite3)


def _connect_embedded(target: BackendTarget) -> PooledBackend:
    path = target.descriptor[len("embedded://"):]
    if not path:
        raise ValidationError("embedded descriptor needs a file path")
    Path(path).parent.mkdir(parents=True, exist_ok=True)
    sessions = []
    for i in range(target.pool_size):
        try:
            conn = sqlite3.connect(
                path,
                timeout=_BUSY_TIMEOUT_MS / 1000,
                isolation_level=None,  # explicit BEGIN/COMMIT
                check_same_thread=False,
                cached_statements=512,  # per-session prepared-statement cache
            )
        except sqlite3.Error as e:
            raise BackendUnreachableError(f"cannot open embedded database {path}: {e}") from e
        conn.execute(f"PRAGMA busy_timeout = {_BUSY_TIMEOUT_MS}")
        conn.execute("PRAGMA synchronous = NORMAL")
        conn.execute("PRAGMA foreign_keys = ON")
        sessions.append(_make_sqlite_session(i, conn))
    return PooledBackend(target, sessions)


def _make_sqlite_session(index: int, conn: sqlite3.Connection) -> _Session:
    def execute(sql, params):
        cur = conn.execute(sql, params)
        rows = cur.fetchall() if cur.description is not None else []
        touched = cur.rowcount if cur.rowcount and cur.rowcount > 0 else 0
        return touched + len(rows), rows

    def executemany(sql, seq):
        conn.executemany(sql, seq)

    def begin(writes):
        # writers take the reserved lock up front to avoid deadlocks with
        # read-then-write upgrades
        conn.execute("BEGIN IMMEDIATE" if writes else "BEGIN")

    return _Session(
        index,
        execute,
        executemany,
        begin,
        commit=lambda: conn.execute("COMMIT"),
        rollback=lambda: _safe_rollback(conn),
        close=conn.close,
    )


def _safe_rollback(conn):
    try:
        conn.execute("ROLLBACK")
    except sqlite3.Error:
        pass


# ---------------------------------------------------------------------------
# External (SQLAlchemy)


def _qmark_to_named(sql: str) -> tuple[str, list[int]]:
    """Rewrite ? placeholders to :p0..:pN outside string literals."""
    out = []
    order = []
    n = 0
    in_str = False
    for ch in sql:
        if ch == "'":
            in_str = not in_str
            out.append(ch)
        elif ch == "?" and not in_str:
            out.append(f":p{n}")
            order.append(n)
            n += 1
        else:
            out.append(ch)
    return "".join(out), order


def _connect_external(target: BackendTarget) -> PooledBackend:
    import sqlalchemy
    from sqlalchemy import create_engine, text

    url = _to_sqlalchemy_url(target.descriptor)
    level = _SA_ISOLATION[target.isolation]
    try:
        engine = create_engine(url, poolclass=sqlalchemy.pool.NullPool)
        raw = engine.raw_connection()
        try:
            dialect_levels = engine.dialect.get_isolation_level_values(raw.dbapi_connection)
        finally:
            raw.close()
    except Exception as e:
        raise BackendUnreachableError(f"cannot reach backend {target.descriptor!r}: {e}") from e
    if level not in dialect_levels:
        supported = sorted(
            k for k, v in _SA_ISOLATION.items() if v in dialect_levels
        ) or [lv.lower().replace(" ", "-") for lv in dialect_levels]
        engine.dispose()
        raise UnsupportedIsolationError(target.isolation, supported)
    engine.dispose()
    engine = create_engine(
        url,
        isolation_level=level,
        pool_size=target.pool_size,
        max_overflow=0,
        poolclass=sqlalchemy.pool.QueuePool,
    )

    sessions = []
    try:
        for i in range(target.pool_size):
            conn = engine.connect()
            sessions.append(_make_sa_session(i, conn, text))
    except Exception as e:
        for s in sessions:
            s.close()
        engine.dispose()
        raise BackendUnreachableError(f"cannot reach backend {target.descriptor!r}: {e}") from e
    return PooledBackend(target, sessions, closer=engine.dispose)


def _make_sa_session(index, conn, text) -> _Session:
    state = {"tx": None}

    def execute(sql, params):
        named, order = _qmark_to_named(sql)
        result = conn.execute(text(named), {f"p{i}": params[i] for i in order})
        rows = result.fetchall() if result.returns_rows else []
        touched = result.rowcount if result.rowcount and result.rowcount > 0 else 0
        return touched + len(rows), [tuple(r) for r in rows]

    def executemany(sql, seq):
        named, order = _qmark_to_named(sql)
        conn.execute(text(named), [{f"p{i}": row[i] for i in order} for row in seq])

    def begin(writes):
        state["tx"] = conn.begin()

    def commit():
        if state["tx"] is not None:
            state["tx"].commit()
            state["tx"] = None

    def rollback():
        if state["tx"] is not None:
            try:
                state["tx"].rollback()
            finally:
                state["tx"] = None

    return _Session(index, execute, executemany, begin, commit, rollback, conn.close)


def _to_sqlalchemy_url(descriptor: str) -> str:
    parsed = urllib.parse.urlsplit(descriptor)
    qs = urllib.parse.parse_qs(parsed.query)
    user = qs.pop("user", [None])[0]
    password = qs.pop("pass", [None])[0]
    if user is None and password is None:
        return descriptor  # already a plain URL (incl. path-style dialects)
    netloc = parsed.netloc
    if user:
        cred = urllib.parse.quote(user)
        if password:
            cred += ":" + urllib.parse.quote(password)
        netloc = f"{cred}@{netloc}"
    query = urllib.parse.urlencode({k: v[0] for k, v in qs.items()})
    return urllib.parse.urlunsplit((parsed.scheme, netloc, parsed.path, query, ""))


# ---------------------------------------------------------------------------


def connect(target: BackendTarget) -> PooledBackend:
    """Open pool_size independent sessions at the requested isolation."""
    if target.kind == EMBEDDED:
        return _connect_embedded(target)
    return _connect_external(target)


_RETRYABLE_SQLITE = ("database is locked", "database table is locked", "busy")


def _is_retryable(exc: Exception) -> bool:
    if isinstance(exc, sqlite3.OperationalError):
        msg = str(exc).lower()
        return any(s in msg for s in _RETRYABLE_SQLITE)
    name = type(exc).__name__
    return name in ("OperationalError", "DBAPIError") and "deadlock" in str(exc).lower()


def execute_transaction(
    backend: PooledBackend,
    instance: BoundTransaction,
    abort_after: int | None = None,
    max_retries: int = DEFAULT_MAX_RETRIES,
) -> ExecutionOutcome:
    """Run all statements of a bound instance in one transaction.

    One BEGIN, one COMMIT (or ROLLBACK). Retryable aborts are retried up
    to max_retries times with the total latency folded into the final
    sample, measured from first statement submission to commit
    acknowledgment. `abort_after` injects a rollback after the statement
    at that index has executed (fault-injection hook for atomicity
    probes).
    """
    start = time.perf_counter()
    attempts = 0
    while True:
        attempts += 1
        session = backend.acquire()
        max_stmt = 0.0
        rows_touched = 0
        try:
            failed_at = None
            try:
                session.begin(instance.writes)
                for i, s in enumerate(instance.statements):
                    t0 = time.perf_counter()
                    failed_at = i
                    touched, _ = session.execute(s.sql_text, s.params)
                    rows_touched += touched
                    max_stmt = max(max_stmt, time.perf_counter() - t0)
                    if abort_after is not None and i >= abort_after:
                        session.rollback()
                        return ExecutionOutcome(
                            status=ABORTED_RETRYABLE,
                            rows_touched=0,
                            latency_us=_us(start),
                            attempts=attempts,
                            failed_statement=None,
                            max_statement_us=int(max_stmt * 1e6),
                        )
                failed_at = None
                session.commit()
            except Exception as e:
                session.rollback()
                if _is_retryable(e):
                    if attempts <= max_retries:
                        continue
                    return ExecutionOutcome(
                        status=ABORTED_RETRYABLE,
                        rows_touched=0,
                        latency_us=_us(start),
                        attempts=attempts,
                        max_statement_us=int(max_stmt * 1e6),
                    )
                return ExecutionOutcome(
                    status=FAILED,
                    rows_touched=0,
                    latency_us=_us(start),
                    attempts=attempts,
                    failed_statement=failed_at,
                    max_statement_us=int(max_stmt * 1e6),
                )
            return ExecutionOutcome(
                status=COMMITTED,
                rows_touched=rows_touched,
                latency_us=_us(start),
                attempts=attempts,
                max_statement_us=int(max_stmt * 1e6),
            )
        finally:
            backend.release(session)


def _us(start: float) -> int:
    return max(1, int((time.perf_counter() - start) * 1e6))


# ---------------------------------------------------------------------------
# State digests


def table_checksum(backend: PooledBackend, table: str) -> str:
    """Order-independent multiset digest of a table's rows."""
    rows = backend.fetch_all(f"SELECT * FROM {table}")
    acc = 0
    for row in rows:
        canon = "\x1f".join(_canon(v) for v in row)
        digest = hashlib.sha256(canon.encode("utf-8")).digest()[:16]
        acc = (acc + int.from_bytes(digest, "big")) % (1 << 128)
    return f"{len(rows):08d}-{acc:032x}"


def _canon(value) -> str:
    if value is None:
        return "\\N"
    if isinstance(value, float):
        return repr(value)
    return str(value)


def database_checksums(backend: PooledBackend, tables) -> dict[str, str]:
    return {t: table_checksum(backend, t) for t in tables}


def ensure_empty(backend: PooledBackend, tables):
    nonempty = [t for t in tables if backend.table_row_count(t) > 0]
    if nonempty:
        raise PreconditionError(
            "tables must be empty before population: " + ", ".join(nonempty)
        )
