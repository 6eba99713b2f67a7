"""Deterministic initial population of a catalog's tables.

Row content is a pure function of (catalog, scale, seed): every table
draws from its own numpy stream, so identical inputs produce identical
multisets of rows. Tables load in FK-creation order, in batched inserts
inside explicit transactions.

Base cardinalities per scale unit are documented constants; only the
warehouse count (== scale) is externally meaningful.
"""

from __future__ import annotations

import time
import zlib
from dataclasses import dataclass
from datetime import datetime, timedelta

import numpy as np

from .benchspec.ddl import creation_order
from .benchspec.suites import fibenchmark as fi
from .benchspec.suites import subenchmark as su
from .benchspec.suites import tabenchmark as ta
from .benchspec.types import BenchmarkCatalog
from .driver import PooledBackend, ensure_empty
from .errors import LoadError, PreconditionError, ValidationError

DEFAULT_BATCH_SIZE = 1000

_ALPHANUM = np.array(list("abcdefghijklmnopqrstuvwxyz0123456789"))
_DIGITS = np.array(list("0123456789"))
_BASE_TS = datetime(2024, 1, 1)
_YEAR_S = 365 * 24 * 3600


def _rng(seed: int, table: str) -> np.random.Generator:
    return np.random.default_rng([seed & 0xFFFFFFFF, zlib.crc32(table.encode())])


def _strings(rng, n, length, alphabet=_ALPHANUM):
    idx = rng.integers(0, len(alphabet), size=(n, length))
    return ["".join(row) for row in alphabet[idx]]


def _timestamps(rng, n):
    offs = rng.integers(0, _YEAR_S, size=n)
    return [(_BASE_TS + timedelta(seconds=int(o))).strftime("%Y-%m-%d %H:%M:%S") for o in offs]


def _money(rng, n, lo, hi, nd=2):
    return np.round(rng.uniform(lo, hi, size=n), nd).tolist()


# ---------------------------------------------------------------------------
# subenchmark


def _su_counts(scale: int) -> dict[str, int]:
    w = su.WAREHOUSES_PER_SCALE * scale
    d = w * su.DISTRICTS_PER_WAREHOUSE
    c = d * su.CUSTOMERS_PER_DISTRICT
    o = d * su.ORDERS_PER_DISTRICT
    return {
        "WAREHOUSE": w,
        "DISTRICT": d,
        "CUSTOMER": c,
        "HISTORY": c,
        "ORDERS": o,
        "NEW_ORDER": d * su.NEW_ORDERS_PER_DISTRICT,
        "ORDER_LINE": o * su.LINES_PER_ORDER,
        "ITEM": su.ITEMS,
        "STOCK": w * su.ITEMS,
    }


def _su_rows(table: str, scale: int, seed: int):
    rng = _rng(seed, table)
    W = su.WAREHOUSES_PER_SCALE * scale
    D = su.DISTRICTS_PER_WAREHOUSE
    C = su.CUSTOMERS_PER_DISTRICT
    O = su.ORDERS_PER_DISTRICT
    delivered = O - su.NEW_ORDERS_PER_DISTRICT

    if table == "WAREHOUSE":
        names = _strings(rng, W, 8)
        s1, s2, city = _strings(rng, W, 14), _strings(rng, W, 14), _strings(rng, W, 12)
        st = _strings(rng, W, 2)
        zips = _strings(rng, W, 9, _DIGITS)
        tax = np.round(rng.uniform(0.0, 0.2, size=W), 4).tolist()
        for i in range(W):
            yield (i + 1, names[i], s1[i], s2[i], city[i], st[i], zips[i], tax[i], 300000.0)

    elif table == "DISTRICT":
        n = W * D
        names = _strings(rng, n, 8)
        s1, s2, city = _strings(rng, n, 14), _strings(rng, n, 14), _strings(rng, n, 12)
        st = _strings(rng, n, 2)
        zips = _strings(rng, n, 9, _DIGITS)
        tax = np.round(rng.uniform(0.0, 0.2, size=n), 4).tolist()
        i = 0
        for w in range(1, W + 1):
            for d in range(1, D + 1):
                yield (d, w, names[i], s1[i], s2[i], city[i], st[i], zips[i], tax[i],
                       30000.0, O + 1)
                i += 1

    elif table == "CUSTOMER":
        n = W * D * C
        first, last = _strings(rng, n, 10), _strings(rng, n, 10)
        s1, s2, city = _strings(rng, n, 14), _strings(rng, n, 14), _strings(rng, n, 12)
        st = _strings(rng, n, 2)
        zips = _strings(rng, n, 9, _DIGITS)
        phone = _strings(rng, n, 16, _DIGITS)
        since = _timestamps(rng, n)
        credit = np.where(rng.random(n) < 0.9, "GC", "BC").tolist()
        disc = np.round(rng.uniform(0.0, 0.5, size=n), 4).tolist()
        data = _strings(rng, n, 50)
        i = 0
        for w in range(1, W + 1):
            for d in range(1, D + 1):
                for c in range(1, C + 1):
                    yield (c, d, w, first[i], "OE", last[i], s1[i], s2[i], city[i],
                           st[i], zips[i], phone[i], since[i], credit[i], 50000.0,
                           disc[i], -10.0, 10.0, 1, 0, data[i])
                    i += 1

    elif table == "HISTORY":
        n = W * D * C
        dates = _timestamps(rng, n)
        data = _strings(rng, n, 12)
        i = 0
        for w in range(1, W + 1):
            for d in range(1, D + 1):
                for c in range(1, C + 1):
                    yield (c, d, w, d, w, dates[i], 10.0, data[i])
                    i += 1

    elif table == "ORDERS":
        i = 0
        for w in range(1, W + 1):
            for d in range(1, D + 1):
                cust = rng.permutation(C) + 1
                entry = _timestamps(rng, O)
                carriers = rng.integers(1, 11, size=O)
                for o in range(1, O + 1):
                    carrier = int(carriers[o - 1]) if o <= delivered else None
                    yield (o, d, w, int(cust[o - 1]), entry[o - 1], carrier,
                           su.LINES_PER_ORDER, 1)
                    i += 1

    elif table == "NEW_ORDER":
        for w in range(1, W + 1):
            for d in range(1, D + 1):
                for o in range(delivered + 1, O + 1):
                    yield (o, d, w)

    elif table == "ORDER_LINE":
        L = su.LINES_PER_ORDER
        for w in range(1, W + 1):
            for d in range(1, D + 1):
                n = O * L
                items = rng.integers(1, su.ITEMS + 1, size=n)
                qty = rng.integers(1, 11, size=n)
                amounts = _money(rng, n, 0.01, 9999.99)
                ddates = _timestamps(rng, O)
                dist = _strings(rng, n, 24)
                i = 0
                for o in range(1, O + 1):
                    dd = ddates[o - 1] if o <= delivered else None
                    for line in range(1, L + 1):
                        yield (o, d, w, line, int(items[i]), w, dd, int(qty[i]),
                               amounts[i], dist[i])
                        i += 1

    elif table == "ITEM":
        n = su.ITEMS
        im = rng.integers(1, 10001, size=n)
        names = _strings(rng, n, 14)
        price = _money(rng, n, 1.0, 100.0)
        data = _strings(rng, n, 26)
        for i in range(n):
            yield (i + 1, int(im[i]), names[i], price[i], data[i])

    elif table == "STOCK":
        for w in range(1, W + 1):
            n = su.ITEMS
            qty = rng.integers(10, 101, size=n)
            dists = [_strings(rng, n, 24) for _ in range(10)]
            data = _strings(rng, n, 26)
            for i in range(n):
                yield (i + 1, w, int(qty[i]), *(dists[k][i] for k in range(10)),
                       0, 0, 0, data[i])

    else:
        raise KeyError(table)


# ---------------------------------------------------------------------------
# fibenchmark


def _fi_counts(scale: int) -> dict[str, int]:
    n = fi.ACCOUNTS_PER_SCALE * scale
    return {"ACCOUNT": n, "SAVING": n, "CHECKING": n}


def _fi_rows(table: str, scale: int, seed: int):
    rng = _rng(seed, table)
    n = fi.ACCOUNTS_PER_SCALE * scale
    if table == "ACCOUNT":
        for cid in range(1, n + 1):
            yield (cid, f"cust{cid:016d}")
    elif table in ("SAVING", "CHECKING"):
        bal = _money(rng, n, 100.0, 50000.0)
        for cid in range(1, n + 1):
            yield (cid, bal[cid - 1])
    else:
        raise KeyError(table)


# ---------------------------------------------------------------------------
# tabenchmark


def _ta_facilities(s_id: int) -> int:
    return 1 + (s_id - 1) % ta.MAX_SF_TYPE


def _ta_access_types(s_id: int) -> int:
    return 1 + s_id % 4


def _ta_forwardings(s_id: int, sf_type: int) -> int:
    return (s_id + sf_type) % 4


def _ta_counts(scale: int) -> dict[str, int]:
    subs = ta.SUBSCRIBERS_PER_SCALE * scale
    facil = sum(_ta_facilities(s) for s in range(1, 5)) * subs // 4
    access = sum(_ta_access_types(s) for s in range(1, 5)) * subs // 4
    cf_period = sum(
        _ta_forwardings(s, sf)
        for s in range(1, 5)
        for sf in range(1, _ta_facilities(s) + 1)
    )
    return {
        "SUBSCRIBER": facil,
        "ACCESS_INFO": access,
        "SPECIAL_FACILITY": facil,
        "CALL_FORWARDING": cf_period * subs // 4,
    }


def _ta_rows(table: str, scale: int, seed: int):
    rng = _rng(seed, table)
    subs = ta.SUBSCRIBERS_PER_SCALE * scale

    if table == "SUBSCRIBER":
        n = _ta_counts(scale)["SUBSCRIBER"]
        bits = rng.integers(0, 2, size=(n, 10))
        hexes = rng.integers(0, 16, size=(n, 10))
        bytes2 = rng.integers(0, 256, size=(n, 9))
        msc = rng.integers(1, 2**21, size=n)
        vlr = rng.integers(1, 2**21, size=n)
        i = 0
        for s in range(1, subs + 1):
            nbr = ta.sub_nbr_for(s)
            for sf in range(1, _ta_facilities(s) + 1):
                yield (s, sf, nbr, *map(int, bits[i]), *map(int, hexes[i]),
                       *map(int, bytes2[i]), int(msc[i]), int(vlr[i]))
                i += 1

    elif table == "ACCESS_INFO":
        n = _ta_counts(scale)["ACCESS_INFO"]
        d1 = rng.integers(0, 256, size=n)
        d2 = rng.integers(0, 256, size=n)
        d3 = _strings(rng, n, 3)
        d4 = _strings(rng, n, 5)
        i = 0
        for s in range(1, subs + 1):
            for ai in range(1, _ta_access_types(s) + 1):
                yield (s, ai, int(d1[i]), int(d2[i]), d3[i], d4[i])
                i += 1

    elif table == "SPECIAL_FACILITY":
        n = _ta_counts(scale)["SPECIAL_FACILITY"]
        active = (rng.random(n) < 0.85).astype(int)
        err = rng.integers(0, 256, size=n)
        da = rng.integers(0, 256, size=n)
        db = _strings(rng, n, 5)
        i = 0
        for s in range(1, subs + 1):
            for sf in range(1, _ta_facilities(s) + 1):
                yield (s, sf, int(active[i]), int(err[i]), int(da[i]), db[i])
                i += 1

    elif table == "CALL_FORWARDING":
        n = _ta_counts(scale)["CALL_FORWARDING"]
        numbers = _strings(rng, n, ta.SUB_NBR_LEN, _DIGITS)
        i = 0
        for s in range(1, subs + 1):
            for sf in range(1, _ta_facilities(s) + 1):
                for j in range(_ta_forwardings(s, sf)):
                    start = 8 * j
                    yield (s, sf, start, start + 1 + (s + j) % 8, numbers[i])
                    i += 1

    else:
        raise KeyError(table)


_SUITES = {
    "subenchmark": (_su_counts, _su_rows),
    "fibenchmark": (_fi_counts, _fi_rows),
    "tabenchmark": (_ta_counts, _ta_rows),
}


# ---------------------------------------------------------------------------


def population(catalog: BenchmarkCatalog, scale: int) -> dict[str, int]:
    """Per-table initial row counts at the given scale factor."""
    if scale < 1:
        raise ValidationError(f"scale must be >= 1, got {scale}")
    try:
        counts, _ = _SUITES[catalog.name]
    except KeyError:
        raise ValidationError(f"no population plan for catalog {catalog.name!r}") from None
    return counts(scale)


def generate_rows(catalog: BenchmarkCatalog, table: str, scale: int, seed: int):
    _, rows = _SUITES[catalog.name]
    return rows(table, scale, seed)


@dataclass(frozen=True)
class TableLoad:
    table: str
    rows: int
    seconds: float

    @property
    def rows_per_s(self) -> float:
        return self.rows / self.seconds if self.seconds > 0 else float("inf")


@dataclass(frozen=True)
class LoadSummary:
    benchmark: str
    scale: int
    seed: int
    tables: tuple[TableLoad, ...]

    @property
    def total_rows(self) -> int:
        return sum(t.rows for t in self.tables)

    @property
    def total_seconds(self) -> float:
        return sum(t.seconds for t in self.tables)

    def records(self) -> list[dict]:
        return [
            {"table": t.table, "rows": t.rows, "seconds": round(t.seconds, 3),
             "rows_per_s": round(t.rows_per_s, 1)}
            for t in self.tables
        ]

    def render(self) -> str:
        lines = [f"{'table':<18} {'rows':>10} {'seconds':>9} {'rows/s':>10}"]
        for t in self.tables:
            lines.append(f"{t.table:<18} {t.rows:>10} {t.seconds:>9.3f} {t.rows_per_s:>10.1f}")
        lines.append(
            f"{'total':<18} {self.total_rows:>10} {self.total_seconds:>9.3f}"
            f" {self.total_rows / self.total_seconds if self.total_seconds else 0:>10.1f}"
        )
        return "\n".join(lines)


def populate(
    catalog: BenchmarkCatalog,
    scale: int,
    seed: int,
    backend: PooledBackend,
    batch_size: int = DEFAULT_BATCH_SIZE,
) -> LoadSummary:
    """Load the initial population. Schema must exist and be empty."""
    expected = population(catalog, scale)
    order = creation_order(catalog)
    try:
        ensure_empty(backend, [t.name for t in order])
    except PreconditionError:
        raise
    except Exception as e:
        raise PreconditionError(f"schema not ready on backend: {e}") from e

    loads = []
    for tdef in order:
        t0 = time.perf_counter()
        inserted = 0
        batch: list[tuple] = []
        offset = 0
        for row in generate_rows(catalog, tdef.name, scale, seed):
            batch.append(row)
            if len(batch) >= batch_size:
                _flush(backend, tdef, batch, offset)
                inserted += len(batch)
                offset += len(batch)
                batch = []
        if batch:
            _flush(backend, tdef, batch, offset)
            inserted += len(batch)
        assert inserted == expected[tdef.name], (
            f"{tdef.name}: generated {inserted} rows, plan says {expected[tdef.name]}"
        )
        loads.append(TableLoad(tdef.name, inserted, time.perf_counter() - t0))
    return LoadSummary(catalog.name, scale, seed, tuple(loads))


def _flush(backend, tdef, batch, offset):
    try:
        backend.insert_rows(tdef.name, tdef.column_names, batch)
    except Exception as e:
        raise LoadError(tdef.name, offset, e) from e
