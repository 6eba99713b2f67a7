"""tabenchmark: the telecom suite.

Home-location-register style schema with the seven subscriber
transactions. SUBSCRIBER carries the composite primary key
(s_id, sf_type): one row per subscriber facility, with sub_nbr a
function of s_id alone (every facility row of a subscriber shares the
dialable number). ACCESS_INFO is read-only for the online side, so
analytical and real-time statements never touch it. Real-time queries
mix aggregation with fuzzy sub-string search.
"""

from ..types import (
    BenchmarkCatalog,
    ForeignKey,
    HybridTemplate,
    ParamBinding,
    ScaledId,
    TableDef,
)
from ._helpers import SID, SP, U, col, online_txn, query, stmt

SUBSCRIBERS_PER_SCALE = 1000
MAX_SF_TYPE = 4
SUB_NBR_LEN = 15


def NBR(share=None):
    """A populated subscriber number: scaled id in dialable form."""
    return ParamBinding(ScaledId(SUBSCRIBERS_PER_SCALE, pad=SUB_NBR_LEN), share)


def sub_nbr_for(s_id: int) -> str:
    return str(s_id).zfill(SUB_NBR_LEN)


def _tables():
    sub_cols = [
        col("s_id", "integer"),
        col("sf_type", "integer"),
        col("sub_nbr", f"varchar({SUB_NBR_LEN})"),
    ]
    sub_cols += [col(f"bit_{i}", "integer") for i in range(1, 11)]
    sub_cols += [col(f"hex_{i}", "integer") for i in range(1, 11)]
    sub_cols += [col(f"byte2_{i}", "integer") for i in range(1, 10)]
    sub_cols += [col("msc_location", "integer"), col("vlr_location", "integer")]
    return (
        TableDef(
            "SUBSCRIBER",
            tuple(sub_cols),
            primary_key=("s_id", "sf_type"),
            indexes=(("sub_nbr",), ("vlr_location",)),
        ),
        TableDef(
            "ACCESS_INFO",
            (
                col("s_id", "integer"),
                col("ai_type", "integer"),
                col("data1", "integer"),
                col("data2", "integer"),
                col("data3", "varchar(3)"),
                col("data4", "varchar(5)"),
            ),
            primary_key=("s_id", "ai_type"),
            # No FK: s_id alone is not a unique key of SUBSCRIBER.
        ),
        TableDef(
            "SPECIAL_FACILITY",
            (
                col("s_id", "integer"),
                col("sf_type", "integer"),
                col("is_active", "integer"),
                col("error_cntrl", "integer"),
                col("data_a", "integer"),
                col("data_b", "varchar(5)"),
            ),
            primary_key=("s_id", "sf_type"),
            indexes=(("is_active",),),
            foreign_keys=(
                ForeignKey(("s_id", "sf_type"), "SUBSCRIBER", ("s_id", "sf_type")),
            ),
        ),
        TableDef(
            "CALL_FORWARDING",
            (
                col("s_id", "integer"),
                col("sf_type", "integer"),
                col("start_time", "integer"),
                col("end_time", "integer"),
                col("numberx", f"varchar({SUB_NBR_LEN})"),
            ),
            primary_key=("s_id", "sf_type", "start_time"),
            indexes=(("start_time",), ("numberx",)),
            foreign_keys=(
                ForeignKey(
                    ("s_id", "sf_type"), "SPECIAL_FACILITY", ("s_id", "sf_type")
                ),
            ),
        ),
    )


def _online():
    S = SUBSCRIBERS_PER_SCALE
    by_nbr = "(SELECT s_id FROM SUBSCRIBER WHERE sub_nbr = ?)"
    return (
        online_txn(
            "DeleteCallForwarding",
            [
                stmt(
                    "SELECT DISTINCT s_id FROM SUBSCRIBER WHERE sub_nbr = ?",
                    reads=("SUBSCRIBER",),
                    params=(NBR("nbr"),),
                ),
                stmt(
                    f"DELETE FROM CALL_FORWARDING WHERE s_id IN {by_nbr}"
                    " AND sf_type = ? AND start_time = ? * 8",
                    reads=("SUBSCRIBER", "CALL_FORWARDING"),
                    writes=("CALL_FORWARDING",),
                    params=(NBR("nbr"), U(1, MAX_SF_TYPE), U(0, 2, "slot")),
                ),
            ],
            weight=2,
        ),
        online_txn(
            "GetAccessData",
            [
                stmt(
                    "SELECT data1, data2, data3, data4 FROM ACCESS_INFO"
                    " WHERE s_id = ? AND ai_type = ?",
                    reads=("ACCESS_INFO",),
                    params=(SID(S), U(1, 4)),
                )
            ],
            weight=35,
        ),
        online_txn(
            "GetNewDestination",
            [
                stmt(
                    "SELECT cf.numberx FROM SPECIAL_FACILITY sf"
                    " JOIN CALL_FORWARDING cf ON cf.s_id = sf.s_id AND cf.sf_type = sf.sf_type"
                    " WHERE sf.s_id = ? AND sf.sf_type = ? AND sf.is_active = 1"
                    " AND cf.start_time <= ? AND cf.end_time > ?",
                    reads=("SPECIAL_FACILITY", "CALL_FORWARDING"),
                    params=(SID(S), U(1, MAX_SF_TYPE), U(0, 23, "t"), U(0, 23, "t")),
                )
            ],
            weight=10,
        ),
        online_txn(
            "GetSubscriberData",
            [
                stmt(
                    "SELECT * FROM SUBSCRIBER WHERE s_id = ?",
                    reads=("SUBSCRIBER",),
                    params=(SID(S),),
                )
            ],
            weight=35,
        ),
        online_txn(
            "InsertCallForwarding",
            [
                stmt(
                    "SELECT DISTINCT s_id FROM SUBSCRIBER WHERE sub_nbr = ?",
                    reads=("SUBSCRIBER",),
                    params=(NBR("nbr"),),
                ),
                stmt(
                    "SELECT sf_type FROM SPECIAL_FACILITY WHERE s_id = " + by_nbr,
                    reads=("SPECIAL_FACILITY", "SUBSCRIBER"),
                    params=(NBR("nbr"),),
                ),
                stmt(
                    "INSERT INTO CALL_FORWARDING (s_id, sf_type, start_time, end_time, numberx)"
                    " SELECT DISTINCT s_id, ?, ? * 8, ? * 8 + ?, ? FROM SUBSCRIBER"
                    " WHERE sub_nbr = ?"
                    " AND EXISTS (SELECT 1 FROM SPECIAL_FACILITY sf WHERE sf.s_id = SUBSCRIBER.s_id"
                    " AND sf.sf_type = ?)"
                    " AND NOT EXISTS (SELECT 1 FROM CALL_FORWARDING cf WHERE cf.s_id = SUBSCRIBER.s_id"
                    " AND cf.sf_type = ? AND cf.start_time = ? * 8)",
                    reads=("SUBSCRIBER", "SPECIAL_FACILITY", "CALL_FORWARDING"),
                    writes=("CALL_FORWARDING",),
                    params=(
                        U(1, MAX_SF_TYPE, "sf"),
                        U(0, 2, "slot"),
                        U(0, 2, "slot"),
                        U(1, 8),
                        NBR(),
                        NBR("nbr"),
                        U(1, MAX_SF_TYPE, "sf"),
                        U(1, MAX_SF_TYPE, "sf"),
                        U(0, 2, "slot"),
                    ),
                ),
            ],
            weight=2,
        ),
        online_txn(
            "UpdateLocation",
            [
                stmt(
                    "UPDATE SUBSCRIBER SET vlr_location = ? WHERE sub_nbr = ?",
                    reads=("SUBSCRIBER",),
                    writes=("SUBSCRIBER",),
                    params=(U(1, 2**21), NBR()),
                )
            ],
            weight=14,
        ),
        online_txn(
            "UpdateSubscriberData",
            [
                stmt(
                    "UPDATE SUBSCRIBER SET bit_1 = ? WHERE s_id = ?",
                    reads=("SUBSCRIBER",),
                    writes=("SUBSCRIBER",),
                    params=(U(0, 1), SID(S, "s")),
                ),
                stmt(
                    "UPDATE SPECIAL_FACILITY SET data_a = ? WHERE s_id = ? AND sf_type = ?",
                    reads=("SPECIAL_FACILITY",),
                    writes=("SPECIAL_FACILITY",),
                    params=(U(0, 255), SID(S, "s"), U(1, MAX_SF_TYPE)),
                ),
            ],
            weight=2,
        ),
    )


def _analytical():
    return (
        # Active-facility share per facility type, in percent.
        query(
            "Q1",
            "SELECT sf_type, SUM(is_active) * 100.0 / COUNT(*) FROM SPECIAL_FACILITY"
            " GROUP BY sf_type ORDER BY sf_type",
            reads=("SPECIAL_FACILITY",),
        ),
        query(
            "Q2",
            "SELECT AVG(end_time - start_time), MAX(end_time - start_time)"
            " FROM CALL_FORWARDING WHERE start_time >= ?",
            reads=("CALL_FORWARDING",),
            params=(U(0, 8),),
        ),
        # Mean call-forwarding start time, for load forecasting.
        query(
            "Q3",
            "SELECT AVG(start_time) FROM CALL_FORWARDING",
            reads=("CALL_FORWARDING",),
        ),
        query(
            "Q4",
            "SELECT cf.s_id, COUNT(*) FROM CALL_FORWARDING cf GROUP BY cf.s_id"
            " HAVING COUNT(*) > (SELECT COUNT(*) * 1.0 / COUNT(DISTINCT s_id)"
            " FROM CALL_FORWARDING) ORDER BY 2 DESC",
            reads=("CALL_FORWARDING",),
        ),
        query(
            "Q5",
            "SELECT vlr_location % 1024 AS area, COUNT(DISTINCT s_id) FROM SUBSCRIBER"
            " GROUP BY area ORDER BY 2 DESC",
            reads=("SUBSCRIBER",),
        ),
    )


def _hybrids(online):
    by_name = {t.name: t for t in online}
    return (
        HybridTemplate(
            "X1",
            base=by_name["UpdateLocation"],
            realtime_query=stmt(
                "SELECT COUNT(DISTINCT s_id) FROM SUBSCRIBER WHERE vlr_location BETWEEN ? AND ?",
                reads=("SUBSCRIBER",),
                params=(U(1, 2**20), U(2**20, 2**21)),
            ),
            insertion_index=0,
            weight=30,
        ),
        HybridTemplate(
            "X2",
            base=by_name["InsertCallForwarding"],
            realtime_query=stmt(
                "SELECT COUNT(*) FROM CALL_FORWARDING WHERE sf_type = ?",
                reads=("CALL_FORWARDING",),
                params=(U(1, MAX_SF_TYPE),),
            ),
            insertion_index=2,
            weight=15,
        ),
        HybridTemplate(
            "X3",
            base=by_name["DeleteCallForwarding"],
            realtime_query=stmt(
                "SELECT AVG(end_time - start_time) FROM CALL_FORWARDING",
                reads=("CALL_FORWARDING",),
            ),
            insertion_index=1,
            weight=15,
        ),
        HybridTemplate(
            "X4",
            base=by_name["GetNewDestination"],
            realtime_query=stmt(
                "SELECT COUNT(*) FROM SPECIAL_FACILITY WHERE is_active = 1",
                reads=("SPECIAL_FACILITY",),
            ),
            insertion_index=1,
            weight=10,
        ),
        HybridTemplate(
            "X5",
            base=by_name["GetAccessData"],
            realtime_query=stmt(
                "SELECT AVG(msc_location) FROM SUBSCRIBER WHERE s_id BETWEEN ? AND ?",
                reads=("SUBSCRIBER",),
                params=(U(1, 500), U(500, 1000)),
            ),
            insertion_index=1,
            weight=10,
        ),
        # Aggregate plus fuzzy sub-string match over subscriber numbers.
        HybridTemplate(
            "X6",
            base=by_name["GetSubscriberData"],
            realtime_query=stmt(
                "SELECT COUNT(*) FROM SUBSCRIBER WHERE sub_nbr LIKE ?",
                reads=("SUBSCRIBER",),
                params=(SP("%###%"),),
            ),
            insertion_index=1,
            weight=20,
        ),
    )


def build_tabenchmark() -> BenchmarkCatalog:
    online = _online()
    return BenchmarkCatalog(
        name="tabenchmark",
        tables=_tables(),
        online=online,
        analytical=_analytical(),
        hybrid=_hybrids(online),
    )
