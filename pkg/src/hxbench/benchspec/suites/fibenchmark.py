"""fibenchmark: the banking suite.

Three-table account schema with the six classic banking transactions
(Amalgamate, Balance, DepositChecking, SendPayment, TransactSavings,
WriteCheck), keyed by customer id. ACCOUNT is only read by the online
side, so analytical and real-time statements stay on SAVING/CHECKING.
"""

from ..types import BenchmarkCatalog, ForeignKey, HybridTemplate, TableDef
from ._helpers import SID, U, col, online_txn, query, stmt

ACCOUNTS_PER_SCALE = 1000

_HOLDINGS = (
    "SELECT s.custid, s.bal + c.bal FROM SAVING s"
    " JOIN CHECKING c ON c.custid = s.custid WHERE s.custid = ?"
)


def _tables():
    fk_account = lambda: (ForeignKey(("custid",), "ACCOUNT", ("custid",)),)  # noqa: E731
    return (
        TableDef(
            "ACCOUNT",
            (col("custid", "integer"), col("name", "varchar(24)")),
            primary_key=("custid",),
            indexes=(("name",), ("name", "custid")),
        ),
        TableDef(
            "SAVING",
            (col("custid", "integer"), col("bal", "decimal(12,2)")),
            primary_key=("custid",),
            indexes=(("bal",),),
            foreign_keys=fk_account(),
        ),
        TableDef(
            "CHECKING",
            (col("custid", "integer"), col("bal", "decimal(12,2)")),
            primary_key=("custid",),
            indexes=(("bal",),),
            foreign_keys=fk_account(),
        ),
    )


def _online():
    A = ACCOUNTS_PER_SCALE
    return (
        online_txn(
            "Amalgamate",
            [
                stmt(_HOLDINGS, reads=("SAVING", "CHECKING"), params=(SID(A, "src"),)),
                stmt(
                    "UPDATE CHECKING SET bal = bal + (SELECT s.bal + c2.bal FROM SAVING s"
                    " JOIN CHECKING c2 ON c2.custid = s.custid WHERE s.custid = ?)"
                    " WHERE custid = ?",
                    reads=("SAVING", "CHECKING"),
                    writes=("CHECKING",),
                    params=(SID(A, "src"), SID(A, "dst")),
                ),
                stmt(
                    "UPDATE SAVING SET bal = 0 WHERE custid = ?",
                    reads=("SAVING",),
                    writes=("SAVING",),
                    params=(SID(A, "src"),),
                ),
                stmt(
                    "UPDATE CHECKING SET bal = 0 WHERE custid = ?",
                    reads=("CHECKING",),
                    writes=("CHECKING",),
                    params=(SID(A, "src"),),
                ),
            ],
            weight=17,
        ),
        online_txn(
            "Balance",
            [
                stmt(
                    "SELECT a.name, s.bal + c.bal FROM ACCOUNT a"
                    " JOIN SAVING s ON s.custid = a.custid"
                    " JOIN CHECKING c ON c.custid = a.custid WHERE a.custid = ?",
                    reads=("ACCOUNT", "SAVING", "CHECKING"),
                    params=(SID(A),),
                )
            ],
            weight=15,
        ),
        online_txn(
            "DepositChecking",
            [
                stmt(
                    "SELECT name FROM ACCOUNT WHERE custid = ?",
                    reads=("ACCOUNT",),
                    params=(SID(A, "c"),),
                ),
                stmt(
                    "UPDATE CHECKING SET bal = bal + ? WHERE custid = ?",
                    reads=("CHECKING",),
                    writes=("CHECKING",),
                    params=(U(1, 100, "amt"), SID(A, "c")),
                ),
            ],
            weight=17,
        ),
        online_txn(
            "SendPayment",
            [
                stmt(
                    "SELECT bal FROM CHECKING WHERE custid = ?",
                    reads=("CHECKING",),
                    params=(SID(A, "src"),),
                ),
                stmt(
                    "UPDATE CHECKING SET bal = bal - ? WHERE custid = ?",
                    reads=("CHECKING",),
                    writes=("CHECKING",),
                    params=(U(1, 100, "amt"), SID(A, "src")),
                ),
                stmt(
                    "UPDATE CHECKING SET bal = bal + ? WHERE custid = ?",
                    reads=("CHECKING",),
                    writes=("CHECKING",),
                    params=(U(1, 100, "amt"), SID(A, "dst")),
                ),
            ],
            weight=17,
        ),
        online_txn(
            "TransactSavings",
            [
                stmt(
                    "SELECT bal FROM SAVING WHERE custid = ?",
                    reads=("SAVING",),
                    params=(SID(A, "c"),),
                ),
                stmt(
                    "UPDATE SAVING SET bal = bal + ? WHERE custid = ?",
                    reads=("SAVING",),
                    writes=("SAVING",),
                    params=(U(-50, 100, "amt"), SID(A, "c")),
                ),
            ],
            weight=17,
        ),
        online_txn(
            "WriteCheck",
            [
                stmt(_HOLDINGS, reads=("SAVING", "CHECKING"), params=(SID(A, "c"),)),
                stmt(
                    "UPDATE CHECKING SET bal = bal - ? WHERE custid = ?",
                    reads=("CHECKING",),
                    writes=("CHECKING",),
                    params=(U(1, 100, "amt"), SID(A, "c")),
                ),
            ],
            weight=17,
        ),
    )


def _analytical():
    return (
        # Account holdings join; ordered listing of combined rows.
        query(
            "Q1",
            "SELECT s.custid, s.bal AS saving, c.bal AS checking, s.bal + c.bal AS total"
            " FROM SAVING s JOIN CHECKING c ON c.custid = s.custid"
            " WHERE s.bal + c.bal > ? ORDER BY total DESC",
            reads=("SAVING", "CHECKING"),
            params=(U(0, 1000),),
        ),
        query(
            "Q2",
            "SELECT COUNT(*), AVG(bal) FROM SAVING"
            " WHERE bal > (SELECT AVG(bal) FROM SAVING)",
            reads=("SAVING",),
        ),
        query(
            "Q3",
            "SELECT c.custid, SUM(c.bal + s.bal) FROM CHECKING c"
            " JOIN SAVING s ON s.custid = c.custid"
            " GROUP BY c.custid HAVING SUM(c.bal + s.bal) < ? ORDER BY 2",
            reads=("CHECKING", "SAVING"),
            params=(U(0, 100),),
        ),
        # Extreme-value watch over checking balances.
        query(
            "Q4",
            "SELECT MIN(bal), MAX(bal), AVG(bal) FROM CHECKING",
            reads=("CHECKING",),
        ),
    )


def _hybrids(online):
    by_name = {t.name: t for t in online}

    def rt(sql, reads, params=()):
        return stmt(sql, reads=reads, params=params)

    return (
        HybridTemplate(
            "X1",
            base=by_name["Amalgamate"],
            realtime_query=rt("SELECT AVG(bal) FROM CHECKING", ("CHECKING",)),
            insertion_index=1,
            weight=16,
        ),
        HybridTemplate(
            "X2",
            base=by_name["Balance"],
            realtime_query=rt(
                "SELECT AVG(s.bal + c.bal) FROM SAVING s"
                " JOIN CHECKING c ON c.custid = s.custid",
                ("SAVING", "CHECKING"),
            ),
            insertion_index=1,
            weight=20,
        ),
        HybridTemplate(
            "X3",
            base=by_name["DepositChecking"],
            realtime_query=rt("SELECT MAX(bal) FROM CHECKING", ("CHECKING",)),
            insertion_index=2,
            weight=16,
        ),
        HybridTemplate(
            "X4",
            base=by_name["SendPayment"],
            realtime_query=rt(
                "SELECT COALESCE(SUM(bal), 0) FROM CHECKING WHERE bal < 0", ("CHECKING",)
            ),
            insertion_index=2,
            weight=16,
        ),
        HybridTemplate(
            "X5",
            base=by_name["TransactSavings"],
            realtime_query=rt("SELECT MIN(bal), AVG(bal) FROM SAVING", ("SAVING",)),
            insertion_index=2,
            weight=16,
        ),
        # Sufficient-cheque-balance check plus minimum-savings aggregate.
        HybridTemplate(
            "X6",
            base=by_name["WriteCheck"],
            realtime_query=rt("SELECT MIN(bal) FROM SAVING", ("SAVING",)),
            insertion_index=1,
            weight=16,
        ),
    )


def build_fibenchmark() -> BenchmarkCatalog:
    online = _online()
    return BenchmarkCatalog(
        name="fibenchmark",
        tables=_tables(),
        online=online,
        analytical=_analytical(),
        hybrid=_hybrids(online),
    )
