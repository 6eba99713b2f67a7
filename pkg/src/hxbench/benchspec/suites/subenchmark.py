"""subenchmark: the general retail suite.

Online side follows the public TPC-C transaction profiles (NewOrder,
Payment, OrderStatus, Delivery, StockLevel) over the standard 9-table
schema. The analytical queries and hybrid transactions only read tables
some online statement writes, so the consistency checker passes by
construction. ITEM is read-only for the online side and is therefore off
limits to analytical/real-time statements; "lowest price of an item" is
answered from observed ORDER_LINE unit prices instead.

Template parameters draw independently; any value that must flow between
statements (order ids, the oldest undelivered order, customer of an
order) is resolved inside SQL via subqueries or INSERT..SELECT.
"""

from ..types import BenchmarkCatalog, ForeignKey, HybridTemplate, TableDef
from ._helpers import K, SID, SP, U, col, online_txn, query, stmt

# Base cardinalities per scale unit (warehouse count == scale).
WAREHOUSES_PER_SCALE = 1
DISTRICTS_PER_WAREHOUSE = 10
CUSTOMERS_PER_DISTRICT = 300
ORDERS_PER_DISTRICT = 300
NEW_ORDERS_PER_DISTRICT = 90  # the most recent 30% of orders are undelivered
LINES_PER_ORDER = 10
ITEMS = 10_000  # fixed, does not scale


def _tables():
    return (
        TableDef(
            "WAREHOUSE",
            (
                col("W_ID", "integer"),
                col("W_NAME", "varchar(10)"),
                col("W_STREET_1", "varchar(20)"),
                col("W_STREET_2", "varchar(20)"),
                col("W_CITY", "varchar(20)"),
                col("W_STATE", "varchar(2)"),
                col("W_ZIP", "varchar(9)"),
                col("W_TAX", "decimal(4,4)"),
                col("W_YTD", "decimal(12,2)"),
            ),
            primary_key=("W_ID",),
        ),
        TableDef(
            "DISTRICT",
            (
                col("D_ID", "integer"),
                col("D_W_ID", "integer"),
                col("D_NAME", "varchar(10)"),
                col("D_STREET_1", "varchar(20)"),
                col("D_STREET_2", "varchar(20)"),
                col("D_CITY", "varchar(20)"),
                col("D_STATE", "varchar(2)"),
                col("D_ZIP", "varchar(9)"),
                col("D_TAX", "decimal(4,4)"),
                col("D_YTD", "decimal(12,2)"),
                col("D_NEXT_O_ID", "integer"),
            ),
            primary_key=("D_W_ID", "D_ID"),
            foreign_keys=(ForeignKey(("D_W_ID",), "WAREHOUSE", ("W_ID",)),),
        ),
        TableDef(
            "CUSTOMER",
            (
                col("C_ID", "integer"),
                col("C_D_ID", "integer"),
                col("C_W_ID", "integer"),
                col("C_FIRST", "varchar(16)"),
                col("C_MIDDLE", "varchar(2)"),
                col("C_LAST", "varchar(16)"),
                col("C_STREET_1", "varchar(20)"),
                col("C_STREET_2", "varchar(20)"),
                col("C_CITY", "varchar(20)"),
                col("C_STATE", "varchar(2)"),
                col("C_ZIP", "varchar(9)"),
                col("C_PHONE", "varchar(16)"),
                col("C_SINCE", "timestamp"),
                col("C_CREDIT", "varchar(2)"),
                col("C_CREDIT_LIM", "decimal(12,2)"),
                col("C_DISCOUNT", "decimal(4,4)"),
                col("C_BALANCE", "decimal(12,2)"),
                col("C_YTD_PAYMENT", "decimal(12,2)"),
                col("C_PAYMENT_CNT", "integer"),
                col("C_DELIVERY_CNT", "integer"),
                col("C_DATA", "varchar(250)"),
            ),
            primary_key=("C_W_ID", "C_D_ID", "C_ID"),
            indexes=(("C_W_ID", "C_D_ID", "C_LAST", "C_FIRST"),),
            foreign_keys=(ForeignKey(("C_W_ID", "C_D_ID"), "DISTRICT", ("D_W_ID", "D_ID")),),
        ),
        TableDef(
            "HISTORY",
            (
                col("H_C_ID", "integer"),
                col("H_C_D_ID", "integer"),
                col("H_C_W_ID", "integer"),
                col("H_D_ID", "integer"),
                col("H_W_ID", "integer"),
                col("H_DATE", "timestamp"),
                col("H_AMOUNT", "decimal(6,2)"),
                col("H_DATA", "varchar(24)"),
            ),
            foreign_keys=(
                ForeignKey(
                    ("H_C_W_ID", "H_C_D_ID", "H_C_ID"),
                    "CUSTOMER",
                    ("C_W_ID", "C_D_ID", "C_ID"),
                ),
                ForeignKey(("H_W_ID", "H_D_ID"), "DISTRICT", ("D_W_ID", "D_ID")),
            ),
        ),
        TableDef(
            "NEW_ORDER",
            (
                col("NO_O_ID", "integer"),
                col("NO_D_ID", "integer"),
                col("NO_W_ID", "integer"),
            ),
            primary_key=("NO_W_ID", "NO_D_ID", "NO_O_ID"),
            foreign_keys=(
                ForeignKey(
                    ("NO_W_ID", "NO_D_ID", "NO_O_ID"), "ORDERS", ("O_W_ID", "O_D_ID", "O_ID")
                ),
            ),
        ),
        TableDef(
            "ORDERS",
            (
                col("O_ID", "integer"),
                col("O_D_ID", "integer"),
                col("O_W_ID", "integer"),
                col("O_C_ID", "integer"),
                col("O_ENTRY_D", "timestamp"),
                col("O_CARRIER_ID", "integer", nullable=True),
                col("O_OL_CNT", "integer"),
                col("O_ALL_LOCAL", "integer"),
            ),
            primary_key=("O_W_ID", "O_D_ID", "O_ID"),
            indexes=(("O_W_ID", "O_D_ID", "O_C_ID", "O_ID"),),
            foreign_keys=(
                ForeignKey(
                    ("O_W_ID", "O_D_ID", "O_C_ID"), "CUSTOMER", ("C_W_ID", "C_D_ID", "C_ID")
                ),
            ),
        ),
        TableDef(
            "ORDER_LINE",
            (
                col("OL_O_ID", "integer"),
                col("OL_D_ID", "integer"),
                col("OL_W_ID", "integer"),
                col("OL_NUMBER", "integer"),
                col("OL_I_ID", "integer"),
                col("OL_SUPPLY_W_ID", "integer"),
                col("OL_DELIVERY_D", "timestamp", nullable=True),
                col("OL_QUANTITY", "integer"),
                col("OL_AMOUNT", "decimal(6,2)"),
                col("OL_DIST_INFO", "varchar(24)"),
            ),
            primary_key=("OL_W_ID", "OL_D_ID", "OL_O_ID", "OL_NUMBER"),
            indexes=(("OL_W_ID", "OL_D_ID", "OL_I_ID"),),
            foreign_keys=(
                ForeignKey(
                    ("OL_W_ID", "OL_D_ID", "OL_O_ID"), "ORDERS", ("O_W_ID", "O_D_ID", "O_ID")
                ),
                ForeignKey(("OL_SUPPLY_W_ID", "OL_I_ID"), "STOCK", ("S_W_ID", "S_I_ID")),
            ),
        ),
        TableDef(
            "ITEM",
            (
                col("I_ID", "integer"),
                col("I_IM_ID", "integer"),
                col("I_NAME", "varchar(24)"),
                col("I_PRICE", "decimal(5,2)"),
                col("I_DATA", "varchar(50)"),
            ),
            primary_key=("I_ID",),
        ),
        TableDef(
            "STOCK",
            (
                col("S_I_ID", "integer"),
                col("S_W_ID", "integer"),
                col("S_QUANTITY", "integer"),
                col("S_DIST_01", "varchar(24)"),
                col("S_DIST_02", "varchar(24)"),
                col("S_DIST_03", "varchar(24)"),
                col("S_DIST_04", "varchar(24)"),
                col("S_DIST_05", "varchar(24)"),
                col("S_DIST_06", "varchar(24)"),
                col("S_DIST_07", "varchar(24)"),
                col("S_DIST_08", "varchar(24)"),
                col("S_DIST_09", "varchar(24)"),
                col("S_DIST_10", "varchar(24)"),
                col("S_YTD", "integer"),
                col("S_ORDER_CNT", "integer"),
                col("S_REMOTE_CNT", "integer"),
                col("S_DATA", "varchar(50)"),
            ),
            primary_key=("S_W_ID", "S_I_ID"),
            foreign_keys=(
                ForeignKey(("S_W_ID",), "WAREHOUSE", ("W_ID",)),
                ForeignKey(("S_I_ID",), "ITEM", ("I_ID",)),
            ),
        ),
    )


_D = DISTRICTS_PER_WAREHOUSE
_C = CUSTOMERS_PER_DISTRICT


def _new_order():
    stmts = [
        stmt(
            "SELECT W_TAX FROM WAREHOUSE WHERE W_ID = ?",
            reads=("WAREHOUSE",),
            params=(SID(1, "w"),),
        ),
        stmt(
            "SELECT D_TAX, D_NEXT_O_ID FROM DISTRICT WHERE D_W_ID = ? AND D_ID = ?",
            reads=("DISTRICT",),
            params=(SID(1, "w"), U(1, _D, "d")),
        ),
        stmt(
            "SELECT C_DISCOUNT, C_LAST, C_CREDIT FROM CUSTOMER"
            " WHERE C_W_ID = ? AND C_D_ID = ? AND C_ID = ?",
            reads=("CUSTOMER",),
            params=(SID(1, "w"), U(1, _D, "d"), U(1, _C, "c")),
        ),
        stmt(
            "UPDATE DISTRICT SET D_NEXT_O_ID = D_NEXT_O_ID + 1 WHERE D_W_ID = ? AND D_ID = ?",
            reads=("DISTRICT",),
            writes=("DISTRICT",),
            params=(SID(1, "w"), U(1, _D, "d")),
        ),
        stmt(
            "INSERT INTO ORDERS (O_ID, O_D_ID, O_W_ID, O_C_ID, O_ENTRY_D, O_CARRIER_ID,"
            " O_OL_CNT, O_ALL_LOCAL)"
            " SELECT D_NEXT_O_ID - 1, ?, ?, ?, CURRENT_TIMESTAMP, NULL, ?, 1"
            " FROM DISTRICT WHERE D_W_ID = ? AND D_ID = ?",
            reads=("DISTRICT",),
            writes=("ORDERS",),
            params=(
                U(1, _D, "d"),
                SID(1, "w"),
                U(1, _C, "c"),
                K(LINES_PER_ORDER),
                SID(1, "w"),
                U(1, _D, "d"),
            ),
        ),
        stmt(
            "INSERT INTO NEW_ORDER (NO_O_ID, NO_D_ID, NO_W_ID)"
            " SELECT D_NEXT_O_ID - 1, ?, ? FROM DISTRICT WHERE D_W_ID = ? AND D_ID = ?",
            reads=("DISTRICT",),
            writes=("NEW_ORDER",),
            params=(U(1, _D, "d"), SID(1, "w"), SID(1, "w"), U(1, _D, "d")),
        ),
    ]
    for line in range(1, LINES_PER_ORDER + 1):
        item = f"i{line}"
        qty = f"q{line}"
        stmts.append(
            stmt(
                "SELECT I_PRICE, I_NAME, I_DATA FROM ITEM WHERE I_ID = ?",
                reads=("ITEM",),
                params=(U(1, ITEMS, item),),
            )
        )
        stmts.append(
            stmt(
                "UPDATE STOCK SET S_QUANTITY = CASE WHEN S_QUANTITY - ? >= 10"
                " THEN S_QUANTITY - ? ELSE S_QUANTITY - ? + 91 END,"
                " S_YTD = S_YTD + ?, S_ORDER_CNT = S_ORDER_CNT + 1"
                " WHERE S_W_ID = ? AND S_I_ID = ?",
                reads=("STOCK",),
                writes=("STOCK",),
                params=(
                    U(1, 10, qty),
                    U(1, 10, qty),
                    U(1, 10, qty),
                    U(1, 10, qty),
                    SID(1, "w"),
                    U(1, ITEMS, item),
                ),
            )
        )
        stmts.append(
            stmt(
                "INSERT INTO ORDER_LINE (OL_O_ID, OL_D_ID, OL_W_ID, OL_NUMBER, OL_I_ID,"
                " OL_SUPPLY_W_ID, OL_DELIVERY_D, OL_QUANTITY, OL_AMOUNT, OL_DIST_INFO)"
                " SELECT D_NEXT_O_ID - 1, ?, ?, ?, ?, ?, NULL, ?, ?, ?"
                " FROM DISTRICT WHERE D_W_ID = ? AND D_ID = ?",
                reads=("DISTRICT",),
                writes=("ORDER_LINE",),
                params=(
                    U(1, _D, "d"),
                    SID(1, "w"),
                    K(line),
                    U(1, ITEMS, item),
                    SID(1, "w"),
                    U(1, 10, qty),
                    U(1, 9999, f"amt{line}"),
                    SP("*" * 24),
                    SID(1, "w"),
                    U(1, _D, "d"),
                ),
            )
        )
    return online_txn("NewOrder", stmts, weight=45)


def _payment():
    return online_txn(
        "Payment",
        [
            stmt(
                "UPDATE WAREHOUSE SET W_YTD = W_YTD + ? WHERE W_ID = ?",
                reads=("WAREHOUSE",),
                writes=("WAREHOUSE",),
                params=(U(1, 5000, "amt"), SID(1, "w")),
            ),
            stmt(
                "SELECT W_NAME, W_STREET_1, W_CITY, W_STATE, W_ZIP FROM WAREHOUSE WHERE W_ID = ?",
                reads=("WAREHOUSE",),
                params=(SID(1, "w"),),
            ),
            stmt(
                "UPDATE DISTRICT SET D_YTD = D_YTD + ? WHERE D_W_ID = ? AND D_ID = ?",
                reads=("DISTRICT",),
                writes=("DISTRICT",),
                params=(U(1, 5000, "amt"), SID(1, "w"), U(1, _D, "d")),
            ),
            stmt(
                "SELECT D_NAME, D_STREET_1, D_CITY, D_STATE, D_ZIP FROM DISTRICT"
                " WHERE D_W_ID = ? AND D_ID = ?",
                reads=("DISTRICT",),
                params=(SID(1, "w"), U(1, _D, "d")),
            ),
            stmt(
                "SELECT C_FIRST, C_MIDDLE, C_LAST, C_BALANCE, C_CREDIT FROM CUSTOMER"
                " WHERE C_W_ID = ? AND C_D_ID = ? AND C_ID = ?",
                reads=("CUSTOMER",),
                params=(SID(1, "w"), U(1, _D, "d"), U(1, _C, "c")),
            ),
            stmt(
                "UPDATE CUSTOMER SET C_BALANCE = C_BALANCE - ?,"
                " C_YTD_PAYMENT = C_YTD_PAYMENT + ?, C_PAYMENT_CNT = C_PAYMENT_CNT + 1"
                " WHERE C_W_ID = ? AND C_D_ID = ? AND C_ID = ?",
                reads=("CUSTOMER",),
                writes=("CUSTOMER",),
                params=(U(1, 5000, "amt"), U(1, 5000, "amt"), SID(1, "w"), U(1, _D, "d"), U(1, _C, "c")),
            ),
            stmt(
                "INSERT INTO HISTORY (H_C_ID, H_C_D_ID, H_C_W_ID, H_D_ID, H_W_ID, H_DATE,"
                " H_AMOUNT, H_DATA) VALUES (?, ?, ?, ?, ?, CURRENT_TIMESTAMP, ?, ?)",
                reads=("CUSTOMER",),
                writes=("HISTORY",),
                params=(
                    U(1, _C, "c"),
                    U(1, _D, "d"),
                    SID(1, "w"),
                    U(1, _D, "d"),
                    SID(1, "w"),
                    U(1, 5000, "amt"),
                    SP("*" * 12),
                ),
            ),
        ],
        weight=43,
    )


def _order_status():
    last_order = (
        "(SELECT MAX(O_ID) FROM ORDERS WHERE O_W_ID = ? AND O_D_ID = ? AND O_C_ID = ?)"
    )
    wdc = lambda: (SID(1, "w"), U(1, _D, "d"), U(1, _C, "c"))  # noqa: E731
    return online_txn(
        "OrderStatus",
        [
            stmt(
                "SELECT C_BALANCE, C_FIRST, C_MIDDLE, C_LAST FROM CUSTOMER"
                " WHERE C_W_ID = ? AND C_D_ID = ? AND C_ID = ?",
                reads=("CUSTOMER",),
                params=wdc(),
            ),
            stmt(
                "SELECT O_ID, O_ENTRY_D, O_CARRIER_ID FROM ORDERS"
                " WHERE O_W_ID = ? AND O_D_ID = ? AND O_ID = " + last_order,
                reads=("ORDERS",),
                params=(SID(1, "w"), U(1, _D, "d")) + wdc(),
            ),
            stmt(
                "SELECT OL_I_ID, OL_SUPPLY_W_ID, OL_QUANTITY, OL_AMOUNT, OL_DELIVERY_D"
                " FROM ORDER_LINE WHERE OL_W_ID = ? AND OL_D_ID = ? AND OL_O_ID = " + last_order,
                reads=("ORDER_LINE", "ORDERS"),
                params=(SID(1, "w"), U(1, _D, "d")) + wdc(),
            ),
        ],
        weight=4,
    )


def _delivery():
    stmts = []
    for d in range(1, _D + 1):
        oldest = (
            f"(SELECT MIN(NO_O_ID) FROM NEW_ORDER WHERE NO_W_ID = ? AND NO_D_ID = {d})"
        )
        stmts.append(
            stmt(
                f"UPDATE ORDERS SET O_CARRIER_ID = ? WHERE O_W_ID = ? AND O_D_ID = {d}"
                f" AND O_ID = {oldest}",
                reads=("NEW_ORDER", "ORDERS"),
                writes=("ORDERS",),
                params=(U(1, 10, "carrier"), SID(1, "w"), SID(1, "w")),
            )
        )
        stmts.append(
            stmt(
                f"UPDATE ORDER_LINE SET OL_DELIVERY_D = CURRENT_TIMESTAMP"
                f" WHERE OL_W_ID = ? AND OL_D_ID = {d} AND OL_O_ID = {oldest}",
                reads=("NEW_ORDER", "ORDER_LINE"),
                writes=("ORDER_LINE",),
                params=(SID(1, "w"), SID(1, "w")),
            )
        )
        stmts.append(
            stmt(
                f"UPDATE CUSTOMER SET C_BALANCE = C_BALANCE + (SELECT COALESCE(SUM(OL_AMOUNT), 0)"
                f" FROM ORDER_LINE WHERE OL_W_ID = ? AND OL_D_ID = {d} AND OL_O_ID = {oldest}),"
                f" C_DELIVERY_CNT = C_DELIVERY_CNT + 1"
                f" WHERE C_W_ID = ? AND C_D_ID = {d} AND C_ID = COALESCE((SELECT O_C_ID FROM ORDERS"
                f" WHERE O_W_ID = ? AND O_D_ID = {d} AND O_ID = {oldest}), 0)",
                reads=("NEW_ORDER", "ORDER_LINE", "ORDERS", "CUSTOMER"),
                writes=("CUSTOMER",),
                params=(SID(1, "w"),) * 5,
            )
        )
        stmts.append(
            stmt(
                f"DELETE FROM NEW_ORDER WHERE NO_W_ID = ? AND NO_D_ID = {d}"
                f" AND NO_O_ID = {oldest}",
                reads=("NEW_ORDER",),
                writes=("NEW_ORDER",),
                params=(SID(1, "w"), SID(1, "w")),
            )
        )
    return online_txn("Delivery", stmts, weight=4)


def _stock_level():
    return online_txn(
        "StockLevel",
        [
            stmt(
                "SELECT D_NEXT_O_ID FROM DISTRICT WHERE D_W_ID = ? AND D_ID = ?",
                reads=("DISTRICT",),
                params=(SID(1, "w"), U(1, _D, "d")),
            ),
            stmt(
                "SELECT COUNT(DISTINCT S_I_ID) FROM ORDER_LINE"
                " JOIN STOCK ON S_W_ID = OL_W_ID AND S_I_ID = OL_I_ID"
                " WHERE OL_W_ID = ? AND OL_D_ID = ?"
                " AND OL_O_ID >= (SELECT D_NEXT_O_ID FROM DISTRICT"
                " WHERE D_W_ID = ? AND D_ID = ?) - 20 AND S_QUANTITY < ?",
                reads=("ORDER_LINE", "STOCK", "DISTRICT"),
                params=(SID(1, "w"), U(1, _D, "d"), SID(1, "w"), U(1, _D, "d"), U(10, 20)),
            ),
        ],
        weight=4,
    )


def _analytical():
    return (
        query(
            "Q1",
            "SELECT OL_NUMBER, SUM(OL_QUANTITY), SUM(OL_AMOUNT), AVG(OL_QUANTITY),"
            " AVG(OL_AMOUNT), COUNT(*) FROM ORDER_LINE WHERE OL_DELIVERY_D > ?"
            " GROUP BY OL_NUMBER ORDER BY OL_NUMBER",
            reads=("ORDER_LINE",),
            params=(K("2020-01-01 00:00:00"),),
        ),
        query(
            "Q2",
            "SELECT D_W_ID, D_ID, SUM(OL_AMOUNT) AS revenue FROM DISTRICT"
            " JOIN ORDERS ON O_W_ID = D_W_ID AND O_D_ID = D_ID"
            " JOIN ORDER_LINE ON OL_W_ID = O_W_ID AND OL_D_ID = O_D_ID AND OL_O_ID = O_ID"
            " GROUP BY D_W_ID, D_ID ORDER BY revenue DESC",
            reads=("DISTRICT", "ORDERS", "ORDER_LINE"),
        ),
        query(
            "Q3",
            "SELECT c_count, COUNT(*) FROM (SELECT C_W_ID, C_D_ID, C_ID, COUNT(O_ID) AS c_count"
            " FROM CUSTOMER LEFT JOIN ORDERS ON O_W_ID = C_W_ID AND O_D_ID = C_D_ID"
            " AND O_C_ID = C_ID GROUP BY C_W_ID, C_D_ID, C_ID) t"
            " GROUP BY c_count ORDER BY 2 DESC, c_count DESC",
            reads=("CUSTOMER", "ORDERS"),
        ),
        query(
            "Q4",
            "SELECT O_OL_CNT, COUNT(*) FROM ORDERS WHERE O_ENTRY_D >= ? AND EXISTS ("
            "SELECT 1 FROM ORDER_LINE WHERE OL_W_ID = O_W_ID AND OL_D_ID = O_D_ID"
            " AND OL_O_ID = O_ID AND OL_DELIVERY_D >= O_ENTRY_D)"
            " GROUP BY O_OL_CNT ORDER BY O_OL_CNT",
            reads=("ORDERS", "ORDER_LINE"),
            params=(K("2020-01-01 00:00:00"),),
        ),
        query(
            "Q5",
            "SELECT C_W_ID, C_D_ID, C_ID, C_LAST, SUM(OL_AMOUNT) AS revenue FROM CUSTOMER"
            " JOIN ORDERS ON O_W_ID = C_W_ID AND O_D_ID = C_D_ID AND O_C_ID = C_ID"
            " JOIN ORDER_LINE ON OL_W_ID = O_W_ID AND OL_D_ID = O_D_ID AND OL_O_ID = O_ID"
            " GROUP BY C_W_ID, C_D_ID, C_ID, C_LAST ORDER BY revenue DESC",
            reads=("CUSTOMER", "ORDERS", "ORDER_LINE"),
        ),
        query(
            "Q6",
            "SELECT SUM(OL_AMOUNT) FROM ORDER_LINE WHERE OL_DELIVERY_D >= ?"
            " AND OL_QUANTITY BETWEEN ? AND ?",
            reads=("ORDER_LINE",),
            params=(K("2020-01-01 00:00:00"), K(1), K(10)),
        ),
        query(
            "Q7",
            "SELECT S_I_ID, SUM(OL_QUANTITY) AS moved FROM STOCK"
            " JOIN ORDER_LINE ON OL_W_ID = S_W_ID AND OL_I_ID = S_I_ID"
            " GROUP BY S_I_ID HAVING SUM(OL_QUANTITY) > (SELECT AVG(S_QUANTITY) FROM STOCK)"
            " ORDER BY moved DESC",
            reads=("STOCK", "ORDER_LINE"),
        ),
        query(
            "Q8",
            "SELECT H_W_ID, H_D_ID, COUNT(*), SUM(H_AMOUNT), AVG(H_AMOUNT) FROM HISTORY"
            " JOIN DISTRICT ON D_W_ID = H_W_ID AND D_ID = H_D_ID"
            " GROUP BY H_W_ID, H_D_ID ORDER BY SUM(H_AMOUNT) DESC",
            reads=("HISTORY", "DISTRICT"),
        ),
        query(
            "Q9",
            "SELECT W_ID, W_YTD, SUM(D_YTD), W_YTD - SUM(D_YTD) FROM WAREHOUSE"
            " JOIN DISTRICT ON D_W_ID = W_ID GROUP BY W_ID, W_YTD ORDER BY W_ID",
            reads=("WAREHOUSE", "DISTRICT"),
        ),
    )


def _hybrids(online):
    by_name = {t.name: t for t in online}
    # Read-only mass: X3 + X4 = 30 + 30 of 100 total... adjusted below to 60%.
    return (
        HybridTemplate(
            # Lowest observed unit price for the item, checked right before
            # the first item pick (base statements 0-5 ran, writes included).
            "X1",
            base=by_name["NewOrder"],
            realtime_query=stmt(
                "SELECT MIN(OL_AMOUNT * 1.0 / OL_QUANTITY) FROM ORDER_LINE WHERE OL_I_ID = ?",
                reads=("ORDER_LINE",),
                params=(U(1, ITEMS),),
            ),
            insertion_index=6,
            weight=20,
        ),
        HybridTemplate(
            "X2",
            base=by_name["Payment"],
            realtime_query=stmt(
                "SELECT AVG(H_AMOUNT), MAX(H_AMOUNT) FROM HISTORY"
                " WHERE H_C_W_ID = ? AND H_C_D_ID = ?",
                reads=("HISTORY",),
                params=(SID(1), U(1, _D)),
            ),
            insertion_index=5,
            weight=10,
        ),
        HybridTemplate(
            "X3",
            base=by_name["OrderStatus"],
            realtime_query=stmt(
                "SELECT COUNT(*), AVG(OL_AMOUNT) FROM ORDER_LINE"
                " WHERE OL_W_ID = ? AND OL_D_ID = ?",
                reads=("ORDER_LINE",),
                params=(SID(1), U(1, _D)),
            ),
            insertion_index=1,
            weight=30,
        ),
        HybridTemplate(
            "X4",
            base=by_name["StockLevel"],
            realtime_query=stmt(
                "SELECT AVG(S_QUANTITY), MIN(S_QUANTITY) FROM STOCK WHERE S_W_ID = ?",
                reads=("STOCK",),
                params=(SID(1),),
            ),
            insertion_index=1,
            weight=30,
        ),
        HybridTemplate(
            "X5",
            base=by_name["Delivery"],
            realtime_query=stmt(
                "SELECT COALESCE(SUM(OL_AMOUNT), 0) FROM ORDER_LINE"
                " JOIN ORDERS ON O_W_ID = OL_W_ID AND O_D_ID = OL_D_ID AND O_ID = OL_O_ID"
                " WHERE OL_W_ID = ? AND O_CARRIER_ID IS NULL",
                reads=("ORDER_LINE", "ORDERS"),
                params=(SID(1),),
            ),
            insertion_index=0,
            weight=10,
        ),
    )


def build_subenchmark() -> BenchmarkCatalog:
    online = (_new_order(), _payment(), _order_status(), _delivery(), _stock_level())
    return BenchmarkCatalog(
        name="subenchmark",
        tables=_tables(),
        online=online,
        analytical=_analytical(),
        hybrid=_hybrids(online),
    )
