"""Negative fixture for the consistency checker: a stitched catalog that
glues warehouse-style online transactions to queries over supplier
reference tables (SUPPLIER, NATION, REGION) that no online statement
ever writes. Not loadable through load_catalog; intended for tests and
`check-schema --stitched`."""

from ..types import BenchmarkCatalog, ForeignKey, TableDef
from ._helpers import col, query
from .subenchmark import build_subenchmark


def _reference_tables():
    return (
        TableDef(
            "REGION",
            (
                col("R_REGIONKEY", "integer"),
                col("R_NAME", "varchar(25)"),
                col("R_COMMENT", "varchar(152)"),
            ),
            primary_key=("R_REGIONKEY",),
        ),
        TableDef(
            "NATION",
            (
                col("N_NATIONKEY", "integer"),
                col("N_NAME", "varchar(25)"),
                col("N_REGIONKEY", "integer"),
                col("N_COMMENT", "varchar(152)"),
            ),
            primary_key=("N_NATIONKEY",),
            foreign_keys=(ForeignKey(("N_REGIONKEY",), "REGION", ("R_REGIONKEY",)),),
        ),
        TableDef(
            "SUPPLIER",
            (
                col("SU_SUPPKEY", "integer"),
                col("SU_NAME", "varchar(25)"),
                col("SU_ADDRESS", "varchar(40)"),
                col("SU_NATIONKEY", "integer"),
                col("SU_PHONE", "varchar(15)"),
                col("SU_ACCTBAL", "decimal(12,2)"),
                col("SU_COMMENT", "varchar(101)"),
            ),
            primary_key=("SU_SUPPKEY",),
            foreign_keys=(ForeignKey(("SU_NATIONKEY",), "NATION", ("N_NATIONKEY",)),),
        ),
    )


def _stitched_queries():
    return (
        query(
            "SQ1",
            "SELECT N_NAME, SUM(OL_AMOUNT) FROM ORDER_LINE"
            " JOIN STOCK ON S_W_ID = OL_SUPPLY_W_ID AND S_I_ID = OL_I_ID"
            " JOIN SUPPLIER ON SU_SUPPKEY = (S_W_ID * S_I_ID) % 10000"
            " JOIN NATION ON N_NATIONKEY = SU_NATIONKEY"
            " JOIN REGION ON R_REGIONKEY = N_REGIONKEY"
            " GROUP BY N_NAME ORDER BY 2 DESC",
            reads=("ORDER_LINE", "STOCK", "SUPPLIER", "NATION", "REGION"),
        ),
        query(
            "SQ2",
            "SELECT S_I_ID, SUM(S_ORDER_CNT) FROM STOCK"
            " JOIN SUPPLIER ON SU_SUPPKEY = (S_W_ID * S_I_ID) % 10000"
            " JOIN NATION ON N_NATIONKEY = SU_NATIONKEY"
            " GROUP BY S_I_ID ORDER BY 2 DESC",
            reads=("STOCK", "SUPPLIER", "NATION"),
        ),
        query(
            "SQ3",
            "SELECT N_NAME, COUNT(*) FROM CUSTOMER"
            " JOIN ORDERS ON O_W_ID = C_W_ID AND O_D_ID = C_D_ID AND O_C_ID = C_ID"
            " JOIN NATION ON N_NATIONKEY = C_W_ID % 25"
            " GROUP BY N_NAME",
            reads=("CUSTOMER", "ORDERS", "NATION"),
        ),
    )


def build_stitched_fixture() -> BenchmarkCatalog:
    base = build_subenchmark()
    return BenchmarkCatalog(
        name="stitched-fixture",
        tables=base.tables + _reference_tables(),
        online=base.online,
        analytical=_stitched_queries(),
        hybrid=(),
    )
