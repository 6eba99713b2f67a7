"""Shorthand constructors shared by the suite definition modules."""

from ..types import (
    ColumnDef,
    Constant,
    ParamBinding,
    ScaledId,
    StatementTemplate,
    StringPattern,
    TransactionTemplate,
    UniformInt,
)


def col(name, sql_type, nullable=False):
    return ColumnDef(name, sql_type, nullable)


def U(lo, hi, share=None):
    return ParamBinding(UniformInt(lo, hi), share)


def SID(base_per_scale, share=None):
    return ParamBinding(ScaledId(base_per_scale), share)


def SP(pattern, share=None):
    return ParamBinding(StringPattern(pattern), share)


def K(value):
    return ParamBinding(Constant(value))


def stmt(sql, reads=(), writes=(), params=()):
    return StatementTemplate(
        sql_text=sql,
        tables_read=frozenset(reads),
        tables_written=frozenset(writes),
        param_specs=tuple(params),
    )


def online_txn(name, statements, weight):
    statements = tuple(statements)
    read_only = not any(s.tables_written for s in statements)
    return TransactionTemplate(name, "online", statements, weight, read_only)


def query(name, sql, reads, params=(), weight=1):
    return TransactionTemplate(
        name,
        "analytical",
        (stmt(sql, reads=reads, params=params),),
        weight,
        read_only=True,
    )
