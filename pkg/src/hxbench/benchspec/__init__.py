from .catalog import (
    BENCHMARK_NAMES,
    default_mix,
    inventory,
    load_catalog,
    read_only_fraction,
    stitched_fixture,
)
from .consistency import ConsistencyReport, check_semantic_consistency
from .ddl import creation_order, emit_ddl
from .instantiate import BoundStatement, BoundTransaction, instantiate
from .types import (
    ANALYTICAL,
    HYBRID,
    ONLINE,
    WORKLOAD_CLASSES,
    BenchmarkCatalog,
    ColumnDef,
    Constant,
    ForeignKey,
    HybridTemplate,
    ParamBinding,
    ScaledId,
    StatementTemplate,
    StringPattern,
    TableDef,
    TransactionTemplate,
    UniformInt,
    Zipf,
)

__all__ = [
    "ANALYTICAL",
    "BENCHMARK_NAMES",
    "BenchmarkCatalog",
    "BoundStatement",
    "BoundTransaction",
    "ColumnDef",
    "ConsistencyReport",
    "Constant",
    "ForeignKey",
    "HYBRID",
    "HybridTemplate",
    "ONLINE",
    "ParamBinding",
    "ScaledId",
    "StatementTemplate",
    "StringPattern",
    "TableDef",
    "TransactionTemplate",
    "UniformInt",
    "WORKLOAD_CLASSES",
    "Zipf",
    "check_semantic_consistency",
    "creation_order",
    "default_mix",
    "emit_ddl",
    "instantiate",
    "inventory",
    "load_catalog",
    "read_only_fraction",
    "stitched_fixture",
]
