"""hxbench: a hybrid transactional/analytical SQL benchmark harness.

Three built-in workload suites over write-consistent schemas, online /
analytical / hybrid transaction classes, rate-controlled open- and
closed-loop load generation, and interference analysis, runnable against
an embedded reference backend or any SQL database.
"""

__version__ = "0.1.0"

from .benchspec import (
    check_semantic_consistency,
    default_mix,
    emit_ddl,
    instantiate,
    load_catalog,
)

__all__ = [
    "__version__",
    "check_semantic_consistency",
    "default_mix",
    "emit_ddl",
    "instantiate",
    "load_catalog",
]
