"""Exception taxonomy. Every error carries a machine-parseable category
used by the CLI for exit codes and `error: <category>: ...` messages."""


class HxBenchError(Exception):
    category = "internal"


class UnknownBenchmarkError(HxBenchError):
    category = "unknown-benchmark"


class ValidationError(HxBenchError):
    category = "validation"


class UnorderableSchemaError(HxBenchError):
    """FK graph contains a cycle, so no creation order exists."""

    category = "unorderable-schema"


class BackendUnreachableError(HxBenchError):
    category = "backend-unreachable"


class UnsupportedIsolationError(HxBenchError):
    def __init__(self, requested, supported):
        self.requested = requested
        self.supported = tuple(supported)
        super().__init__(
            f"isolation {requested!r} not supported; backend supports: "
            + ", ".join(self.supported)
        )

    category = "unsupported-isolation"


class PreconditionError(HxBenchError):
    category = "precondition"


class LoadError(HxBenchError):
    """Backend rejected a bulk-insert batch."""

    def __init__(self, table, batch_offset, cause):
        self.table = table
        self.batch_offset = batch_offset
        super().__init__(f"load failed on table {table} at batch offset {batch_offset}: {cause}")

    category = "load"


class UndefinedStatisticError(HxBenchError):
    category = "undefined-statistic"


class ConfigError(HxBenchError):
    """Bad run configuration; `where` names the offending XML element path or flag."""

    def __init__(self, message, where=None):
        self.where = where
        super().__init__(f"{message}" + (f" (at {where})" if where else ""))

    category = "config"
