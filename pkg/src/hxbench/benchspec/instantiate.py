"""Template instantiation: bind every parameter slot from a caller-owned
seeded generator. Identical (template, seed, scale) yield identical
bindings; shared slots (same share key) receive one drawn value."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..errors import ValidationError
from .types import HybridTemplate, TransactionTemplate

_CLASS_LABEL = {"online": "oltp", "analytical": "olap", "hybrid": "olxp"}


@dataclass(frozen=True)
class BoundStatement:
    sql_text: str
    params: tuple
    writes: bool


@dataclass(frozen=True)
class BoundTransaction:
    """A fully parameterized transaction ready for one atomic execution."""

    name: str
    workload_class: str  # online | analytical | hybrid
    read_only: bool
    statements: tuple[BoundStatement, ...]
    realtime_index: int | None = None  # set for hybrids

    @property
    def sample_class(self) -> str:
        return _CLASS_LABEL[self.workload_class]

    @property
    def writes(self) -> bool:
        return any(s.writes for s in self.statements)


def _bind(statements, rng: np.random.Generator, scale: int):
    shared: dict[str, object] = {}
    bound = []
    for s in statements:
        params = []
        for pb in s.param_specs:
            if pb.share is not None:
                if pb.share not in shared:
                    shared[pb.share] = pb.spec.draw(rng, scale)
                params.append(shared[pb.share])
            else:
                params.append(pb.spec.draw(rng, scale))
        bound.append(
            BoundStatement(s.sql_text, tuple(params), writes=bool(s.tables_written))
        )
    return bound


def instantiate(
    template: TransactionTemplate | HybridTemplate,
    rng: np.random.Generator,
    scale: int,
) -> BoundTransaction:
    if scale < 1:
        raise ValidationError(f"scale must be >= 1, got {scale}")
    if isinstance(template, HybridTemplate):
        idx = template.insertion_index
        stmts = (
            list(template.base.statements[:idx])
            + [template.realtime_query]
            + list(template.base.statements[idx:])
        )
        bound = _bind(stmts, rng, scale)
        return BoundTransaction(
            name=template.name,
            workload_class="hybrid",
            read_only=template.read_only,
            statements=tuple(bound),
            realtime_index=idx,
        )
    bound = _bind(template.statements, rng, scale)
    return BoundTransaction(
        name=template.name,
        workload_class=template.workload_class,
        read_only=template.read_only,
        statements=tuple(bound),
    )
