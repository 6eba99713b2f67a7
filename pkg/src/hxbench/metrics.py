"""Latency/throughput recording and summarization.

Latencies are integer microseconds over raw retained samples (no
histogram bucketing below 10^7 samples, so tail percentiles at any
magnitude are exact). Percentiles are nearest-rank: the value at 1-based
index ceil(p * n) of the sorted multiset.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import UndefinedStatisticError, ValidationError

CLASSES = ("oltp", "olap", "olxp")

STATUS_COMMITTED = "committed"
STATUS_ABORTED = "aborted"
STATUS_DROPPED = "dropped"

# Machine-readable per-class field names (fixed external interface).
REPORT_FIELDS = (
    "count",
    "tput",
    "min_us",
    "p50_us",
    "p90_us",
    "p95_us",
    "p999_us",
    "p9999_us",
    "max_us",
    "mean_us",
    "abort_rate",
    "drop_rate",
)

_PERCENTILE_FIELDS = {
    "p50_us": 0.50,
    "p90_us": 0.90,
    "p95_us": 0.95,
    "p999_us": 0.999,
    "p9999_us": 0.9999,
}


@dataclass(frozen=True)
class LatencySample:
    sample_class: str  # oltp | olap | olxp
    template: str
    send_time_s: float  # scheduled send, seconds from run start
    latency_us: int  # send-time-to-commit (headline)
    status: str  # committed | aborted | dropped
    service_latency_us: int = 0  # queue-exit-to-commit
    dispatch_time_s: float = 0.0  # actual dispatch instant

    def __post_init__(self):
        if self.status == STATUS_COMMITTED and self.latency_us <= 0:
            raise ValidationError("committed sample must have positive latency")


def percentile(samples, p: float) -> int:
    """Nearest-rank percentile, p in (0, 1]. Uses selection, not a full
    sort, so the full-sort test oracle stays an independent path."""
    if not 0 < p <= 1:
        raise ValidationError(f"percentile fraction must be in (0, 1], got {p}")
    arr = np.asarray(samples)
    n = arr.size
    if n == 0:
        raise UndefinedStatisticError("percentile of an empty sample set")
    k = math.ceil(p * n)
    return arr.dtype.type(np.partition(arr, k - 1)[k - 1]).item()


@dataclass(frozen=True)
class ClassStats:
    count: int
    tput: float | None
    min_us: int | None
    p50_us: int | None
    p90_us: int | None
    p95_us: int | None
    p999_us: int | None
    p9999_us: int | None
    max_us: int | None
    mean_us: float | None
    abort_rate: float
    drop_rate: float

    def as_dict(self) -> dict:
        return {f: getattr(self, f) for f in REPORT_FIELDS}


@dataclass(frozen=True)
class RunReport:
    warmup_s: float
    duration_s: float
    classes: dict[str, ClassStats]
    series: dict[str, list[int]]  # per-second committed counts
    meta: dict = field(default_factory=dict)

    def as_dict(self) -> dict:
        return {
            "warmup_s": self.warmup_s,
            "duration_s": self.duration_s,
            "classes": {c: s.as_dict() for c, s in self.classes.items()},
            "series": self.series,
            "meta": self.meta,
        }

    def to_json(self) -> str:
        return json.dumps(self.as_dict(), indent=2, sort_keys=True)

    def render(self) -> str:
        header = (
            f"{'class':<6} {'count':>8} {'tput/s':>9} {'min':>9} {'p50':>9} {'p90':>9}"
            f" {'p95':>9} {'p99.9':>9} {'p99.99':>9} {'max':>9} {'mean':>10}"
            f" {'abort%':>7} {'drop%':>7}"
        )
        lines = [header]
        for cls, s in sorted(self.classes.items()):
            if s.count == 0:
                lines.append(f"{cls:<6} {0:>8} " + " ".join(["-"] * 10))
                continue
            lines.append(
                f"{cls:<6} {s.count:>8} {s.tput:>9.2f} {s.min_us:>9} {s.p50_us:>9}"
                f" {s.p90_us:>9} {s.p95_us:>9} {s.p999_us:>9} {s.p9999_us:>9}"
                f" {s.max_us:>9} {s.mean_us:>10.1f}"
                f" {100 * s.abort_rate:>7.2f} {100 * s.drop_rate:>7.2f}"
            )
        lines.append("(latencies in microseconds)")
        return "\n".join(lines)

    @classmethod
    def from_dict(cls, d: dict) -> "RunReport":
        classes = {c: ClassStats(**s) for c, s in d["classes"].items()}
        return cls(
            warmup_s=d["warmup_s"],
            duration_s=d["duration_s"],
            classes=classes,
            series={k: list(v) for k, v in d.get("series", {}).items()},
            meta=d.get("meta", {}),
        )


def _empty_stats(aborted=0, dropped=0, attempted=0, dispatched=0) -> ClassStats:
    return ClassStats(
        count=0,
        tput=None,
        min_us=None,
        p50_us=None,
        p90_us=None,
        p95_us=None,
        p999_us=None,
        p9999_us=None,
        max_us=None,
        mean_us=None,
        abort_rate=aborted / attempted if attempted else 0.0,
        drop_rate=dropped / dispatched if dispatched else 0.0,
    )


def summarize(
    samples,
    warmup_s: float,
    duration_s: float,
    meta: dict | None = None,
) -> RunReport:
    """Aggregate samples over the measurement window
    [warmup_s, warmup_s + duration_s); a pure function of the multiset."""
    if duration_s <= 0:
        raise ValidationError("duration must be positive")
    lo, hi = warmup_s, warmup_s + duration_s
    classes: dict[str, ClassStats] = {}
    series: dict[str, list[int]] = {}
    by_class: dict[str, list[LatencySample]] = {}
    for s in samples:
        if lo <= s.send_time_s < hi:
            by_class.setdefault(s.sample_class, []).append(s)

    for cls, group in sorted(by_class.items()):
        committed = np.array(
            [s.latency_us for s in group if s.status == STATUS_COMMITTED], dtype=np.int64
        )
        aborted = sum(1 for s in group if s.status == STATUS_ABORTED)
        dropped = sum(1 for s in group if s.status == STATUS_DROPPED)
        attempted = committed.size + aborted
        buckets = [0] * math.ceil(duration_s)
        for s in group:
            if s.status == STATUS_COMMITTED:
                buckets[int((s.send_time_s - lo) // 1.0)] += 1
        series[cls] = buckets
        if committed.size == 0:
            classes[cls] = _empty_stats(aborted, dropped, attempted, len(group))
            continue
        classes[cls] = ClassStats(
            count=int(committed.size),
            tput=committed.size / duration_s,
            min_us=int(committed.min()),
            p50_us=percentile(committed, 0.50),
            p90_us=percentile(committed, 0.90),
            p95_us=percentile(committed, 0.95),
            p999_us=percentile(committed, 0.999),
            p9999_us=percentile(committed, 0.9999),
            max_us=int(committed.max()),
            mean_us=float(committed.mean()),
            abort_rate=aborted / attempted if attempted else 0.0,
            drop_rate=dropped / len(group),
        )
    return RunReport(
        warmup_s=warmup_s,
        duration_s=duration_s,
        classes=classes,
        series=series,
        meta=meta or {},
    )


def aggregate_runs(reports: list[RunReport]) -> dict[str, dict[str, tuple[float, float]]]:
    """Per-class, per-field sample mean and sample standard deviation
    (n-1 denominator; 0.0 for a single run) across repeated runs."""
    if not reports:
        raise ValidationError("aggregate_runs needs at least one report")
    shapes = [tuple(sorted(r.classes)) for r in reports]
    if len(set(shapes)) != 1:
        raise ValidationError(f"mismatched report shapes: {sorted(set(shapes))}")
    out: dict[str, dict[str, tuple[float, float]]] = {}
    for cls in shapes[0]:
        fields: dict[str, tuple[float, float]] = {}
        for f in REPORT_FIELDS:
            values = [getattr(r.classes[cls], f) for r in reports]
            if any(v is None for v in values):
                continue
            arr = np.array(values, dtype=float)
            # identical inputs must give exactly zero spread
            if arr.size > 1 and not np.all(arr == arr[0]):
                std = float(arr.std(ddof=1))
            else:
                std = 0.0
            fields[f] = (float(arr.mean()), std)
        out[cls] = fields
    return out
