"""Post-run computations: queueing calibration (L = lambda * W),
normalized lock overhead over externally supplied profiler counts, and
baseline-vs-treatment interference factors."""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass

from .errors import ValidationError
from .metrics import RunReport


def littles_law_L(arrival_rate: float, mean_latency_s: float):
    """Mean in-system requests for a stationary workload: L = lambda * W."""
    if arrival_rate < 0:
        raise ValidationError("arrival rate must be >= 0")
    if mean_latency_s <= 0:
        raise ValidationError("mean latency must be > 0")
    return arrival_rate * mean_latency_s


@dataclass(frozen=True)
class LockSampleCounts:
    lock_samples: int  # profiler samples landing in lock functions
    total_samples: int
    baseline_overhead: float  # lock-sample fraction of the uncontended run

    def __post_init__(self):
        if self.total_samples <= 0:
            raise ValidationError("total_samples must be > 0")
        if not 0 <= self.lock_samples <= self.total_samples:
            raise ValidationError("need 0 <= lock_samples <= total_samples")
        if not 0 < self.baseline_overhead <= 1:
            raise ValidationError("baseline_overhead must be in (0, 1]")


def normalized_lock_overhead(c: LockSampleCounts) -> float:
    """Lock overhead relative to the uncontended baseline, in percent.
    Computed as (LS/TS)/BLO*100 so scaling LS and TS together is exact."""
    return (c.lock_samples / c.total_samples) / c.baseline_overhead * 100.0


def parse_lock_counts(text: str) -> list[LockSampleCounts]:
    """One `LS TS BLO` triple per line; '#' comments and blanks ignored."""
    out = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        body = line.split("#", 1)[0].strip()
        if not body:
            continue
        parts = body.replace(",", " ").split()
        if len(parts) != 3:
            raise ValidationError(f"lock-counts line {lineno}: expected 'LS TS BLO'")
        try:
            out.append(
                LockSampleCounts(int(parts[0]), int(parts[1]), float(parts[2]))
            )
        except ValueError as e:
            raise ValidationError(f"lock-counts line {lineno}: {e}") from e
    return out


@dataclass(frozen=True)
class InterferenceReport:
    sample_class: str
    latency_inflation: float  # treated mean / baseline mean
    tail_inflation: float  # treated p95 / baseline p95
    throughput_degradation: float  # 1 - treated tput / baseline tput
    baseline_mean_us: float
    treated_mean_us: float
    baseline_tput: float
    treated_tput: float

    def as_dict(self) -> dict:
        return {
            "class": self.sample_class,
            "latency_inflation": self.latency_inflation,
            "tail_inflation": self.tail_inflation,
            "throughput_degradation": self.throughput_degradation,
            "baseline_mean_us": self.baseline_mean_us,
            "treated_mean_us": self.treated_mean_us,
            "baseline_tput": self.baseline_tput,
            "treated_tput": self.treated_tput,
        }


def interference(
    baseline: RunReport,
    treated: RunReport,
    sample_class: str = "oltp",
    treated_class: str | None = None,
) -> InterferenceReport:
    """Inflation/degradation of the treated run relative to the baseline
    for one measured class. `treated_class` supports the hybrid-vs-plain
    comparison, where the same logical request stream carries the olxp
    label in the treated run."""
    treated_class = treated_class or sample_class
    for name, rep, cls in (
        ("baseline", baseline, sample_class),
        ("treated", treated, treated_class),
    ):
        if cls not in rep.classes or rep.classes[cls].count == 0:
            raise ValidationError(f"{name} report has no committed {cls} samples")
    b = baseline.classes[sample_class]
    t = treated.classes[treated_class]
    if not b.tput:
        raise ValidationError("baseline throughput is zero")
    return InterferenceReport(
        sample_class=sample_class if treated_class == sample_class
        else f"{sample_class}->{treated_class}",
        latency_inflation=t.mean_us / b.mean_us,
        tail_inflation=t.p95_us / b.p95_us,
        throughput_degradation=1.0 - t.tput / b.tput,
        baseline_mean_us=b.mean_us,
        treated_mean_us=t.mean_us,
        baseline_tput=b.tput,
        treated_tput=t.tput,
    )


def interference_csv(
    reports: list[RunReport], sample_class: str = "oltp", axis: str = "pressure"
) -> str:
    """Sweep results as CSV, one row per pressure level; the first report
    is the zero-pressure baseline and normalizes the latency column."""
    if not reports:
        raise ValidationError("no reports to export")
    buf = io.StringIO()
    w = csv.writer(buf)
    w.writerow(
        [axis, "class", "count", "tput", "mean_us", "p95_us",
         "normalized_mean_latency", "latency_inflation", "tail_inflation",
         "throughput_degradation"]
    )
    baseline = reports[0]
    for rep in reports:
        stats = rep.classes.get(sample_class)
        value = rep.meta.get("axis_value", "")
        if stats is None or stats.count == 0:
            w.writerow([value, sample_class, 0, "", "", "", "", "", "", ""])
            continue
        inter = interference(baseline, rep, sample_class)
        w.writerow(
            [value, sample_class, stats.count,
             f"{stats.tput:.4f}", f"{stats.mean_us:.1f}", stats.p95_us,
             f"{inter.latency_inflation:.4f}", f"{inter.latency_inflation:.4f}",
             f"{inter.tail_inflation:.4f}", f"{inter.throughput_degradation:.4f}"]
        )
    return buf.getvalue()
