"""Queueing law, normalized lock overhead, interference factors."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hxbench.analysis import (
    InterferenceReport,
    LockSampleCounts,
    interference,
    interference_csv,
    littles_law_L,
    normalized_lock_overhead,
    parse_lock_counts,
)
from hxbench.errors import ValidationError
from hxbench.metrics import LatencySample, summarize


def test_littles_law_product():
    assert littles_law_L(30, 1.5) == 45  # stable in-system count around 45


def test_littles_law_zero_rate():
    assert littles_law_L(0, 2.0) == 0


@given(
    st.integers(min_value=0, max_value=10**6),
    st.integers(min_value=1, max_value=10**6),
    st.integers(min_value=1, max_value=1000),
)
@settings(max_examples=200, deadline=None)
def test_littles_law_bilinear_exact_on_integers(lam, w, a):
    assert littles_law_L(a * lam, w) == a * littles_law_L(lam, w)


def test_littles_law_validation():
    with pytest.raises(ValidationError):
        littles_law_L(-1, 1.0)
    with pytest.raises(ValidationError):
        littles_law_L(1, 0.0)


def test_nlo_baseline_equals_itself():
    assert normalized_lock_overhead(LockSampleCounts(100, 1000, 0.1)) == 100.0


def test_nlo_zero_lock_samples():
    assert normalized_lock_overhead(LockSampleCounts(0, 1000, 0.1)) == 0.0


@given(
    st.integers(min_value=0, max_value=10**6),
    st.integers(min_value=1, max_value=10**6),
    st.integers(min_value=1, max_value=10**3),
)
@settings(max_examples=200, deadline=None)
def test_nlo_scale_invariant_exact(ls, ts, k):
    if ls > ts:
        ls, ts = ts, ls
    base = normalized_lock_overhead(LockSampleCounts(ls, ts, 0.25))
    scaled = normalized_lock_overhead(LockSampleCounts(k * ls, k * ts, 0.25))
    assert base == scaled


def test_nlo_schema_comparison_ratio():
    # externally supplied profiler counts; overhead gap factor 1.76
    consistent = LockSampleCounts(176, 1000, 0.1)
    stitched = LockSampleCounts(100, 1000, 0.1)
    ratio = normalized_lock_overhead(consistent) / normalized_lock_overhead(stitched)
    assert ratio == pytest.approx(1.76, rel=1e-12)


def test_lock_counts_validation():
    with pytest.raises(ValidationError):
        LockSampleCounts(5, 0, 0.1)
    with pytest.raises(ValidationError):
        LockSampleCounts(11, 10, 0.1)
    with pytest.raises(ValidationError):
        LockSampleCounts(1, 10, 0.0)


def test_parse_lock_counts_file_format():
    text = "# LS TS BLO\n100 1000 0.1\n50, 500, 0.25\n\n"
    counts = parse_lock_counts(text)
    assert len(counts) == 2
    assert counts[0] == LockSampleCounts(100, 1000, 0.1)
    with pytest.raises(ValidationError):
        parse_lock_counts("1 2\n")


# --- interference -----------------------------------------------------------


def _report(mean_us, n=100, cls="oltp", duration=10.0):
    samples = [
        LatencySample(cls, "T", 1.0 + i * 0.01, mean_us, "committed") for i in range(n)
    ]
    return summarize(samples, 0.0, duration)


def test_interference_identity_is_unit_report():
    base = _report(1000)
    rep = interference(base, base)
    assert rep.latency_inflation == 1.0
    assert rep.tail_inflation == 1.0
    assert rep.throughput_degradation == 0.0


def test_throughput_degradation_89_percent():
    base = _report(1000, n=100)
    treated = _report(1000, n=11)
    rep = interference(base, treated)
    assert rep.throughput_degradation == pytest.approx(0.89, rel=1e-12)


def test_latency_inflation_5_9x():
    base = _report(10_000)
    treated = _report(59_000)
    rep = interference(base, treated)
    assert rep.latency_inflation == pytest.approx(5.9, rel=1e-12)


def test_interference_requires_committed_baseline():
    base = _report(1000, cls="olap")
    with pytest.raises(ValidationError):
        interference(base, base, sample_class="oltp")


def test_interference_csv_rows_per_pressure_level():
    reports = []
    for i, mean in enumerate((1000, 2000, 3000)):
        rep = _report(mean)
        rep.meta["axis_value"] = i
        reports.append(rep)
    text = interference_csv(reports, sample_class="oltp", axis="olap_rate")
    lines = text.strip().splitlines()
    assert lines[0].startswith("olap_rate,class,")
    assert len(lines) == 4
    # normalized latency column tracks mean/baseline-mean
    assert lines[2].split(",")[6] == "2.0000"


def test_interference_cross_class_for_hybrid_vs_plain():
    base = _report(10_000, cls="oltp")
    hybrid = _report(59_000, cls="olxp")
    rep = interference(base, hybrid, sample_class="oltp", treated_class="olxp")
    assert rep.latency_inflation == pytest.approx(5.9, rel=1e-12)
    assert rep.sample_class == "oltp->olxp"
    with pytest.raises(ValidationError):
        interference(base, hybrid, sample_class="oltp")  # class absent in treated


def test_interference_report_as_dict():
    rep = interference(_report(1000), _report(1500))
    d = rep.as_dict()
    assert d["class"] == "oltp"
    assert d["latency_inflation"] == pytest.approx(1.5)
    assert isinstance(rep, InterferenceReport)
