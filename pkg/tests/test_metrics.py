"""Percentiles against a full-sort oracle, summarization, multi-run
aggregation."""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hxbench.errors import UndefinedStatisticError, ValidationError
from hxbench.metrics import (
    LatencySample,
    RunReport,
    aggregate_runs,
    percentile,
    summarize,
)


def sort_oracle(values, p):
    """Independent nearest-rank oracle: explicit full sort plus ceil index."""
    ordered = sorted(values)
    return ordered[math.ceil(p * len(ordered)) - 1]


def make_sample(cls="oltp", template="T", send=5.0, latency=1000, status="committed"):
    return LatencySample(cls, template, send, latency, status)


# --- percentile -------------------------------------------------------------


def test_singleton_percentile_any_p():
    for p in (0.01, 0.5, 0.9, 0.999, 1.0):
        assert percentile([7], p) == 7


def test_percentile_1_to_100():
    values = list(range(1, 101))
    assert percentile(values, 0.90) == 90
    assert percentile(values, 0.9999) == 100  # ceil(99.99) = 100
    assert percentile(values, 0.50) == 50
    assert percentile(values, 1.0) == 100


def test_percentile_empty_errors():
    with pytest.raises(UndefinedStatisticError):
        percentile([], 0.5)


def test_percentile_bad_fraction():
    for p in (0, -0.1, 1.0001):
        with pytest.raises(ValidationError):
            percentile([1], p)


@given(
    st.lists(st.integers(min_value=0, max_value=10**9), min_size=1, max_size=400),
    st.floats(min_value=1e-6, max_value=1.0, allow_nan=False),
)
@settings(max_examples=200, deadline=None)
def test_percentile_matches_full_sort_oracle(values, p):
    assert percentile(values, p) == sort_oracle(values, p)


def test_percentile_large_multiset_against_oracle():
    rng = np.random.default_rng(77)
    values = rng.integers(0, 10**7, size=1_000_000)
    for p in (0.5, 0.9, 0.95, 0.999, 0.9999, 1.0):
        assert percentile(values, p) == sort_oracle(values.tolist(), p)


# --- summarize --------------------------------------------------------------


def test_degenerate_distribution_every_percentile_equal():
    samples = [make_sample(send=1.0 + i * 0.01, latency=5000) for i in range(100)]
    rep = summarize(samples, warmup_s=1.0, duration_s=10.0)
    s = rep.classes["oltp"]
    assert (
        s.min_us == s.p50_us == s.p90_us == s.p95_us
        == s.p999_us == s.p9999_us == s.max_us == 5000
    )
    assert s.mean_us == 5000.0


def test_throughput_is_count_over_window():
    samples = [
        make_sample(send=60.0 + i * 0.25, latency=100 + i) for i in range(960)
    ]
    rep = summarize(samples, warmup_s=60.0, duration_s=240.0)
    assert rep.classes["oltp"].count == 960
    assert rep.classes["oltp"].tput == pytest.approx(4.0)
    assert rep.classes["oltp"].tput * rep.duration_s == 960


def test_warmup_samples_excluded():
    warm = [make_sample(send=t, latency=1) for t in (0.0, 30.0, 59.999)]
    live = [make_sample(send=t, latency=10) for t in (60.0, 100.0, 299.9)]
    late = [make_sample(send=300.0, latency=10)]
    rep = summarize(warm + live + late, warmup_s=60.0, duration_s=240.0)
    assert rep.classes["oltp"].count == len(live)


def test_summarize_order_insensitive():
    rng = np.random.default_rng(3)
    samples = [
        make_sample(send=float(rng.uniform(1, 9)), latency=int(rng.integers(1, 10**6)))
        for _ in range(500)
    ]
    a = summarize(samples, 1.0, 10.0)
    shuffled = list(samples)
    rng.shuffle(shuffled)
    b = summarize(shuffled, 1.0, 10.0)
    assert a.classes == b.classes
    assert a.series == b.series


def test_percentile_ordering_invariant_on_random_reports():
    rng = np.random.default_rng(11)
    for _ in range(25):
        n = int(rng.integers(1, 2000))
        samples = [
            make_sample(send=float(rng.uniform(0, 10)), latency=int(rng.integers(1, 10**7)))
            for _ in range(n)
        ]
        rep = summarize(samples, 0.0, 10.0)
        s = rep.classes["oltp"]
        assert (
            s.min_us <= s.p50_us <= s.p90_us <= s.p95_us
            <= s.p999_us <= s.p9999_us <= s.max_us
        )


def test_zero_committed_marks_statistics_absent():
    samples = [make_sample(status="aborted", latency=0, send=2.0)]
    rep = summarize(samples, 0.0, 10.0)
    s = rep.classes["oltp"]
    assert s.count == 0
    assert s.tput is None and s.mean_us is None and s.p9999_us is None
    assert s.abort_rate == 1.0


def test_abort_and_drop_rates():
    samples = (
        [make_sample(send=1.0, latency=100) for _ in range(8)]
        + [make_sample(send=1.0, latency=0, status="aborted")]
        + [make_sample(send=1.0, latency=0, status="dropped")]
    )
    rep = summarize(samples, 0.0, 10.0)
    s = rep.classes["oltp"]
    assert s.abort_rate == pytest.approx(1 / 9)  # aborted / attempted
    assert s.drop_rate == pytest.approx(1 / 10)  # dropped / dispatched


def test_per_window_series_counts_commits():
    samples = [make_sample(send=0.5, latency=1), make_sample(send=0.7, latency=1),
               make_sample(send=3.2, latency=1)]
    rep = summarize(samples, 0.0, 5.0)
    assert rep.series["oltp"] == [2, 0, 0, 1, 0]
    assert sum(rep.series["oltp"]) == rep.classes["oltp"].count


def test_committed_sample_requires_positive_latency():
    with pytest.raises(ValidationError):
        make_sample(latency=0)


def test_report_json_round_trip():
    samples = [make_sample(send=1.0 + i, latency=100 * (i + 1)) for i in range(5)]
    rep = summarize(samples, 0.0, 10.0, meta={"seed": 1})
    back = RunReport.from_dict(__import__("json").loads(rep.to_json()))
    assert back.classes == rep.classes
    assert back.meta == rep.meta


# --- aggregate_runs ---------------------------------------------------------


def _report_with_mean(mean):
    samples = [make_sample(send=1.0, latency=mean)]
    return summarize(samples, 0.0, 10.0)


def test_identical_reports_zero_stddev():
    reports = [_report_with_mean(500) for _ in range(3)]
    agg = aggregate_runs(reports)
    for _field, (avg, std) in agg["oltp"].items():
        assert std == 0.0
    assert agg["oltp"]["mean_us"][0] == 500.0


def test_aggregate_mean_and_sample_stddev():
    reports = [_report_with_mean(m) for m in (1, 2, 3)]
    agg = aggregate_runs(reports)
    avg, std = agg["oltp"]["mean_us"]
    assert avg == 2.0
    assert std == 1.0  # sample stddev, n-1 denominator


def test_aggregate_three_run_protocol_shape():
    reports = [_report_with_mean(m) for m in (10, 12, 14)]
    agg = aggregate_runs(reports)
    assert set(agg) == {"oltp"}
    assert agg["oltp"]["count"][0] == 1.0


def test_aggregate_rejects_mismatched_shapes():
    a = _report_with_mean(5)
    b_samples = [make_sample(cls="olap", send=1.0, latency=5)]
    b = summarize(b_samples, 0.0, 10.0)
    with pytest.raises(ValidationError):
        aggregate_runs([a, b])


def test_aggregate_needs_reports():
    with pytest.raises(ValidationError):
        aggregate_runs([])
