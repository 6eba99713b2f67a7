"""Schedules, run modes, queue semantics, and measurement accounting."""

import time
from fractions import Fraction

import numpy as np
import pytest
import scipy.stats

from hxbench import driver, loadgen
from hxbench.benchspec import default_mix, load_catalog
from hxbench.driver import ExecutionOutcome
from hxbench.errors import ConfigError, ValidationError
from hxbench.loadgen import RunConfig, schedule_open_loop


class StubExecutor:
    """Deterministic executor: optional fixed service delay, no backend."""

    def __init__(self, pool_size=4, delay_s=0.0):
        self.pool_size = pool_size
        self.delay_s = delay_s
        self.executed = 0

    def execute(self, inst):
        if self.delay_s:
            time.sleep(self.delay_s)
        self.executed += 1
        return ExecutionOutcome(status="committed", rows_touched=1,
                                latency_us=max(1, int(self.delay_s * 1e6)))


def _target(tmp_path, name="lg"):
    return driver.embedded_backend(str(tmp_path / f"{name}.db"), pool_size=4)


def _cfg(tmp_path, **kw):
    base = dict(target=_target(tmp_path), mode="sequential", oltp_rate=50.0,
                warmup_s=0.2, duration_s=2.0, seed=5, scale=1)
    base.update(kw)
    return RunConfig(**base)


# --- schedules ---------------------------------------------------------------


def test_fixed_schedule_exact_spacing():
    sched = schedule_open_loop(100, 10, "fixed")
    assert len(sched) == 1000
    gaps = np.diff(sched.times)
    assert np.allclose(gaps, 0.01)
    assert sched.times[0] == 0.0
    assert sched.times[-1] < 10.0


def test_fixed_schedule_four_per_second_240s():
    assert len(schedule_open_loop(4, 240, "fixed")) == 960


def test_schedule_rejects_bad_rate():
    with pytest.raises(ValidationError):
        schedule_open_loop(0, 10, "fixed")
    with pytest.raises(ValidationError):
        schedule_open_loop(-1, 10, "fixed")


def test_schedule_is_pure_function():
    a = schedule_open_loop(100, 10, "poisson", seed=9)
    b = schedule_open_loop(100, 10, "poisson", seed=9)
    assert np.array_equal(a.times, b.times)
    c = schedule_open_loop(100, 10, "poisson", seed=10)
    assert not np.array_equal(a.times, c.times)


def test_poisson_interarrivals_pass_chi_square():
    rate, horizon = 100, 10
    sched = schedule_open_loop(rate, horizon, "poisson", seed=4)
    gaps = np.diff(sched.times)
    # equal-probability bins under Exp(rate); chi-square GOF at alpha=0.01
    k = 10
    edges = [-np.log(1 - i / k) / rate for i in range(k)] + [np.inf]
    observed, _ = np.histogram(gaps, bins=edges)
    chi2, p = scipy.stats.chisquare(observed)
    assert p > 0.01, f"chi2={chi2}, p={p}"
    # count statistically consistent with rate * horizon
    assert abs(len(sched) - rate * horizon) < 4 * np.sqrt(rate * horizon)


# --- config validation -------------------------------------------------------


def test_hybrid_mode_rejects_oltp_rate(tmp_path):
    with pytest.raises(ConfigError):
        _cfg(tmp_path, mode="hybrid", oltp_rate=10.0, hybrid_rate=5.0)


def test_concurrent_mode_rejects_hybrid_rate(tmp_path):
    with pytest.raises(ConfigError):
        _cfg(tmp_path, mode="concurrent", hybrid_rate=5.0)


def test_closed_loop_rejects_rates(tmp_path):
    with pytest.raises(ConfigError):
        _cfg(tmp_path, loop="closed", oltp_rate=10.0)


def test_open_loop_needs_a_rate(tmp_path):
    with pytest.raises(ConfigError):
        _cfg(tmp_path, oltp_rate=0.0)


def test_negative_rate_rejected(tmp_path):
    with pytest.raises(ConfigError):
        _cfg(tmp_path, oltp_rate=-1.0)


# --- open-loop runs ----------------------------------------------------------


def test_open_loop_dispatch_count_and_rate(tmp_path):
    cfg = _cfg(tmp_path, oltp_rate=200.0, warmup_s=0.5, duration_s=2.5)
    rep = loadgen.run(cfg, load_catalog("fibenchmark"), executor=StubExecutor())
    horizon = cfg.warmup_s + cfg.duration_s
    assert rep.meta["scheduled"]["oltp"] == int(200 * horizon)
    assert rep.meta["dispatched"]["oltp"] == rep.meta["scheduled"]["oltp"]
    assert rep.classes["oltp"].count == 500  # 200/s over the 2.5 s window


def test_send_times_response_independent(tmp_path):
    cat = load_catalog("fibenchmark")
    fast = loadgen.run(_cfg(tmp_path, duration_s=1.0), cat, executor=StubExecutor())
    slow = loadgen.run(
        _cfg(tmp_path, duration_s=1.0), cat, executor=StubExecutor(delay_s=0.01)
    )
    assert fast.meta["schedule_digest"] == slow.meta["schedule_digest"]


def test_warmup_excluded_from_report(tmp_path):
    cfg = _cfg(tmp_path, oltp_rate=100.0, warmup_s=1.0, duration_s=1.0)
    rep = loadgen.run(cfg, load_catalog("fibenchmark"), executor=StubExecutor())
    # 200 dispatched over 2 s horizon, only the last 100 counted
    assert rep.meta["dispatched"]["oltp"] == 200
    assert rep.classes["oltp"].count == 100


def test_queue_overflow_records_drops(tmp_path):
    cfg = _cfg(tmp_path, oltp_rate=300.0, warmup_s=0.0, duration_s=1.0,
               queue_bound=3, grace_s=0.5)
    rep = loadgen.run(
        cfg, load_catalog("fibenchmark"), executor=StubExecutor(pool_size=1, delay_s=0.05)
    )
    s = rep.classes["oltp"]
    assert s.drop_rate > 0
    total = round(s.drop_rate * rep.meta["template_choices"]["oltp"])
    assert total > 0


def test_concurrent_mode_runs_both_classes(tmp_path):
    cfg = _cfg(tmp_path, mode="concurrent", oltp_rate=50.0, olap_rate=10.0,
               warmup_s=0.2, duration_s=1.0)
    rep = loadgen.run(cfg, load_catalog("fibenchmark"), executor=StubExecutor())
    assert rep.classes["oltp"].count == 50
    assert rep.classes["olap"].count == 10


def test_sequential_mode_phases_each_class(tmp_path):
    cfg = _cfg(tmp_path, mode="sequential", oltp_rate=40.0, olap_rate=10.0,
               warmup_s=0.2, duration_s=1.0)
    rep = loadgen.run(cfg, load_catalog("fibenchmark"), executor=StubExecutor())
    assert rep.classes["oltp"].count == 40
    assert rep.classes["olap"].count == 10


def test_hybrid_mode_sends_hybrids_only(tmp_path):
    cfg = _cfg(tmp_path, mode="hybrid", oltp_rate=0.0, hybrid_rate=30.0,
               warmup_s=0.2, duration_s=1.0)
    rep = loadgen.run(cfg, load_catalog("fibenchmark"), executor=StubExecutor())
    assert set(rep.classes) == {"olxp"}
    assert rep.classes["olxp"].count == 30


def test_weights_override_drives_single_template(tmp_path, populated):
    cat, be = populated("fibenchmark", name="weights")
    cfg = RunConfig(target=be.target, mode="sequential", oltp_rate=30.0,
                    warmup_s=0.0, duration_s=1.0, seed=5, scale=1,
                    weights={"Balance": 1})
    executor = loadgen._BackendExecutor(be, 3)
    rep = loadgen.run(cfg, cat, executor=executor)
    assert rep.classes["oltp"].count == 30
    assert rep.meta["failed"]["oltp"] == 0


# --- closed loop -------------------------------------------------------------

def test_closed_loop_inflight_bounded_by_terminals(tmp_path):
    cfg = _cfg(tmp_path, loop="closed", mode="hybrid", oltp_rate=0.0,
               terminals=3, warmup_s=0.2, duration_s=1.0)
    rep = loadgen.run(cfg, load_catalog("fibenchmark"),
                      executor=StubExecutor(delay_s=0.005))
    assert rep.meta["max_in_flight"]["olxp"] <= 3
    assert rep.classes["olxp"].count > 50  # self-clocked, way above open-loop rates


# --- mix convergence ---------------------------------------------------------


def test_template_choice_stream_matches_default_mix():
    cat = load_catalog("subenchmark")
    templates, probs = loadgen._weighted_templates(cat, "oltp", None)
    mix = default_mix(cat, "online")
    assert {t.name for t in templates} == set(mix)
    for t, p in zip(templates, probs):
        assert Fraction(p).limit_denominator(10**6) == mix[t.name]


def test_littles_law_matches_inflight_gauge(tmp_path):
    # 100 req/s, 50 ms deterministic service -> L = 5 in the steady state
    cfg = _cfg(tmp_path, oltp_rate=100.0, warmup_s=2.0, duration_s=8.0)
    executor = StubExecutor(pool_size=16, delay_s=0.05)
    rep = loadgen.run(cfg, load_catalog("fibenchmark"), executor=executor)
    lam = rep.classes["oltp"].tput
    w = rep.classes["oltp"].mean_us / 1e6
    from hxbench.analysis import littles_law_L

    expected = littles_law_L(lam, w)
    observed = rep.meta["mean_in_flight"]["oltp"]
    assert observed == pytest.approx(expected, rel=0.10)
