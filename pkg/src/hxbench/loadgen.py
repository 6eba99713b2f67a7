"""Workload driving: open-loop (precomputed, response-independent send
schedules at a controlled rate) and closed-loop (a fixed set of
terminals, each new request triggered by the previous response), in
three agent-combination modes:

    sequential  one class at a time (online, then analytical), each in
                its own warm-up + measurement window
    concurrent  online and analytical agents simultaneously at their
                configured rates
    hybrid      hybrid transactions only (real-time query inside an
                online transaction)

Per-class dispatchers pre-generate bound instances ahead of their send
times and feed bounded request queues; on overflow in open-loop mode the
request is recorded as dropped rather than blocking the scheduler. A
worker pool per class pulls from the queue and executes against the
shared session pool. Samples carry both send-time-to-commit (headline,
immune to coordinated omission) and queue-exit-to-commit latencies.

Open-loop send times are a pure function of (rate, horizon, jitter,
seed). Scheduler tolerance on an idle host: 99% of dispatches within
+/- 1 ms of schedule; late dispatches catch up immediately so the
dispatched count is exact.
"""

from __future__ import annotations

import hashlib
import queue
import threading
import time
from collections import deque
from dataclasses import dataclass, replace

import numpy as np

from .benchspec.catalog import default_mix
from .benchspec.instantiate import instantiate
from .benchspec.types import BenchmarkCatalog
from .driver import BackendTarget, PooledBackend, connect, execute_transaction
from .errors import ConfigError, ValidationError
from .metrics import (
    STATUS_ABORTED,
    STATUS_COMMITTED,
    STATUS_DROPPED,
    LatencySample,
    RunReport,
    summarize,
)

MODES = ("sequential", "concurrent", "hybrid")
LOOPS = ("open", "closed")
JITTERS = ("fixed", "poisson")

DEFAULT_WARMUP_S = 60.0
DEFAULT_DURATION_S = 240.0
DEFAULT_SCALE = 50
DEFAULT_QUEUE_BOUND = 10_000
DEFAULT_GRACE_S = 5.0

_CLASS_OF = {"oltp": "online", "olap": "analytical", "olxp": "hybrid"}


@dataclass(frozen=True)
class RunConfig:
    target: BackendTarget
    mode: str = "concurrent"
    loop: str = "open"
    oltp_rate: float = 0.0
    olap_rate: float = 0.0
    hybrid_rate: float = 0.0
    terminals: int = 8
    warmup_s: float = DEFAULT_WARMUP_S
    duration_s: float = DEFAULT_DURATION_S
    seed: int = 42
    scale: int = DEFAULT_SCALE
    weights: dict[str, int] | None = None
    jitter: str = "fixed"
    queue_bound: int = DEFAULT_QUEUE_BOUND
    grace_s: float = DEFAULT_GRACE_S
    max_retries: int = 3

    def __post_init__(self):
        if self.mode not in MODES:
            raise ConfigError(f"mode must be one of {MODES}", where="mode")
        if self.loop not in LOOPS:
            raise ConfigError(f"loop must be one of {LOOPS}", where="loop")
        if self.jitter not in JITTERS:
            raise ConfigError(f"jitter must be one of {JITTERS}", where="jitter")
        for name in ("oltp_rate", "olap_rate", "hybrid_rate"):
            if getattr(self, name) < 0:
                raise ConfigError("request rates must be >= 0", where=name)
        if self.duration_s <= 0:
            raise ConfigError("duration must be > 0", where="duration_s")
        if self.warmup_s < 0:
            raise ConfigError("warmup must be >= 0", where="warmup_s")
        if self.scale < 1:
            raise ConfigError("scale must be >= 1", where="scale")
        if self.mode == "hybrid" and (self.oltp_rate or self.olap_rate):
            raise ConfigError(
                "hybrid mode drives hybrid transactions only; oltp_rate and"
                " olap_rate must be 0",
                where="oltp_rate" if self.oltp_rate else "olap_rate",
            )
        if self.mode in ("sequential", "concurrent") and self.hybrid_rate:
            raise ConfigError(
                f"{self.mode} mode drives online/analytical classes;"
                " hybrid_rate must be 0",
                where="hybrid_rate",
            )
        if self.loop == "closed":
            if self.terminals < 1:
                raise ConfigError("closed loop needs terminals >= 1", where="terminals")
            if self.oltp_rate or self.olap_rate or self.hybrid_rate:
                raise ConfigError(
                    "closed loop is driven by terminals; request rates must be 0",
                    where="loop",
                )
        elif not (self.oltp_rate or self.olap_rate or self.hybrid_rate):
            raise ConfigError("open loop needs at least one nonzero rate", where="loop")

    def active_classes(self) -> list[str]:
        if self.mode == "hybrid":
            return ["olxp"]
        if self.loop == "closed":
            classes = {"sequential": ["oltp", "olap"], "concurrent": ["oltp", "olap"]}
            return classes[self.mode]
        out = []
        if self.oltp_rate > 0:
            out.append("oltp")
        if self.olap_rate > 0:
            out.append("olap")
        return out

    def rate_of(self, sample_class: str) -> float:
        return {"oltp": self.oltp_rate, "olap": self.olap_rate, "olxp": self.hybrid_rate}[
            sample_class
        ]


@dataclass(frozen=True)
class SendSchedule:
    rate: float
    horizon_s: float
    jitter: str
    seed: int
    times: np.ndarray  # seconds from run start, nondecreasing, < horizon

    def __post_init__(self):
        t = self.times
        if t.size and (np.any(np.diff(t) < 0) or t[0] < 0 or t[-1] >= self.horizon_s):
            raise ValidationError("schedule times must be nondecreasing within [0, horizon)")

    def __len__(self):
        return int(self.times.size)


def schedule_open_loop(
    rate: float, horizon_s: float, jitter: str = "fixed", seed: int = 0
) -> SendSchedule:
    """Precomputed send times: fixed -> exact 1/rate interarrivals;
    poisson -> exponential interarrivals with mean 1/rate."""
    if rate <= 0:
        raise ValidationError(f"rate must be > 0, got {rate}")
    if horizon_s <= 0:
        raise ValidationError(f"horizon must be > 0, got {horizon_s}")
    if jitter not in JITTERS:
        raise ValidationError(f"jitter must be one of {JITTERS}")
    if jitter == "fixed":
        n = int(np.floor(rate * horizon_s + 1e-9))
        times = np.arange(n, dtype=np.float64) / rate
    else:
        rng = np.random.default_rng(seed)
        # Poisson(rate * horizon) arrivals; overdraw then truncate.
        n_draw = max(16, int(rate * horizon_s * 1.5 + 10 * np.sqrt(rate * horizon_s)))
        while True:
            gaps = rng.exponential(1.0 / rate, size=n_draw)
            times = np.cumsum(gaps)
            if times[-1] >= horizon_s:
                break
            n_draw *= 2
        times = times[times < horizon_s]
    return SendSchedule(rate, horizon_s, jitter, seed, times)


class _Gauge:
    def __init__(self):
        self._v = 0
        self.max = 0
        self._lock = threading.Lock()

    def inc(self):
        with self._lock:
            self._v += 1
            self.max = max(self.max, self._v)

    def dec(self):
        with self._lock:
            self._v -= 1

    def read(self) -> int:
        with self._lock:
            return self._v


class _BackendExecutor:
    """Default executor: one pooled backend shared by all agents."""

    def __init__(self, backend: PooledBackend, max_retries: int):
        self.backend = backend
        self.max_retries = max_retries
        self.pool_size = backend.pool_size

    def execute(self, instance):
        return execute_transaction(self.backend, instance, max_retries=self.max_retries)


def _weighted_templates(catalog, sample_class, overrides):
    workload_class = _CLASS_OF[sample_class]
    templates = {t.name: t for t in catalog.templates(workload_class)}
    if not templates:
        raise ValidationError(f"catalog {catalog.name} has no {workload_class} templates")
    class_overrides = None
    if overrides:
        named = {k: v for k, v in overrides.items() if k in templates}
        if named:
            class_overrides = named
    mix = default_mix(catalog, workload_class, class_overrides)
    names = sorted(mix)
    probs = np.array([float(mix[n]) for n in names])
    return [templates[n] for n in names], probs


class _ClassRun:
    """Shared state for one class inside one phase."""

    def __init__(self, sample_class, templates, probs, rng, cfg, gauge, samples):
        self.sample_class = sample_class
        self.templates = templates
        self.probs = probs
        self.rng = rng
        self.cfg = cfg
        self.gauge = gauge
        self.samples = samples
        self.queue: queue.Queue = queue.Queue(maxsize=cfg.queue_bound)
        self.choices: list[str] = []
        self.by_template: dict[str, int] = {}
        self.dispatch_skew: list[float] = []
        self.dispatched = 0
        self.failed = 0

    def next_instance(self):
        idx = int(self.rng.choice(len(self.templates), p=self.probs))
        template = self.templates[idx]
        self.choices.append(template.name)
        return instantiate(template, self.rng, self.cfg.scale)


def _dispatcher(run: _ClassRun, schedule: SendSchedule, clock0, stop: threading.Event):
    for t_send in schedule.times:
        inst = run.next_instance()  # generated ahead of the send time
        while True:
            delay = t_send - (time.perf_counter() - clock0)
            if delay <= 0 or stop.is_set():
                break
            if delay > 0.0015:
                stop.wait(min(delay - 0.001, 0.2))
            # final stretch: busy-wait on the clock for sub-ms precision
        if stop.is_set():
            break
        now = time.perf_counter() - clock0
        run.dispatch_skew.append(now - t_send)
        run.by_template[inst.name] = run.by_template.get(inst.name, 0) + 1
        try:
            run.queue.put_nowait((t_send, now, inst))
            run.gauge.inc()
            run.dispatched += 1
        except queue.Full:
            run.samples.append(
                LatencySample(run.sample_class, inst.name, t_send, 0, STATUS_DROPPED)
            )


def _worker(run: _ClassRun, executor, clock0, stop: threading.Event):
    while True:
        try:
            t_send, t_dispatch, inst = run.queue.get(timeout=0.1)
        except queue.Empty:
            if stop.is_set():
                return
            continue
        t_exit = time.perf_counter() - clock0
        outcome = executor.execute(inst)
        done = time.perf_counter() - clock0
        run.gauge.dec()
        if outcome.status == STATUS_COMMITTED:
            status = STATUS_COMMITTED
        else:
            status = STATUS_ABORTED
            if outcome.failed_statement is not None:
                run.failed += 1
        run.samples.append(
            LatencySample(
                run.sample_class,
                inst.name,
                t_send,
                max(1, int((done - t_send) * 1e6)),
                status,
                service_latency_us=max(1, int((done - t_exit) * 1e6)),
                dispatch_time_s=t_dispatch,
            )
        )


def _closed_worker(run: _ClassRun, executor, clock0, horizon_s, lock):
    while True:
        now = time.perf_counter() - clock0
        if now >= horizon_s:
            return
        with lock:
            inst = run.next_instance()
            run.by_template[inst.name] = run.by_template.get(inst.name, 0) + 1
        run.gauge.inc()
        run.dispatched += 1
        outcome = executor.execute(inst)
        done = time.perf_counter() - clock0
        run.gauge.dec()
        status = STATUS_COMMITTED if outcome.status == STATUS_COMMITTED else STATUS_ABORTED
        run.samples.append(
            LatencySample(
                run.sample_class,
                inst.name,
                now,
                max(1, int((done - now) * 1e6)),
                status,
                service_latency_us=max(1, int((done - now) * 1e6)),
                dispatch_time_s=now,
            )
        )


def _run_phase(cfg: RunConfig, catalog, classes, executor, samples, meta):
    horizon = cfg.warmup_s + cfg.duration_s
    gauge = _Gauge()
    runs: list[_ClassRun] = []
    for k, sample_class in enumerate(classes):
        templates, probs = _weighted_templates(catalog, sample_class, cfg.weights)
        rng = np.random.default_rng([cfg.seed & 0xFFFFFFFF, 1000 + k])
        runs.append(_ClassRun(sample_class, templates, probs, rng, cfg, gauge, samples))

    inflight_log: list[tuple[float, int]] = []
    stop_sampler = threading.Event()

    def sampler():
        while not stop_sampler.is_set():
            inflight_log.append((time.perf_counter() - clock0, gauge.read()))
            stop_sampler.wait(0.1)

    threads: list[threading.Thread] = []
    clock0 = time.perf_counter()
    sampler_t = threading.Thread(target=sampler, daemon=True)
    sampler_t.start()

    if cfg.loop == "open":
        stop_dispatch = threading.Event()
        stop_workers = threading.Event()
        schedules = {}
        dispatchers = []
        for k, run in enumerate(runs):
            sched = schedule_open_loop(
                cfg.rate_of(run.sample_class), horizon, cfg.jitter,
                seed=cfg.seed * 10_007 + k,
            )
            schedules[run.sample_class] = sched
            dispatchers.append(
                threading.Thread(target=_dispatcher, args=(run, sched, clock0, stop_dispatch),
                                 daemon=True)
            )
        threads.extend(dispatchers)
        for run in runs:
            for _ in range(executor.pool_size):
                threads.append(
                    threading.Thread(target=_worker, args=(run, executor, clock0, stop_workers),
                                     daemon=True)
                )
        for t in threads:
            t.start()
        remaining = horizon - (time.perf_counter() - clock0)
        if remaining > 0:
            time.sleep(remaining)
        # schedules end before the horizon; let a lagging dispatcher catch
        # up within the grace window rather than cutting its final sends
        deadline = time.perf_counter() + cfg.grace_s
        for d in dispatchers:
            d.join(timeout=max(0.0, deadline - time.perf_counter()))
        stop_dispatch.set()
        while time.perf_counter() < deadline:
            if all(r.queue.empty() for r in runs) and gauge.read() == 0:
                break
            time.sleep(0.02)
        stop_workers.set()
        for t in threads:
            t.join(timeout=cfg.grace_s)
        for run in runs:  # anything still queued never executed
            while True:
                try:
                    t_send, _, inst = run.queue.get_nowait()
                except queue.Empty:
                    break
                run.gauge.dec()
                run.samples.append(
                    LatencySample(run.sample_class, inst.name, t_send, 0, STATUS_DROPPED)
                )
        for run in runs:
            sched = schedules[run.sample_class]
            meta.setdefault("scheduled", {})[run.sample_class] = len(sched)
            meta.setdefault("dispatched", {})[run.sample_class] = run.dispatched
            if run.dispatch_skew:
                skew = np.abs(np.array(run.dispatch_skew))
                meta.setdefault("dispatch_skew_p99_ms", {})[run.sample_class] = float(
                    np.quantile(skew, 0.99) * 1e3
                )
    else:
        lock = threading.Lock()
        for run in runs:
            for _ in range(cfg.terminals):
                threads.append(
                    threading.Thread(
                        target=_closed_worker, args=(run, executor, clock0, horizon, lock),
                        daemon=True,
                    )
                )
        for t in threads:
            t.start()
        for t in threads:
            t.join()
        for run in runs:
            meta.setdefault("dispatched", {})[run.sample_class] = run.dispatched

    stop_sampler.set()
    sampler_t.join(timeout=1.0)

    window = [v for t, v in inflight_log if cfg.warmup_s <= t < horizon]
    for run in runs:
        meta.setdefault("mean_in_flight", {})[run.sample_class] = (
            float(np.mean(window)) if window else 0.0
        )
        meta.setdefault("max_in_flight", {})[run.sample_class] = gauge.max
        meta.setdefault("failed", {})[run.sample_class] = run.failed
        meta.setdefault("template_choices", {})[run.sample_class] = len(run.choices)
        meta.setdefault("dispatched_by_template", {})[run.sample_class] = dict(
            sorted(run.by_template.items())
        )
    return runs


def _schedule_digest(cfg: RunConfig, catalog, classes) -> str:
    """Digest of the would-be dispatch plan (send times and template
    choices); a pure function of the config, never of responses."""
    h = hashlib.sha256()
    horizon = cfg.warmup_s + cfg.duration_s
    for k, sample_class in enumerate(classes):
        h.update(sample_class.encode())
        templates, probs = _weighted_templates(catalog, sample_class, cfg.weights)
        rng = np.random.default_rng([cfg.seed & 0xFFFFFFFF, 1000 + k])
        if cfg.loop == "open":
            sched = schedule_open_loop(
                cfg.rate_of(sample_class), horizon, cfg.jitter, seed=cfg.seed * 10_007 + k
            )
            h.update(np.round(sched.times * 1e9).astype(np.int64).tobytes())
            for _ in range(len(sched)):
                idx = int(rng.choice(len(templates), p=probs))
                h.update(templates[idx].name.encode())
                instantiate(templates[idx], rng, cfg.scale)
    return h.hexdigest()


def _phases(cfg: RunConfig) -> list[list[str]]:
    active = cfg.active_classes()
    if not active:
        raise ConfigError("no active workload class", where="mode")
    if cfg.mode == "sequential":
        return [[c] for c in active]
    return [active]


def run(cfg: RunConfig, catalog: BenchmarkCatalog, executor=None) -> RunReport:
    """Execute one measured run and summarize it.

    The backend must already carry the created schema and initial
    population. Samples older than the warm-up are excluded from every
    reported statistic; saturation never errors (queue growth and drops
    are measurements).
    """
    phases = _phases(cfg)
    own_backend = executor is None
    if own_backend:
        backend = connect(cfg.target)
        executor = _BackendExecutor(backend, cfg.max_retries)
    samples: deque[LatencySample] = deque()
    meta: dict = {
        "benchmark": catalog.name,
        "mode": cfg.mode,
        "loop": cfg.loop,
        "rates": {"oltp": cfg.oltp_rate, "olap": cfg.olap_rate, "olxp": cfg.hybrid_rate},
        "seed": cfg.seed,
        "scale": cfg.scale,
        "jitter": cfg.jitter,
    }
    if cfg.loop == "open":
        meta["schedule_digest"] = _schedule_digest(cfg, catalog, cfg.active_classes())
    try:
        for classes in phases:
            _run_phase(cfg, catalog, classes, executor, samples, meta)
    finally:
        if own_backend:
            backend.close()
    # a worker stuck past the grace window may still append; snapshot safely
    for _ in range(200):
        try:
            snapshot = list(samples)
            break
        except RuntimeError:
            time.sleep(0.05)
    else:
        snapshot = list(samples)
    return summarize(snapshot, cfg.warmup_s, cfg.duration_s, meta=meta)


def sweep(
    base: RunConfig,
    axis: str,
    values,
    catalog: BenchmarkCatalog,
    executor=None,
    before_run=None,
) -> list[RunReport]:
    """One run per axis value with everything else held fixed. Reports
    are tagged with the axis value; `before_run(config)` can reset state
    between runs."""
    if axis not in ("oltp_rate", "olap_rate"):
        raise ValidationError(f"sweep axis must be oltp_rate or olap_rate, got {axis!r}")
    values = list(values)
    if any(b < a for a, b in zip(values, values[1:])):
        raise ValidationError("sweep values must be nondecreasing")
    reports = []
    for v in values:
        cfg = replace(base, **{axis: float(v)})
        if before_run is not None:
            before_run(cfg)
        rep = run(cfg, catalog, executor=executor)
        rep.meta["axis"] = axis
        rep.meta["axis_value"] = v
        reports.append(rep)
    return reports
