"""Command-line orchestration: ddl, populate, run, sweep, report,
check-schema. Every scalar XML field has a flag override; exit codes map
error categories (2 config/validation, 3 schema ordering, 4 backend,
5 load/precondition, 6 statistics, 1 unexpected)."""

from __future__ import annotations

import argparse
import dataclasses
import json
import sys
from pathlib import Path

from . import analysis, datagen, driver, loadgen, metrics
from .benchspec import (
    BENCHMARK_NAMES,
    check_semantic_consistency,
    emit_ddl,
    inventory,
    load_catalog,
    stitched_fixture,
)
from .errors import ConfigError, HxBenchError
from .xmlconfig import XmlRunSpec, apply_rate_defaults, parse_config

_EXIT_CODES = {
    "config": 2,
    "validation": 2,
    "unknown-benchmark": 2,
    "unorderable-schema": 3,
    "backend-unreachable": 4,
    "unsupported-isolation": 4,
    "precondition": 5,
    "load": 5,
    "undefined-statistic": 6,
    "internal": 1,
}

_SPEC_FLAGS = (
    "benchmark", "fk", "scale", "seed", "mode", "loop", "oltp_rate",
    "olap_rate", "hybrid_rate", "warmup_s", "duration_s", "isolation",
    "target", "output",
)


def _add_spec_flags(p: argparse.ArgumentParser, require_benchmark=False):
    p.add_argument("--config", help="XML run configuration file")
    p.add_argument("--benchmark", "-b", choices=BENCHMARK_NAMES,
                   required=require_benchmark)
    p.add_argument("--fk", action=argparse.BooleanOptionalAction, default=None,
                   help="emit/load the foreign-key schema variant")
    p.add_argument("--scale", type=int)
    p.add_argument("--seed", type=int)
    p.add_argument("--mode", choices=loadgen.MODES)
    p.add_argument("--loop", choices=loadgen.LOOPS)
    p.add_argument("--oltp-rate", type=float, dest="oltp_rate")
    p.add_argument("--olap-rate", type=float, dest="olap_rate")
    p.add_argument("--hybrid-rate", type=float, dest="hybrid_rate")
    p.add_argument("--warmup-s", type=float, dest="warmup_s")
    p.add_argument("--duration-s", type=float, dest="duration_s")
    p.add_argument("--isolation", choices=driver.ISOLATION_LEVELS)
    p.add_argument("--target", help="backend descriptor, e.g. embedded:///tmp/hx.db")
    p.add_argument("--output", help="report file path")
    p.add_argument("--pool-size", type=int, default=8, dest="pool_size")
    p.add_argument("--terminals", type=int, default=8)
    p.add_argument("--jitter", choices=loadgen.JITTERS, default=None)


def _spec_from_args(args) -> XmlRunSpec:
    if args.config:
        spec = parse_config(args.config)
        overrides = {}
        for name in _SPEC_FLAGS:
            v = getattr(args, name, None)
            if v is not None:
                overrides["descriptor" if name == "target" else name] = v
        if overrides:
            spec = dataclasses.replace(spec, **overrides)
    else:
        if not getattr(args, "benchmark", None):
            raise ConfigError("need --config or --benchmark", where="--benchmark")
        if not getattr(args, "target", None):
            raise ConfigError("need --config or --target", where="--target")
        kwargs = {}
        for name in _SPEC_FLAGS:
            v = getattr(args, name, None)
            if v is not None:
                kwargs["descriptor" if name == "target" else name] = v
        spec = XmlRunSpec(**apply_rate_defaults(kwargs))
    spec.to_run_config()  # validate merged result
    return spec


def _connect(spec: XmlRunSpec, args) -> driver.PooledBackend:
    target = driver.BackendTarget(
        spec.descriptor, pool_size=args.pool_size, isolation=spec.isolation
    )
    return driver.connect(target)


def _cmd_ddl(args) -> int:
    catalog = load_catalog(args.benchmark)
    script = emit_ddl(catalog, bool(args.fk))
    if args.out:
        Path(args.out).write_text(script)
    else:
        sys.stdout.write(script)
    if args.apply:
        if not args.target:
            raise ConfigError("--apply needs --target", where="--target")
        target = driver.BackendTarget(args.target, pool_size=1)
        backend = driver.connect(target)
        try:
            backend.run_script(script)
        finally:
            backend.close()
        print(f"applied {args.benchmark} schema (fk={'on' if args.fk else 'off'})"
              f" to {args.target}", file=sys.stderr)
    return 0


def _cmd_populate(args) -> int:
    spec = _spec_from_args(args)
    catalog = load_catalog(spec.benchmark)
    backend = _connect(spec, args)
    try:
        summary = datagen.populate(
            catalog, spec.scale, spec.seed, backend, batch_size=args.batch_size
        )
    finally:
        backend.close()
    for record in summary.records():
        print(json.dumps(record))
    print(summary.render(), file=sys.stderr)
    out = args.summary_out or (spec.output and spec.output + ".load.json")
    if out:
        Path(out).write_text(json.dumps(
            {"benchmark": spec.benchmark, "scale": spec.scale, "seed": spec.seed,
             "tables": summary.records()}, indent=2) + "\n")
    return 0


def _cmd_run(args) -> int:
    spec = _spec_from_args(args)
    cfg, _ = spec.to_run_config(
        pool_size=args.pool_size,
        terminals=args.terminals,
        jitter=args.jitter or "fixed",
    )
    catalog = load_catalog(spec.benchmark)
    report = loadgen.run(cfg, catalog)
    print(report.render())
    out = args.output or spec.output
    if out:
        Path(out).write_text(report.to_json() + "\n")
        print(f"report written to {out}", file=sys.stderr)
    return 0


def _cmd_sweep(args) -> int:
    spec = _spec_from_args(args)
    cfg, _ = spec.to_run_config(
        pool_size=args.pool_size,
        terminals=args.terminals,
        jitter=args.jitter or "fixed",
    )
    catalog = load_catalog(spec.benchmark)
    values = [float(v) for v in args.values.split(",")] if args.values else []
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    reports = loadgen.sweep(cfg, args.axis, values, catalog)
    for rep in reports:
        tag = str(rep.meta["axis_value"]).replace(".", "_")
        path = out_dir / f"report_{args.axis}_{tag}.json"
        path.write_text(rep.to_json() + "\n")
        print(f"{args.axis}={rep.meta['axis_value']}: report written to {path}",
              file=sys.stderr)
    if reports:
        cls = "olap" if args.axis == "oltp_rate" else "oltp"
        csv_text = analysis.interference_csv(reports, sample_class=cls, axis=args.axis)
        csv_path = out_dir / "interference.csv"
        csv_path.write_text(csv_text)
        print(csv_text, end="")
        print(f"interference CSV written to {csv_path}", file=sys.stderr)
    return 0


def _cmd_report(args) -> int:
    path = Path(args.report)
    if not path.exists():
        raise ConfigError(f"report file not found: {path}", where=str(path))
    report = metrics.RunReport.from_dict(json.loads(path.read_text()))
    print(report.render())
    changed = False
    if args.baseline:
        baseline = metrics.RunReport.from_dict(json.loads(Path(args.baseline).read_text()))
        inter = analysis.interference(
            baseline, report,
            sample_class=args.sample_class,
            treated_class=args.treated_class,
        )
        print(
            f"interference vs {args.baseline} [{inter.sample_class}]:"
            f" latency x{inter.latency_inflation:.2f},"
            f" p95 x{inter.tail_inflation:.2f},"
            f" throughput degradation {100 * inter.throughput_degradation:.1f}%"
        )
        report.meta["interference"] = inter.as_dict()
        changed = True
    if args.lock_counts:
        counts = analysis.parse_lock_counts(Path(args.lock_counts).read_text())
        nlo = [analysis.normalized_lock_overhead(c) for c in counts]
        for c, v in zip(counts, nlo):
            print(f"NLO(LS={c.lock_samples}, TS={c.total_samples},"
                  f" BLO={c.baseline_overhead}) = {v:.2f}%")
        report.meta["normalized_lock_overhead_pct"] = nlo
        changed = True
    if changed:
        path.write_text(report.to_json() + "\n")
        print(f"analysis appended to {path}", file=sys.stderr)
    return 0


def _cmd_check_schema(args) -> int:
    catalog = stitched_fixture() if args.stitched else load_catalog(args.benchmark)
    if args.inventory:
        print(json.dumps(inventory(catalog), indent=2))
    report = check_semantic_consistency(catalog)
    print(report.render())
    return 0 if report.passed else 1


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="hxbench",
        description="Hybrid transactional/analytical SQL benchmark harness",
    )
    sub = p.add_subparsers(dest="command", required=True)

    d = sub.add_parser("ddl", help="emit schema DDL (optionally apply to a backend)")
    d.add_argument("--benchmark", "-b", choices=BENCHMARK_NAMES, required=True)
    d.add_argument("--fk", action=argparse.BooleanOptionalAction, default=False)
    d.add_argument("--out", help="write script to this file instead of stdout")
    d.add_argument("--apply", action="store_true", help="execute the script on --target")
    d.add_argument("--target")
    d.set_defaults(func=_cmd_ddl)

    pop = sub.add_parser("populate", help="load the deterministic initial population")
    _add_spec_flags(pop)
    pop.add_argument("--batch-size", type=int, default=datagen.DEFAULT_BATCH_SIZE,
                     dest="batch_size")
    pop.add_argument("--summary-out", dest="summary_out",
                     help="write the load summary record here")
    pop.set_defaults(func=_cmd_populate)

    r = sub.add_parser("run", help="drive one measured run and report it")
    _add_spec_flags(r)
    r.set_defaults(func=_cmd_run)

    s = sub.add_parser("sweep", help="controlled-rate sweep along one axis")
    _add_spec_flags(s)
    s.add_argument("--axis", choices=("oltp_rate", "olap_rate"), required=True)
    s.add_argument("--values", required=True, help="comma-separated nondecreasing rates")
    s.add_argument("--out-dir", default="sweep_out", dest="out_dir")
    s.set_defaults(func=_cmd_sweep)

    rep = sub.add_parser("report", help="render a saved report; optional analysis")
    rep.add_argument("report")
    rep.add_argument("--baseline", help="baseline report for interference factors")
    rep.add_argument("--sample-class", default="oltp", choices=metrics.CLASSES,
                     dest="sample_class")
    rep.add_argument("--treated-class", default=None, choices=metrics.CLASSES,
                     dest="treated_class",
                     help="class measured in the treated report, if it differs"
                          " (hybrid-vs-plain comparisons)")
    rep.add_argument("--lock-counts", dest="lock_counts",
                     help="text file of 'LS TS BLO' lines for lock-overhead analysis")
    rep.set_defaults(func=_cmd_report)

    c = sub.add_parser("check-schema", help="run the semantic-consistency check")
    c.add_argument("benchmark", nargs="?", choices=BENCHMARK_NAMES)
    c.add_argument("--stitched", action="store_true",
                   help="check the bundled stitched negative fixture instead")
    c.add_argument("--inventory", action="store_true",
                   help="also dump the structured template inventory")
    c.set_defaults(func=_cmd_check_schema)

    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "check-schema" and not args.stitched and not args.benchmark:
        parser.error("check-schema needs a benchmark name or --stitched")
    try:
        return args.func(args)
    except HxBenchError as e:
        print(f"error: {e.category}: {e}", file=sys.stderr)
        return _EXIT_CODES.get(e.category, 1)


if __name__ == "__main__":
    sys.exit(main())
