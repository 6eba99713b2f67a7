"""XML run-configuration parsing and emission.

Fixed element vocabulary under the <run> root: benchmark, fk, scale,
seed, mode, loop, oltp_rate, olap_rate, hybrid_rate, warmup_s,
duration_s, weights/weight[@name], target/@descriptor, isolation,
output. Unknown elements (and unknown attributes on known elements) are
rejected with the element path in the message. parse_config applies the
documented defaults and validates the result against every RunConfig
and BackendTarget invariant, so a returned spec always maps one-to-one
onto a runnable configuration.
"""

from __future__ import annotations

import xml.etree.ElementTree as ET
from dataclasses import dataclass, field
from pathlib import Path

from .driver import BackendTarget
from .errors import ConfigError
from .loadgen import DEFAULT_DURATION_S, DEFAULT_SCALE, DEFAULT_WARMUP_S, RunConfig

DEFAULT_MODE = "concurrent"
DEFAULT_LOOP = "open"
DEFAULT_OLTP_RATE = 50.0
DEFAULT_OLAP_RATE = 1.0
DEFAULT_HYBRID_RATE = 10.0
DEFAULT_SEED = 42
DEFAULT_ISOLATION = "read-committed"

_SCALARS = {
    "benchmark": str,
    "fk": "bool",
    "scale": int,
    "seed": int,
    "mode": str,
    "loop": str,
    "oltp_rate": float,
    "olap_rate": float,
    "hybrid_rate": float,
    "warmup_s": float,
    "duration_s": float,
    "isolation": str,
    "output": str,
}
_ELEMENTS = set(_SCALARS) | {"weights", "target"}


@dataclass(frozen=True)
class XmlRunSpec:
    benchmark: str
    descriptor: str
    fk: bool = False
    scale: int = DEFAULT_SCALE
    seed: int = DEFAULT_SEED
    mode: str = DEFAULT_MODE
    loop: str = DEFAULT_LOOP
    oltp_rate: float = DEFAULT_OLTP_RATE
    olap_rate: float = DEFAULT_OLAP_RATE
    hybrid_rate: float = 0.0
    warmup_s: float = DEFAULT_WARMUP_S
    duration_s: float = DEFAULT_DURATION_S
    isolation: str = DEFAULT_ISOLATION
    weights: dict[str, int] = field(default_factory=dict)
    output: str | None = None

    def to_run_config(
        self,
        pool_size: int = 8,
        terminals: int = 8,
        jitter: str = "fixed",
        queue_bound: int | None = None,
    ) -> tuple[RunConfig, BackendTarget]:
        target = BackendTarget(self.descriptor, pool_size=pool_size, isolation=self.isolation)
        kwargs = dict(
            target=target,
            mode=self.mode,
            loop=self.loop,
            oltp_rate=self.oltp_rate,
            olap_rate=self.olap_rate,
            hybrid_rate=self.hybrid_rate,
            terminals=terminals,
            warmup_s=self.warmup_s,
            duration_s=self.duration_s,
            seed=self.seed,
            scale=self.scale,
            weights=dict(self.weights) or None,
            jitter=jitter,
        )
        if queue_bound is not None:
            kwargs["queue_bound"] = queue_bound
        return RunConfig(**kwargs), target


def apply_rate_defaults(values: dict) -> dict:
    """Fill unspecified rates with mode/loop-aware defaults so a minimal
    configuration stays valid (hybrid mode and closed loop forbid the
    usual nonzero online/analytical defaults)."""
    mode = values.get("mode", DEFAULT_MODE)
    loop = values.get("loop", DEFAULT_LOOP)
    if loop == "closed":
        defaults = {"oltp_rate": 0.0, "olap_rate": 0.0, "hybrid_rate": 0.0}
    elif mode == "hybrid":
        defaults = {"oltp_rate": 0.0, "olap_rate": 0.0, "hybrid_rate": DEFAULT_HYBRID_RATE}
    else:
        defaults = {
            "oltp_rate": DEFAULT_OLTP_RATE,
            "olap_rate": DEFAULT_OLAP_RATE,
            "hybrid_rate": 0.0,
        }
    for k, v in defaults.items():
        values.setdefault(k, v)
    return values


def _parse_bool(text: str, where: str) -> bool:
    v = text.strip().lower()
    if v in ("true", "1", "yes"):
        return True
    if v in ("false", "0", "no"):
        return False
    raise ConfigError(f"expected boolean, got {text!r}", where=where)


def parse_config_text(text: str, source: str = "<string>") -> XmlRunSpec:
    try:
        root = ET.fromstring(text)
    except ET.ParseError as e:
        raise ConfigError(f"malformed XML in {source}: {e}", where=source) from e
    if root.tag != "run":
        raise ConfigError(f"root element must be <run>, got <{root.tag}>", where=root.tag)
    if root.attrib:
        raise ConfigError(f"unexpected attributes {sorted(root.attrib)}", where="run")

    values: dict[str, object] = {}
    weights: dict[str, int] = {}
    seen: set[str] = set()
    for child in root:
        path = f"run/{child.tag}"
        if child.tag not in _ELEMENTS:
            raise ConfigError(f"unknown element <{child.tag}>", where=path)
        if child.tag in seen:
            raise ConfigError(f"duplicate element <{child.tag}>", where=path)
        seen.add(child.tag)
        if child.tag == "weights":
            if child.attrib:
                raise ConfigError(f"unexpected attributes {sorted(child.attrib)}", where=path)
            for w in child:
                wpath = f"{path}/{w.tag}"
                if w.tag != "weight":
                    raise ConfigError(f"unknown element <{w.tag}>", where=wpath)
                extra = set(w.attrib) - {"name"}
                if extra:
                    raise ConfigError(f"unexpected attributes {sorted(extra)}", where=wpath)
                name = w.attrib.get("name")
                if not name:
                    raise ConfigError("weight needs a name attribute", where=wpath)
                if name in weights:
                    raise ConfigError(f"duplicate weight for {name!r}", where=wpath)
                try:
                    weights[name] = int((w.text or "").strip())
                except ValueError:
                    raise ConfigError(
                        f"weight for {name!r} must be an integer", where=wpath
                    ) from None
        elif child.tag == "target":
            extra = set(child.attrib) - {"descriptor"}
            if extra:
                raise ConfigError(f"unexpected attributes {sorted(extra)}", where=path)
            descriptor = child.attrib.get("descriptor")
            if not descriptor:
                raise ConfigError("target needs a descriptor attribute", where=path)
            values["descriptor"] = descriptor
        else:
            if child.attrib:
                raise ConfigError(f"unexpected attributes {sorted(child.attrib)}", where=path)
            if len(child):
                raise ConfigError("scalar element must not have children", where=path)
            raw = (child.text or "").strip()
            kind = _SCALARS[child.tag]
            try:
                if kind == "bool":
                    values[child.tag] = _parse_bool(raw, path)
                else:
                    values[child.tag] = kind(raw)
            except (ValueError, TypeError):
                raise ConfigError(
                    f"cannot parse {child.tag} value {raw!r} as {getattr(kind, '__name__', kind)}",
                    where=path,
                ) from None

    if "benchmark" not in values:
        raise ConfigError("missing required element <benchmark>", where="run/benchmark")
    if "descriptor" not in values:
        raise ConfigError("missing required element <target>", where="run/target")

    apply_rate_defaults(values)
    spec = XmlRunSpec(weights=weights, **values)
    try:
        spec.to_run_config()  # surface invariant violations at parse time
    except ConfigError as e:
        raise ConfigError(str(e), where=e.where or source) from e
    from .benchspec.catalog import load_catalog

    load_catalog(spec.benchmark)  # unknown benchmark -> error naming choices
    return spec


def parse_config(path: str | Path) -> XmlRunSpec:
    p = Path(path)
    if not p.exists():
        raise ConfigError(f"config file not found: {p}", where=str(p))
    return parse_config_text(p.read_text(), source=str(p))


def emit_config(spec: XmlRunSpec) -> str:
    """Inverse of parse_config: parse_config_text(emit_config(s)) == s."""
    root = ET.Element("run")

    def scalar(tag, value):
        el = ET.SubElement(root, tag)
        el.text = str(value).lower() if isinstance(value, bool) else str(value)

    scalar("benchmark", spec.benchmark)
    scalar("fk", spec.fk)
    scalar("scale", spec.scale)
    scalar("seed", spec.seed)
    scalar("mode", spec.mode)
    scalar("loop", spec.loop)
    scalar("oltp_rate", spec.oltp_rate)
    scalar("olap_rate", spec.olap_rate)
    scalar("hybrid_rate", spec.hybrid_rate)
    scalar("warmup_s", spec.warmup_s)
    scalar("duration_s", spec.duration_s)
    scalar("isolation", spec.isolation)
    ET.SubElement(root, "target", descriptor=spec.descriptor)
    if spec.weights:
        ws = ET.SubElement(root, "weights")
        for name in sorted(spec.weights):
            w = ET.SubElement(ws, "weight", name=name)
            w.text = str(spec.weights[name])
    if spec.output is not None:
        scalar("output", spec.output)
    ET.indent(root)
    return ET.tostring(root, encoding="unicode") + "\n"
