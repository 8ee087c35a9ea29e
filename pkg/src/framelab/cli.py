"""Batch front end: ``framelab <command> [options]``.

Configuration is layered: built-in defaults, then ``FRAMELAB_RMIN``, then a
config file (``key = value`` lines or a JSON object), then command-line flags.
Reports are printed as text or as JSON (schema 1, floats with 17 significant
digits).

Exit status: 0 success, 2 configuration error, 3 numeric failure.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import math
import os
import sys
import time
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import __version__
from . import experiments as ex
from . import frames as fr
from . import scenarios as sc
from .errors import ConfigError, FramelabError

COMMANDS = ("classify", "decompose", "sagnac", "sync-loop", "clock-chain", "one-way-speed",
            "trocheries", "chiu-hsu-sherry", "all")
SCHEMA = 1
EXIT_OK, EXIT_CONFIG, EXIT_NUMERIC = 0, 2, 3


@dataclass(frozen=True)
class RunConfig:
    command: str
    omega: float = 0.1
    radius: float = 1.0
    boost: float | None = None  # defaults to ωR, the rim speed
    clocks: int = 12
    delta_phi: float = 1e-3
    grid: int = 11
    scenario: str = "P"
    omega_profile: str = "equivalence"
    tolerance: float = fr.CLASSIFY_TOL
    r_min: float = sc.R_MIN
    format: str = "text"
    out: str | None = None
    sweep: tuple[float, ...] = (1e-4, 0.01, 0.1, 0.5, 0.89)  # rim speeds ωR for "all"

    @property
    def boost_speed(self) -> float:
        return self.omega * self.radius if self.boost is None else self.boost

    def parameters(self) -> dict:
        d = dataclasses.asdict(self)
        d.pop("command")
        d.pop("format")
        d.pop("out")
        d["boost"] = self.boost_speed
        d["sweep"] = list(self.sweep)
        return d


_FIELDS = {f.name: f for f in dataclasses.fields(RunConfig) if f.name != "command"}
_INT_KEYS = {"clocks", "grid"}
_STR_KEYS = {"scenario", "omega_profile", "format", "out"}


def _coerce(key: str, value):
    if key not in _FIELDS:
        raise ConfigError(f"unknown key {key!r}")
    try:
        if value is None:
            return None
        if key in _INT_KEYS:
            if isinstance(value, float) and not value.is_integer():
                raise ValueError
            return int(value)
        if key in _STR_KEYS:
            return str(value)
        if key == "sweep":
            if isinstance(value, str):
                value = [v for v in value.replace(",", " ").split() if v]
            return tuple(float(v) for v in value)
        return float(value)
    except (TypeError, ValueError):
        raise ConfigError(f"invalid value for {key!r}: {value!r}") from None


def read_config_file(path: str | Path) -> dict:
    """Parse a ``key = value`` file (``#`` comments) or a JSON object."""
    text = Path(path).read_text()
    if text.lstrip().startswith("{"):
        try:
            data = json.loads(text)
        except json.JSONDecodeError as e:
            raise ConfigError(f"{path}: line {e.lineno} column {e.colno}: {e.msg}") from None
        if not isinstance(data, dict):
            raise ConfigError(f"{path}: expected a JSON object")
        return {k.replace("-", "_"): _coerce(k.replace("-", "_"), v) for k, v in data.items()}
    out = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{path}: line {lineno}: expected 'key = value', got {raw!r}")
        key, value = (s.strip() for s in line.split("=", 1))
        key = key.replace("-", "_")
        if not key:
            raise ConfigError(f"{path}: line {lineno}: missing key")
        try:
            out[key] = _coerce(key, value)
        except ConfigError as e:
            raise ConfigError(f"{path}: line {lineno}: {e}") from None
    return out


def validate(cfg: RunConfig) -> RunConfig:
    if cfg.command not in COMMANDS:
        raise ConfigError(f"unknown command {cfg.command!r}")
    if not (math.isfinite(cfg.omega) and cfg.omega >= 0):
        raise ConfigError("omega must be >= 0")
    if not (math.isfinite(cfg.radius) and cfg.radius > 0):
        raise ConfigError("radius must be > 0")
    if not cfg.omega * cfg.radius < 1:
        raise ConfigError("ωR must be < 1")
    if not abs(cfg.boost_speed) < 1:
        raise ConfigError("boost speed |v| must be < 1")
    if cfg.clocks < 3:
        raise ConfigError("clocks must be >= 3")
    if not 0 < cfg.delta_phi < ex.MAX_DELTA_PHI:
        raise ConfigError(f"delta_phi must lie in (0, {ex.MAX_DELTA_PHI:g})")
    if cfg.grid < 2:
        raise ConfigError("grid must be >= 2")
    if cfg.scenario not in sc.SCENARIOS:
        raise ConfigError(f"scenario must be one of {', '.join(sc.SCENARIOS)}")
    if cfg.format not in ("text", "json"):
        raise ConfigError("format must be 'text' or 'json'")
    if not cfg.tolerance > 0:
        raise ConfigError("tolerance must be > 0")
    if not cfg.r_min > 0 or cfg.r_min >= 0.1 * cfg.radius:
        raise ConfigError("r_min must be > 0 and below a tenth of the radius")
    for w in cfg.sweep:
        if not 0 <= w < 1:
            raise ConfigError(f"sweep value {w}: rim speed ωR must lie in [0, 1)")
    profile_of(cfg)
    return cfg


def profile_of(cfg: RunConfig):
    text = cfg.omega_profile
    if text == "equivalence":
        return None
    if text.startswith("constant:"):
        try:
            return float(text.split(":", 1)[1])
        except ValueError:
            pass
    raise ConfigError("omega_profile must be 'equivalence' or 'constant:<value>'")


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="framelab",
        description="Rotating-frame kinematics, Sagnac transit times and clock synchronisation.")
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("--config", help="key = value file or JSON object")
    p.add_argument("--omega", type=float, help="platform angular velocity (default 0.1)")
    p.add_argument("--radius", type=float, help="platform radius R (default 1)")
    p.add_argument("--boost", type=float, help="boost speed v (default ωR)")
    p.add_argument("--clocks", type=int, help="clocks in the chain (default 12)")
    p.add_argument("--delta-phi", type=float, help="angular clock separation (default 1e-3)")
    p.add_argument("--grid", type=int, help="points per sampled axis (default 11)")
    p.add_argument("--scenario", help=f"frame for classify/decompose: {', '.join(sc.SCENARIOS)} "
                   "(default P)")
    p.add_argument("--omega-profile", help="Trocheries profile: equivalence | constant:<value>")
    p.add_argument("--tolerance", type=float, help="classification tolerance (default 1e-9)")
    p.add_argument("--r-min", type=float, help="axis exclusion radius (default 1e-6, "
                   "or FRAMELAB_RMIN)")
    p.add_argument("--sweep", help="comma-separated rim speeds ωR for the 'all' Sagnac sweep "
                   "(default 1e-4,0.01,0.1,0.5,0.89)")
    p.add_argument("--format", choices=("text", "json"), help="report format (default text)")
    p.add_argument("--out", help="write the report here instead of standard output")
    return p


def parse_config(argv=None, env=None) -> RunConfig:
    """Build a validated :class:`RunConfig` from flags, a config file and the environment."""
    env = os.environ if env is None else env
    ns = build_parser().parse_args(argv)
    values: dict = {}
    if env.get("FRAMELAB_RMIN"):
        values["r_min"] = _coerce("r_min", env["FRAMELAB_RMIN"])
    if ns.config:
        try:
            values.update(read_config_file(ns.config))
        except OSError as e:
            raise ConfigError(f"cannot read config: {e}") from None
    for key in _FIELDS:
        v = getattr(ns, key, None)
        if v is not None:
            values[key] = _coerce(key, v)
    return validate(RunConfig(command=ns.command, **values))


# reports ---------------------------------------------------------------------------

@dataclass
class Report:
    command: str
    parameters: dict
    results: dict
    cross_checks: dict = field(default_factory=dict)
    version: str = __version__
    schema: int = SCHEMA
    duration_s: float = 0.0

    def to_dict(self, include_duration: bool = True) -> dict:
        d = {"schema": self.schema, "command": self.command, "version": self.version,
             "parameters": self.parameters, "results": self.results,
             "cross_checks": self.cross_checks}
        if include_duration:
            d["duration_s"] = self.duration_s
        return d

    def to_json(self, include_duration: bool = True) -> str:
        return dumps(self.to_dict(include_duration))

    @classmethod
    def from_json(cls, text: str) -> Report:
        d = json.loads(text)
        if d.get("schema") != SCHEMA:
            raise ValueError(f"unsupported report schema {d.get('schema')!r}")
        return cls(d["command"], d["parameters"], d["results"], d.get("cross_checks", {}),
                   d["version"], d["schema"], d.get("duration_s", 0.0))

    def to_text(self) -> str:
        lines = [f"framelab {self.version}  command: {self.command}"]
        for section in ("parameters", "results", "cross_checks"):
            lines.append(f"[{section}]")
            lines.extend(_flatten(getattr(self, section)))
        lines.append(f"duration_s: {self.duration_s:.3f}")
        return "\n".join(lines) + "\n"


def _plain(obj):
    if isinstance(obj, dict):
        return {str(k): _plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_plain(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return [_plain(v) for v in obj.tolist()]
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        return float(obj)
    return obj


def dumps(obj, indent: int = 2, _level: int = 0) -> str:
    """JSON with every float written as 17 significant digits."""
    obj = _plain(obj)
    pad = " " * (indent * (_level + 1))
    end = " " * (indent * _level)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{pad}{json.dumps(k)}: {dumps(v, indent, _level + 1)}" for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    if isinstance(obj, list):
        if not obj:
            return "[]"
        return "[" + ", ".join(dumps(v, indent, _level + 1) for v in obj) + "]"
    if isinstance(obj, float):
        if not math.isfinite(obj):
            raise ValueError(f"cannot serialise non-finite value {obj}")
        return format(obj, ".16e")
    return json.dumps(obj)


def _flatten(d, prefix=""):
    for k, v in d.items():
        key = f"{prefix}{k}"
        if isinstance(v, dict):
            yield from _flatten(v, key + ".")
        elif isinstance(v, list) and v and all(isinstance(e, dict) for e in v):
            for i, e in enumerate(v):
                yield from _flatten(e, f"{key}[{i}].")
        elif isinstance(v, float):
            yield f"{key}: {v:.10g}"
        elif isinstance(v, (list, tuple)) and len(v) > 8:
            yield f"{key}: [{len(v)} values]"
        else:
            yield f"{key}: {v}"


# commands ----------------------------------------------------------------------------

def _scenario(cfg: RunConfig) -> sc.Scenario:
    return sc.build_scenario(cfg.scenario, omega=cfg.omega, radius=cfg.radius,
                             boost=cfg.boost_speed, profile=profile_of(cfg), r_min=cfg.r_min,
                             n=cfg.grid)


def cmd_classify(cfg):
    s = _scenario(cfg)
    rep = fr.classify(s.metric, s.frame, s.grid, cfg.tolerance)
    return rep.to_dict(), {"rotation_criterion_consistent": rep.rotation_criterion_consistent}


def cmd_decompose(cfg):
    s = _scenario(cfg)
    pts = s.grid.points()
    picks = pts[np.linspace(0, len(pts) - 1, 3).astype(int)]
    samples = []
    worst = 0.0
    for x in picks:
        k = fr.kinematic_decomposition(s.metric, s.frame, x)
        res = max(k.reconstruction_error(), k.projection_identity_error())
        worst = max(worst, res)
        samples.append({"point": x, "acceleration": k.acceleration, "rotation": k.rotation,
                        "shear": k.shear, "expansion": float(k.expansion), "residual": res})
    return {"frame": s.frame.name, "samples": samples}, {"max_reconstruction_residual": worst}


def cmd_sagnac(cfg):
    a = ex.sagnac_analytic(cfg.omega, cfg.radius)
    g, loop = ex.rim_circle(cfg.omega, cfg.radius)
    t_co = ex.sagnac_numeric(g, loop, "co")
    t_counter = ex.sagnac_numeric(g, loop, "counter")
    L = ex.periphery_length_numeric(g, sc.frame_P_rotating(cfg.omega, cfg.r_min), loop)
    results = {"analytic": a.to_dict(), "numeric": {"T_co": t_co, "T_counter": t_counter, "L": L},
               "four_omega_S": 4.0 * cfg.omega * math.pi * cfg.radius**2}
    checks = {"T_co": t_co - a.T_co, "T_counter": t_counter - a.T_counter, "L": L - a.L}
    return results, checks


def cmd_sync_loop(cfg):
    g, loop = ex.rim_circle(cfg.omega, cfg.radius)
    q = ex.loop_sync_defect(g, loop)
    closed = ex.sync_defect_closed_form(cfg.omega, cfg.radius)
    return ({"defect": q, "closed_form": closed,
             "two_omega_S": 2.0 * cfg.omega * math.pi * cfg.radius**2},
            {"defect": q - closed})


def cmd_clock_chain(cfg):
    chain = ex.clock_chain(cfg.omega, cfg.radius, cfg.clocks)
    g, loop = ex.rim_circle(cfg.omega, cfg.radius)
    q = ex.loop_sync_defect(g, loop)
    return chain.to_dict(), {"defect_vs_loop_integral": chain.defect - q}


def cmd_one_way_speed(cfg):
    e = ex.one_way_local_speed(cfg.omega, cfg.radius, cfg.delta_phi, "einstein")
    n = ex.one_way_local_speed(cfg.omega, cfg.radius, cfg.delta_phi, "naive")
    a = ex.sagnac_analytic(cfg.omega, cfg.radius)
    return ({"einstein": e.to_dict(), "naive": n.to_dict()},
            {"einstein_co": e.co - 1.0, "einstein_counter": e.counter - 1.0,
             "naive_co_vs_global": n.co - a.c_co, "naive_counter_vs_global": n.counter - a.c_counter})


def cmd_trocheries(cfg):
    R = cfg.radius
    radii = np.linspace(0.05, 0.95, 20) * R
    omegas = np.linspace(0.05, 0.95, 20) / R
    eq = sc.verify_Pbar_equals_P(omegas, radii)
    const_dev = sc.constant_profile_deviation(omegas, radii)
    prof = profile_of(cfg)
    profile = sc.equivalence_profile(cfg.omega) if prof is None else prof
    phys = sc.physicality_constraint(profile, R) if cfg.omega > 0 or prof else None
    results = {"equivalence": eq.to_dict(), "constant_profile_deviation": const_dev,
               "physicality": phys.to_dict() if phys else None}
    if cfg.omega > 0:
        results["equivalence_omega_at_rim"] = float(sc.equivalence_omega(cfg.omega, R))
    return results, {"max_deviation": eq.max_deviation}


def cmd_chiu_hsu_sherry(cfg):
    rep = ex.chiu_hsu_sherry_check(cfg.omega, cfg.radius, cfg.delta_phi)
    v = rep.boost_speed
    closed = 2.0 * v * rep.pair_separation / (1.0 - v * v)
    return rep.to_dict(), {"speed_deviation": rep.max_speed_deviation,
                           "desynchronization_vs_closed_form": rep.desynchronization - closed}


def cmd_all(cfg):
    results, checks = {}, {}
    for name in COMMANDS[:-1]:
        sub = dataclasses.replace(cfg, command=name)
        if name in ("classify", "decompose"):
            for scen in sc.SCENARIOS:
                r, c = DISPATCH[name](dataclasses.replace(sub, scenario=scen))
                results[f"{name}[{scen}]"] = r
                checks[f"{name}[{scen}]"] = c
            continue
        r, c = DISPATCH[name](sub)
        results[name] = r
        checks[name] = c
    sweep = {}
    for wr in cfg.sweep:
        w = wr / cfg.radius
        a = ex.sagnac_analytic(w, cfg.radius)
        g, loop = ex.rim_circle(w, cfg.radius)
        sweep[repr(wr)] = {"omega": w, "T_co": a.T_co, "T_counter": a.T_counter,
                          "numeric_minus_analytic_co": ex.sagnac_numeric(g, loop, "co") - a.T_co,
                          "numeric_minus_analytic_counter":
                              ex.sagnac_numeric(g, loop, "counter") - a.T_counter}
    results["sagnac_sweep"] = sweep
    return results, checks


DISPATCH = {
    "classify": cmd_classify,
    "decompose": cmd_decompose,
    "sagnac": cmd_sagnac,
    "sync-loop": cmd_sync_loop,
    "clock-chain": cmd_clock_chain,
    "one-way-speed": cmd_one_way_speed,
    "trocheries": cmd_trocheries,
    "chiu-hsu-sherry": cmd_chiu_hsu_sherry,
    "all": cmd_all,
}


def run(cfg: RunConfig) -> tuple[Report | None, int, str]:
    """Execute a validated config; returns ``(report, exit_status, diagnostic)``."""
    start = time.perf_counter()
    try:
        results, checks = DISPATCH[cfg.command](cfg)
    except FramelabError as e:
        return None, EXIT_NUMERIC, f"{cfg.command}: {type(e).__name__}: {e}"
    rep = Report(cfg.command, cfg.parameters(), _plain(results), _plain(checks))
    rep.duration_s = time.perf_counter() - start
    return rep, EXIT_OK, ""


def main(argv=None) -> int:
    try:
        cfg = parse_config(argv)
    except ConfigError as e:
        print(f"framelab: config error: {e}", file=sys.stderr)
        return EXIT_CONFIG
    except SystemExit as e:  # argparse usage errors
        return int(e.code) if isinstance(e.code, int) else EXIT_CONFIG
    rep, status, diag = run(cfg)
    if rep is None:
        print(f"framelab: numeric failure: {diag}", file=sys.stderr)
        return status
    text = rep.to_json() + "\n" if cfg.format == "json" else rep.to_text()
    if cfg.out:
        Path(cfg.out).write_text(text)
    else:
        sys.stdout.write(text)
    return status


__all__ = ["RunConfig", "Report", "parse_config", "run", "main"]
