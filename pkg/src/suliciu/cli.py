"""Command-line front end: classify / exact / simulate / verify / converge.

Configuration is a flat key=value text file plus ``--key=value`` overrides.
All emitted CSV/JSON floats use a fixed %.12e format so outputs are
byte-reproducible; embedded config echoes use exact round-trip reprs.

Exit codes: 0 ok, 2 config error, 3 unsolved region, 4 solver failure,
5 verification threshold exceeded.
"""

from __future__ import annotations

import sys
import time as _time
from dataclasses import dataclass, fields
from pathlib import Path

import numpy as np

from .core import Params, State, bracket, classify, eigenvalues
from .errors import (
    ConfigError,
    DegenerateJump,
    EntropyViolation,
    NoClassicalSolution,
    NoSpikeFound,
    NotInDeltaRegion,
    SingularAtOrigin,
    SuliciuError,
    UnsolvedRegion,
    VacuumProduced,
)
from .exact import ClassicalSolution, solve
from .fv import Grid, SimConfig, init_riemann, run, snapshot_filename, write_snapshot_csv
from .verification import build_residual_report, convergence_study, rasterize

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_UNSOLVED = 3
EXIT_SOLVER = 4
EXIT_THRESHOLD = 5


@dataclass
class RunConfig:
    """Resolved run configuration; defaults reproduce the delta-shock
    benchmark setup."""

    s: float = 1.0
    rho_l: float = 9.0
    u_l: float = 5.0
    v_l: float = 2.8
    rho_r: float = 1.0
    u_r: float = 3.0
    v_r: float = 2.0
    x_min: float = -1.0
    x_max: float = 1.0
    n_cells: int = 1780
    cfl: float = 0.1969889
    t_final: float = 0.1
    snapshot_times: str = ""
    refinements: str = "445,890,1780,3560"
    weight_window: float = 0.1
    exclusion_halfwidth: float = 0.2
    quad_n: int = 64
    max_shock_position_error_dx: float = 2.0
    max_weight_error_rel: float = 0.15
    max_plateau_linf: float = 1e-3
    max_weak_residual: float = 1e-6

    def left_state(self) -> State:
        return State(self.rho_l, self.u_l, self.v_l)

    def right_state(self) -> State:
        return State(self.rho_r, self.u_r, self.v_r)

    def params(self) -> Params:
        return Params(s=self.s)

    def grid(self) -> Grid:
        return Grid(self.x_min, self.x_max, self.n_cells)

    def sim_config(self) -> SimConfig:
        return SimConfig(
            grid=self.grid(),
            cfl=self.cfl,
            t_final=self.t_final,
            s=self.s,
            snapshot_times=_parse_float_list(self.snapshot_times, "snapshot_times"),
        )

    def echo(self) -> dict:
        """Round-trip-exact representation for embedding in summaries."""
        return {f.name: repr(getattr(self, f.name)) for f in fields(self)}


_FIELD_TYPES = {f.name: f.type for f in fields(RunConfig)}


def _parse_float_list(text: str, key: str) -> tuple[float, ...]:
    items = [s.strip() for s in text.split(",") if s.strip()]
    try:
        return tuple(float(s) for s in items)
    except ValueError as exc:
        raise ConfigError(f"key '{key}': cannot parse float list from {text!r}") from exc


def _parse_int_list(text: str, key: str) -> list[int]:
    items = [s.strip() for s in text.split(",") if s.strip()]
    try:
        return [int(s) for s in items]
    except ValueError as exc:
        raise ConfigError(f"key '{key}': cannot parse integer list from {text!r}") from exc


def _set_key(cfg: RunConfig, key: str, raw: str) -> None:
    if key not in _FIELD_TYPES:
        raise ConfigError(f"unknown configuration key '{key}'")
    kind = _FIELD_TYPES[key]
    try:
        if kind == "int":
            setattr(cfg, key, int(raw))
        elif kind == "float":
            setattr(cfg, key, float(raw))
        else:
            setattr(cfg, key, raw)
    except ValueError as exc:
        raise ConfigError(f"key '{key}': cannot parse {raw!r} as {kind}") from exc


def load_config(path: str | None, overrides: list[tuple[str, str]]) -> RunConfig:
    """Build a RunConfig from an optional file plus command-line overrides."""
    cfg = RunConfig()
    if path is not None:
        try:
            text = Path(path).read_text()
        except OSError as exc:
            raise ConfigError(f"cannot read config file {path}: {exc}") from exc
        for lineno, line in enumerate(text.splitlines(), start=1):
            stripped = line.strip()
            if not stripped or stripped.startswith("#"):
                continue
            if "=" not in stripped:
                raise ConfigError(f"{path}:{lineno}: expected 'key = value', got {line!r}")
            key, _, raw = stripped.partition("=")
            _set_key(cfg, key.strip(), raw.strip())
    for key, raw in overrides:
        _set_key(cfg, key, raw)
    try:
        cfg.left_state()
        cfg.right_state()
        cfg.params()
        cfg.grid()
        cfg.sim_config()
    except (SuliciuError, ValueError) as exc:
        raise ConfigError(str(exc)) from exc
    return cfg


def format_float(v: float) -> str:
    return f"{v:.12e}"


def dumps_json(obj, indent: int = 0) -> str:
    """Minimal JSON emitter with fixed %.12e float formatting."""
    pad = "  " * indent
    inner = "  " * (indent + 1)
    if obj is None:
        return "null"
    if isinstance(obj, bool):
        return "true" if obj else "false"
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return format_float(float(obj))
    if isinstance(obj, str):
        return '"' + obj.replace("\\", "\\\\").replace('"', '\\"') + '"'
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        rows = [f'{inner}"{k}": {dumps_json(v, indent + 1)}' for k, v in obj.items()]
        return "{\n" + ",\n".join(rows) + f"\n{pad}}}"
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        rows = [f"{inner}{dumps_json(v, indent + 1)}" for v in obj]
        return "[\n" + ",\n".join(rows) + f"\n{pad}]"
    raise TypeError(f"cannot serialize {type(obj)!r}")


def _write(out_dir: Path, name: str, text: str) -> Path:
    out_dir.mkdir(parents=True, exist_ok=True)
    path = out_dir / name
    path.write_text(text if text.endswith("\n") else text + "\n")
    return path


def cmd_classify(cfg: RunConfig, out_dir: Path) -> int:
    p = cfg.params()
    Ul, Ur = cfg.left_state(), cfg.right_state()
    region = classify(Ul, Ur, p)
    du = bracket(Ul.u, Ur.u)
    payload = {
        "region": region.value,
        "lambda1_left": eigenvalues(Ul, p)[0],
        "lambda3_right": eigenvalues(Ur, p)[2],
        "delta_condition_lhs": du * du,
        "delta_condition_rhs": p.s * p.s * bracket(Ul.v, Ur.v) * (1.0 / Ur.rho - 1.0 / Ul.rho),
        "config": cfg.echo(),
    }
    text = dumps_json(payload)
    print(text)
    _write(out_dir, "classify.json", text)
    return EXIT_OK


def cmd_exact(cfg: RunConfig, out_dir: Path, sample_at: float | None) -> int:
    p = cfg.params()
    Ul, Ur = cfg.left_state(), cfg.right_state()
    sol = solve(Ul, Ur, p)
    if isinstance(sol, ClassicalSolution):
        payload = {
            "type": "classical",
            "speeds": [sol.sigma1, sol.sigma2, sol.sigma3],
            "intermediate_1": {"rho": sol.U1.rho, "u": sol.U1.u, "v": sol.U1.v},
            "intermediate_2": {"rho": sol.U2.rho, "u": sol.U2.u, "v": sol.U2.v},
            "config": cfg.echo(),
        }
    else:
        payload = {
            "type": "delta_shock",
            "u_delta": sol.u_delta,
            "w_rate": sol.w_rate,
            "g": sol.g,
            "config": cfg.echo(),
        }
    text = dumps_json(payload)
    print(text)
    _write(out_dir, "exact.json", text)

    if sample_at is not None:
        if not sample_at > 0.0:
            raise ConfigError(f"--sample-at needs a positive time, got {sample_at}")
        grid = cfg.grid()
        field, singular = rasterize(sol, grid, sample_at, p)
        rho, u, v = field.primitives()
        x = grid.centers()
        lines = ["x,rho,u,v,singular"]
        for j in range(grid.n_cells):
            lines.append(
                f"{format_float(x[j])},{format_float(rho[j])},"
                f"{format_float(u[j])},{format_float(v[j])},{int(singular[j])}"
            )
        _write(out_dir, f"exact_t{sample_at:.6f}.csv", "\n".join(lines))
    return EXIT_OK


def cmd_simulate(cfg: RunConfig, out_dir: Path) -> int:
    sim = cfg.sim_config()
    Ul, Ur = cfg.left_state(), cfg.right_state()
    t0 = _time.perf_counter()
    result = run(sim, Ul, Ur)
    wall = _time.perf_counter() - t0
    for t, field in result.snapshots:
        out_dir.mkdir(parents=True, exist_ok=True)
        write_snapshot_csv(out_dir / snapshot_filename(t), sim.grid, field)

    if result.snapshots[0][0] == 0.0:
        first = result.snapshots[0][1]
    else:
        first = init_riemann(sim.grid, Ul, Ur)
    final = result.snapshots[-1][1]
    change = final.totals(sim.grid.dx) - first.totals(sim.grid.dx)
    drift = change - result.boundary_flux_integral
    scale = np.maximum(1.0, np.abs(first.totals(sim.grid.dx)))
    payload = {
        "steps": result.steps,
        "wall_time_seconds": wall,
        "conservation_drift_rel": list(np.abs(drift) / scale),
        "snapshots": [snapshot_filename(t) for t, _ in result.snapshots],
        "config": cfg.echo(),
    }
    text = dumps_json(payload)
    print(text)
    _write(out_dir, "summary.json", text)
    return EXIT_OK


def cmd_verify(cfg: RunConfig, out_dir: Path) -> int:
    sim = cfg.sim_config()
    Ul, Ur = cfg.left_state(), cfg.right_state()
    report = build_residual_report(
        sim,
        Ul,
        Ur,
        weight_window=cfg.weight_window,
        exclusion_halfwidth=cfg.exclusion_halfwidth,
        quad_n=cfg.quad_n,
    )
    failures = []
    dx = cfg.grid().dx
    if report.shock_position_error is not None:
        if report.shock_position_error > cfg.max_shock_position_error_dx * dx:
            failures.append("shock_position_error")
        if report.weight_error_rel > cfg.max_weight_error_rel:
            failures.append("weight_error_rel")
    if max(abs(r) for r in report.weak_residuals) > cfg.max_weak_residual:
        failures.append("weak_residuals")
    if max(report.linf_errors_away_from_shock) > cfg.max_plateau_linf:
        failures.append("linf_errors_away_from_shock")

    payload = {
        "shock_position_error": report.shock_position_error,
        "weight_estimate": report.weight_estimate,
        "weight_error_rel": report.weight_error_rel,
        "weak_residuals": list(report.weak_residuals),
        "linf_errors_away_from_shock": list(report.linf_errors_away_from_shock),
        "thresholds_exceeded": failures,
        "config": cfg.echo(),
    }
    text = dumps_json(payload)
    print(text)
    _write(out_dir, "report.json", text)
    return EXIT_THRESHOLD if failures else EXIT_OK


def cmd_converge(cfg: RunConfig, out_dir: Path) -> int:
    refinements = _parse_int_list(cfg.refinements, "refinements")
    if not refinements:
        raise ConfigError("key 'refinements': need at least one cell count")
    sim = cfg.sim_config()
    Ul, Ur = cfg.left_state(), cfg.right_state()
    rows = convergence_study(sim, Ul, Ur, refinements, weight_window=cfg.weight_window)
    lines = ["N,shock_err,weight_err_rel,L1_rho,L1_u,L1_v"]
    for r in rows:
        lines.append(
            f"{r.n_cells},{format_float(r.shock_position_error)},"
            f"{format_float(r.weight_error_rel)},{format_float(r.l1_rho)},"
            f"{format_float(r.l1_u)},{format_float(r.l1_v)}"
        )
    text = "\n".join(lines)
    print(text)
    _write(out_dir, "convergence.csv", text)
    return EXIT_OK


_USAGE = """usage: suliciu <command> [--config PATH] [--out DIR] [--key=value ...]

commands:
  classify   region classification for the configured state pair
  exact      exact Riemann solution descriptor (--sample-at T adds a CSV)
  simulate   Lax-Friedrichs run; snapshot CSVs plus summary JSON
  verify     simulate + exact comparison report; exit 5 past thresholds
  converge   refinement study CSV over the configured cell counts
"""


def main(argv=None) -> int:
    args = list(sys.argv[1:] if argv is None else argv)
    if not args or args[0] in ("-h", "--help"):
        print(_USAGE)
        return EXIT_OK if args else EXIT_CONFIG
    command = args[0]
    if command not in ("classify", "exact", "simulate", "verify", "converge"):
        print(f"unknown command '{command}'\n{_USAGE}", file=sys.stderr)
        return EXIT_CONFIG

    config_path = None
    out_dir = Path("out")
    sample_at = None
    overrides: list[tuple[str, str]] = []
    it = iter(args[1:])
    try:
        for tok in it:
            if tok == "--config":
                config_path = next(it, None)
                if config_path is None:
                    raise ConfigError("--config needs a path")
            elif tok == "--out":
                val = next(it, None)
                if val is None:
                    raise ConfigError("--out needs a directory")
                out_dir = Path(val)
            elif tok == "--sample-at":
                val = next(it, None)
                if val is None:
                    raise ConfigError("--sample-at needs a time")
                sample_at = float(val)
            elif tok.startswith("--") and "=" in tok:
                key, _, raw = tok[2:].partition("=")
                overrides.append((key, raw))
            else:
                raise ConfigError(f"unrecognized argument {tok!r}")
        cfg = load_config(config_path, overrides)
    except (ConfigError, ValueError) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG

    try:
        if command == "classify":
            return cmd_classify(cfg, out_dir)
        if command == "exact":
            return cmd_exact(cfg, out_dir, sample_at)
        if command == "simulate":
            return cmd_simulate(cfg, out_dir)
        if command == "verify":
            return cmd_verify(cfg, out_dir)
        return cmd_converge(cfg, out_dir)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (UnsolvedRegion, EntropyViolation, NotInDeltaRegion) as exc:
        print(f"unsolved region: {exc}", file=sys.stderr)
        return EXIT_UNSOLVED
    except (
        VacuumProduced,
        NoClassicalSolution,
        DegenerateJump,
        NoSpikeFound,
        SingularAtOrigin,
    ) as exc:
        print(f"solver failure: {exc}", file=sys.stderr)
        return EXIT_SOLVER


if __name__ == "__main__":
    sys.exit(main())
