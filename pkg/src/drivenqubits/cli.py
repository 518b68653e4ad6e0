"""Command-line front end.

Subcommands map one-to-one onto the experiment pipelines and emit
deterministic CSV or JSON tables suitable for external plotting:

    drivenqubits evolve --config run.json --output traj.csv
    drivenqubits sweep  --config run.json --format json

Exit codes: 0 success, 2 config error, 3 numerical failure, 4 degenerate
steady state.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import sys
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from . import __version__
from .dynamics import InitialState, evolve, propagate_exponential
from .elementwise import evolve_elementwise_n2
from .entanglement import detect_events, negativity
from .errors import ConfigError, DegenerateSteadyStateError, DrivenQubitsError
from .experiments import (
    border_map,
    find_gamma_m,
    gamma_m_vs_nbar,
    steady_negativity,
    sweep_delta,
    sweep_gamma,
)
from .linalg import DensityMatrix
from .model import SystemParams, build_liouvillian
from .numerics import DEFAULT, NumericalSettings
from .steady import steady_state

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_NUMERICAL = 3
EXIT_DEGENERATE = 4

_SYSTEM_KEYS = {"n_qubits", "omega", "delta", "coupling_j", "gamma", "nbar"}
_RUN_KEYS = {
    "evolve": {"t_end", "sample_count"},
    "steady": set(),
    "sweep": {"parameter", "grid"},
    "border": {"axis1", "axis2", "epsilon_border"},
    "optimum": {"nbar_list", "gamma_max", "bracket", "tol"},
    "events": {"t_end", "sample_count", "epsilon"},
    "oracle-check": {"t_end", "sample_count"},
}


def _reject_unknown(section: dict, allowed: set, where: str):
    unknown = set(section) - allowed
    if unknown:
        raise ConfigError(f"unknown keys in {where}: {sorted(unknown)}")


def _load_config(path: str, subcommand: str) -> dict:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            cfg = json.load(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config {path} is not valid JSON (line {exc.lineno}): {exc.msg}") from exc
    if not isinstance(cfg, dict):
        raise ConfigError("config root must be an object")
    _reject_unknown(cfg, {"system", "initial", "run", "output"}, "config root")
    _reject_unknown(cfg.get("system", {}), _SYSTEM_KEYS, "system")
    _reject_unknown(cfg.get("initial", {}), {"theta", "matrix"}, "initial")
    _reject_unknown(cfg.get("run", {}), _RUN_KEYS[subcommand], "run")
    _reject_unknown(cfg.get("output", {}), {"path", "format"}, "output")
    return cfg


def _system_params(cfg: dict) -> SystemParams:
    try:
        return SystemParams(**cfg.get("system", {}))
    except DrivenQubitsError as exc:
        raise ConfigError(f"invalid system parameters: {exc}") from exc


def _initial_state(cfg: dict, n_qubits: int) -> DensityMatrix:
    section = cfg.get("initial", {"theta": 0.0})
    if ("theta" in section) == ("matrix" in section):
        raise ConfigError("initial must contain exactly one of theta or matrix")
    if "theta" in section:
        try:
            return InitialState(theta=float(section["theta"])).density_matrix(n_qubits)
        except DrivenQubitsError as exc:
            raise ConfigError(str(exc)) from exc
    flat = section["matrix"]  # row-major (re, im) pairs
    d = 2**n_qubits
    if len(flat) != 2 * d * d:
        raise ConfigError(f"initial.matrix needs {2 * d * d} numbers (re/im pairs), got {len(flat)}")
    vals = np.asarray(flat, dtype=float)
    m = (vals[0::2] + 1j * vals[1::2]).reshape(d, d)
    try:
        return DensityMatrix(m, (2,) * n_qubits)
    except DrivenQubitsError as exc:
        raise ConfigError(f"initial.matrix is not a valid density matrix: {exc}") from exc


def _settings(overrides: list[str]) -> NumericalSettings:
    fields = {f.name for f in dataclasses.fields(NumericalSettings)}
    kwargs = {}
    for item in overrides or []:
        if "=" not in item:
            raise ConfigError(f"--tolerance expects name=value, got {item!r}")
        name, value = item.split("=", 1)
        if name not in fields:
            raise ConfigError(f"unknown tolerance {name!r}; known: {sorted(fields)}")
        kwargs[name] = float(value)
    return dataclasses.replace(DEFAULT, **kwargs)


def _fmt(x) -> str:
    if isinstance(x, float):
        return format(x, ".17g")
    return str(x)


def _write_table(columns, rows, fmt, path, extra=None):
    if fmt == "csv":
        lines = [",".join(columns)]
        lines += [",".join(_fmt(v) for v in row) for row in rows]
        text = "\n".join(lines) + "\n"
    else:
        doc = {"columns": list(columns), "rows": [list(row) for row in rows]}
        if extra:
            doc.update(extra)
        text = json.dumps(doc, indent=2, sort_keys=True) + "\n"
    if path is None:
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


def _grid(values, where: str) -> np.ndarray:
    g = np.asarray(values, dtype=float)
    if g.ndim != 1 or g.size == 0 or np.any(np.diff(g) <= 0):
        raise ConfigError(f"{where} must be a non-empty strictly ascending list")
    return g


def _cmd_evolve(cfg, settings, threads):
    p = _system_params(cfg)
    run = cfg.get("run", {})
    t_end = float(run.get("t_end", 60.0))
    n = int(run.get("sample_count", 200))
    rho0 = _initial_state(cfg, p.n_qubits)
    traj = evolve(p, rho0, t_end, n, settings)
    d = p.dim
    columns = ["t[1/Omega]", "negativity"] + [f"rho_{k+1}{k+1}" for k in range(d)] + ["purity"]
    rows = []
    for t, s in zip(traj.times, traj.states):
        pops = [float(s.entries[k, k].real) for k in range(d)]
        purity = float(np.trace(s.entries @ s.entries).real)
        rows.append([float(t), negativity(s, (0,), settings), *pops, purity])
    return columns, rows, {}


def _cmd_steady(cfg, settings, threads):
    p = _system_params(cfg)
    res = steady_state(p, settings)
    e = negativity(res.rho_ss, (0,), settings)
    d = p.dim
    columns = ["row", "col", "re", "im"]
    rows = [
        [i + 1, j + 1, float(res.rho_ss.entries[i, j].real), float(res.rho_ss.entries[i, j].imag)]
        for i in range(d)
        for j in range(d)
    ]
    extra = {
        "negativity": e,
        "residual": res.residual,
        "uniqueness_gap": res.uniqueness_gap,
    }
    if e < 10.0 * settings.negativity_eps:
        extra["warning"] = "negativity below 10x epsilon: separable or near the threshold"
    return columns, rows, extra


def _cmd_sweep(cfg, settings, threads):
    p = _system_params(cfg)
    run = cfg.get("run", {})
    parameter = run.get("parameter", "gamma")
    grid = _grid(run.get("grid", []), "run.grid")
    if parameter == "gamma":
        result = sweep_gamma(p, grid, settings)
    elif parameter == "delta":
        result = sweep_delta(p, grid, settings)
    else:
        raise ConfigError(f"run.parameter must be gamma or delta, got {parameter!r}")
    columns = [result.swept_parameter, "negativity", "error"]
    rows = [
        [float(g), float(v), "degenerate" if k in result.failed_points else ""]
        for k, (g, v) in enumerate(zip(result.grid, result.values))
    ]
    extra = {
        "gamma_c": list(result.markers.gamma_c),
        "gamma_m": [list(x) for x in result.markers.gamma_m],
        "marker_tolerance": result.markers.tolerance,
    }
    return columns, rows, extra


def _cmd_border(cfg, settings, threads):
    p = _system_params(cfg)
    run = cfg.get("run", {})
    for key in ("axis1", "axis2"):
        if key not in run:
            raise ConfigError(f"run.{key} is required for border")
        _reject_unknown(run[key], {"name", "grid"}, f"run.{key}")
    name1, grid1 = run["axis1"]["name"], _grid(run["axis1"]["grid"], "axis1.grid")
    name2, grid2 = run["axis2"]["name"], _grid(run["axis2"]["grid"], "axis2.grid")
    eps = run.get("epsilon_border")

    # cells are independent; farm rows out and merge by index
    def one_row(x1):
        return border_map(p, (name1, np.array([x1])), (name2, grid2), eps, settings)

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            parts = list(pool.map(one_row, grid1))
    else:
        parts = [one_row(x1) for x1 in grid1]

    columns = [name1, name2, "entangled", "error"]
    rows = []
    for i, part in enumerate(parts):
        failed = {j for (_zero, j) in part.failed_cells}
        for j, x2 in enumerate(grid2):
            rows.append(
                [
                    float(grid1[i]),
                    float(x2),
                    int(part.entangled[0, j]),
                    "degenerate" if j in failed else "",
                ]
            )
    used_eps = eps if eps is not None else settings.negativity_eps
    return columns, rows, {"epsilon_border": float(used_eps)}


def _cmd_optimum(cfg, settings, threads):
    p = _system_params(cfg)
    run = cfg.get("run", {})
    tol = float(run.get("tol", 1e-4))
    if "nbar_list" in run:
        table = gamma_m_vs_nbar(
            p,
            run["nbar_list"],
            gamma_max=float(run.get("gamma_max", 20.0)),
            tol=tol,
            settings=settings,
        )
        columns = ["nbar", "gamma_m[Omega]", "e_max"]
        rows = [[nb, gm, em] for nb, gm, em in zip(table.nbar, table.gamma_m, table.e_max)]
        extra = {
            "fit_slope": table.fit_slope,
            "fit_intercept": table.fit_intercept,
            "fit_rel_rms_residual": table.fit_rel_rms_residual,
            "fit_nbar_cutoff": table.fit_nbar_cutoff,
        }
        return columns, rows, extra
    bracket = run.get("bracket", [1e-3, 20.0])
    gm, em = find_gamma_m(p, (float(bracket[0]), float(bracket[1])), tol, settings)
    return ["gamma_m[Omega]", "e_max"], [[gm, em]], {}


def _cmd_events(cfg, settings, threads):
    p = _system_params(cfg)
    run = cfg.get("run", {})
    t_end = float(run.get("t_end", 60.0))
    n = int(run.get("sample_count", 400))
    eps = run.get("epsilon")
    rho0 = _initial_state(cfg, p.n_qubits)
    traj = evolve(p, rho0, t_end, n, settings)
    events = detect_events(traj, eps, params=p, settings=settings)
    columns = ["kind", "time[1/Omega]", "negativity_before", "negativity_after"]
    rows = [[e.kind, e.time, e.negativity_before, e.negativity_after] for e in events]
    return columns, rows, {"epsilon": float(eps) if eps is not None else settings.negativity_eps}


def _cmd_oracle_check(cfg, settings, threads):
    p = _system_params(cfg)
    if p.n_qubits != 2:
        raise ConfigError("oracle-check requires n_qubits = 2")
    run = cfg.get("run", {})
    t_end = float(run.get("t_end", 60.0))
    n = int(run.get("sample_count", 61))
    rho0 = _initial_state(cfg, 2)
    tr_rk = evolve(p, rho0, t_end, n, settings)
    tr_el = evolve_elementwise_n2(p, rho0, t_end, n, settings)
    liou = build_liouvillian(p)
    columns = ["t[1/Omega]", "dev_rk_vs_elementwise", "dev_rk_vs_expm", "dev_elementwise_vs_expm"]
    rows = []
    worst = 0.0
    for k, t in enumerate(tr_rk.times):
        m_rk = tr_rk.states[k].entries
        m_el = tr_el.states[k].entries
        m_ex = propagate_exponential(liou, rho0, float(t)).entries
        d1 = float(np.max(np.abs(m_rk - m_el)))
        d2 = float(np.max(np.abs(m_rk - m_ex)))
        d3 = float(np.max(np.abs(m_el - m_ex)))
        worst = max(worst, d1, d2, d3)
        rows.append([float(t), d1, d2, d3])
    return columns, rows, {"max_deviation": worst}


_COMMANDS = {
    "evolve": _cmd_evolve,
    "steady": _cmd_steady,
    "sweep": _cmd_sweep,
    "border": _cmd_border,
    "optimum": _cmd_optimum,
    "events": _cmd_events,
    "oracle-check": _cmd_oracle_check,
}


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="drivenqubits",
        description="Steady-state entanglement of driven, coupled, dissipative qubits",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="subcommand", required=True)
    for name in _COMMANDS:
        sp = sub.add_parser(name)
        sp.add_argument("--config", required=True, help="JSON run configuration")
        sp.add_argument("--output", default=None, help="output path (default: stdout)")
        sp.add_argument("--format", choices=("csv", "json"), default=None)
        sp.add_argument("--threads", type=int, default=1)
        sp.add_argument(
            "--tolerance",
            action="append",
            default=[],
            metavar="NAME=VALUE",
            help="override a numerical tolerance (repeatable)",
        )
    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        cfg = _load_config(args.config, args.subcommand)
        settings = _settings(args.tolerance)
        out_cfg = cfg.get("output", {})
        path = args.output if args.output is not None else out_cfg.get("path")
        fmt = args.format if args.format is not None else out_cfg.get("format", "csv")
        if fmt not in ("csv", "json"):
            raise ConfigError(f"output format must be csv or json, got {fmt!r}")
        if args.threads < 1:
            raise ConfigError(f"--threads must be >= 1, got {args.threads}")
        columns, rows, extra = _COMMANDS[args.subcommand](cfg, settings, args.threads)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except DegenerateSteadyStateError as exc:
        print(f"degenerate steady state: {exc}", file=sys.stderr)
        return EXIT_DEGENERATE
    except DrivenQubitsError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    _write_table(columns, rows, fmt, path, extra)
    if fmt == "csv" and extra:
        for key, value in sorted(extra.items()):
            print(f"# {key}: {value}", file=sys.stderr)
    hard_failure = any("degenerate" in row for row in rows)
    return EXIT_NUMERICAL if hard_failure else EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
