"""Command-line entry point.

    breather-bench <verify|spectrum|evolve|stability|soliton>
                   --config <path> --out <dir> [--strict]

Each subcommand reads one JSON config (missing keys fall back to defaults),
writes a ``report.json`` plus the command's CSV outputs into the output
directory, and exits 0 when every check passed, 1 when checks ran but some
failed, 2 on usage/config errors and 3 on numerical faults.
"""

from __future__ import annotations

import argparse
import copy
import json
import math
import sys

import numpy as np

from . import functionals, linearized, reporting
from .evolution import EvolutionConfig, NumericalFaultError, conservation_drift, evolve
from .experiments import (
    ConvergenceError,
    IDENTITY_TOLERANCES,
    StabilityConfig,
    run_identity_suite,
    run_spectrum_experiment,
    run_stability,
)
from .grids import Field, TailError, make_grid, sobolev_norm
from .profiles import BreatherParams, SolitonParams, breather, soliton


class ConfigError(ValueError):
    pass


class ExperimentFault(RuntimeError):
    """A run aborted mid-way (evolution fault or fit failure)."""


DEFAULT_CONFIG: dict = {
    "grid": {"L": 30.0, "N": 2048},
    "params": {"alpha": 1.0, "beta": 1.0, "x1": 0.0, "x2": 0.0},
    # dt calibrated so the tracking error at t = pi sits well under 1e-6
    "evolution": {"dt": 1.6e-4, "t_end": math.pi, "output_stride": 3927},
    "stability": {"eta": 1e-3, "seed": 1, "k_max": 8},
    "spectrum": {"n_points": 2048, "k": 12, "time": 0.0},
    "soliton": {"speeds": [0.25, 1.0, 4.0]},
    "verify": {
        "pairs": [[1.0, 1.0], [1.0, 2.0], [2.0, 1.0], [0.7, 1.3]],
        "times": [0.0, 0.37],
    },
    "tolerances": {},
}

DEFAULT_TOLERANCES: dict[str, float] = {
    **IDENTITY_TOLERANCES,
    "conservation_drift": 1e-8,
    "propagation_h2": 1e-6,
    "spectrum_edge_fraction": 0.98,
    "stability_sup_ratio": 50.0,
    "stability_growth": 5.0,
    "soliton_mass": 1e-10,
    "soliton_mass_derivative": 1e-6,
    "soliton_ode": 1e-8,
    "remainder_slope_target": 3.0,
    "remainder_slope_band": 0.2,
}


def _merge(base: dict, override: dict) -> dict:
    out = copy.deepcopy(base)
    for key, value in override.items():
        if isinstance(value, dict) and isinstance(out.get(key), dict):
            out[key] = _merge(out[key], value)
        else:
            out[key] = value
    return out


def load_config(path: str | None) -> dict:
    if path is None:
        return copy.deepcopy(DEFAULT_CONFIG)
    try:
        with open(path) as handle:
            user = json.load(handle)
    except OSError as exc:
        raise ConfigError(f"cannot read config: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config is not valid JSON: {exc}") from exc
    if not isinstance(user, dict):
        raise ConfigError("config root must be a JSON object")
    return _merge(DEFAULT_CONFIG, user)


def resolve_tolerances(config: dict) -> dict[str, dict]:
    """Tolerance table with provenance, echoed into every report."""
    table = {}
    overrides = config.get("tolerances", {})
    for name, default in DEFAULT_TOLERANCES.items():
        if name in overrides:
            table[name] = {"value": float(overrides[name]), "source": "config"}
        else:
            table[name] = {"value": float(default), "source": "default"}
    unknown = set(overrides) - set(DEFAULT_TOLERANCES)
    if unknown:
        raise ConfigError(f"unknown tolerance keys: {sorted(unknown)}")
    return table


def _grid_from(config: dict):
    g = config["grid"]
    return make_grid(float(g["L"]), int(g["N"]))


def _params_from(config: dict) -> BreatherParams:
    p = config["params"]
    return BreatherParams(
        float(p["alpha"]), float(p["beta"]), float(p.get("x1", 0.0)),
        float(p.get("x2", 0.0)),
    )


def _check(name: str, measured: float, threshold: float, comparator: str) -> dict:
    if comparator == "<=":
        ok = measured <= threshold
    elif comparator == ">=":
        ok = measured >= threshold
    else:
        raise ValueError(comparator)
    return {
        "name": name,
        "measured": float(measured),
        "threshold": float(threshold),
        "comparator": comparator,
        "pass": bool(ok),
    }


def _slope(eps_values: list[float], remainders: list[float]) -> float:
    logs = np.log(np.abs(np.array(remainders)))
    le = np.log(np.array(eps_values))
    coeffs = np.polyfit(le, logs, 1)
    return float(coeffs[0])


# --------------------------------------------------------------------------
# subcommand handlers: each returns (report_payload, ok)
# --------------------------------------------------------------------------


def cmd_verify(config: dict, out_dir: str, strict: bool) -> tuple[dict, bool]:
    grid = _grid_from(config)
    tols = resolve_tolerances(config)
    pairs = [BreatherParams(float(a), float(b)) for a, b in config["verify"]["pairs"]]
    times = [float(t) for t in config["verify"]["times"]]
    suite = run_identity_suite(
        pairs, times, grid,
        tolerances={k: v["value"] for k, v in tols.items() if k in IDENTITY_TOLERANCES},
        strict=strict,
    )
    payload = {
        "command": "verify",
        "config": {"grid": config["grid"], "verify": config["verify"]},
        "thresholds": tols,
        "checks": suite["checks"],
        "warnings": suite["warnings"],
        "ok": suite["ok"],
    }
    return payload, suite["ok"]


def cmd_spectrum(config: dict, out_dir: str, strict: bool) -> tuple[dict, bool]:
    tols = resolve_tolerances(config)
    p = _params_from(config)
    spec_cfg = config["spectrum"]
    n_points = int(spec_cfg["n_points"])
    k = int(spec_cfg["k"])
    t = float(spec_cfg["time"])
    report, _written = run_spectrum_experiment(
        p, t, n_points, k, half_width=float(config["grid"]["L"]), out_dir=out_dir
    )
    edge_fraction = tols["spectrum_edge_fraction"]["value"]
    discrete = report.n_negative + report.kernel_count
    above = report.eigenvalues[discrete:]
    checks = [
        _check("n_negative", report.n_negative, 1, ">="),
        _check("n_negative_upper", report.n_negative, 1, "<="),
        _check("kernel_count", report.kernel_count, 2, ">="),
        _check("kernel_count_upper", report.kernel_count, 2, "<="),
        _check(
            "continuum_above_edge",
            float(above.min()) if len(above) else float("inf"),
            edge_fraction * report.essential_edge_theory,
            ">=",
        ),
    ]
    ok = all(c["pass"] for c in checks)
    payload = {
        "command": "spectrum",
        "config": {"grid": config["grid"], "params": config["params"],
                   "spectrum": spec_cfg},
        "thresholds": tols,
        "results": {
            "eigenvalues": [float(v) for v in report.eigenvalues],
            "n_negative": report.n_negative,
            "kernel_count": report.kernel_count,
            "essential_edge_theory": report.essential_edge_theory,
            "lowest_eigenvalue": report.lowest_eigenvalue,
            "tol_negative": report.tol_negative,
            "tol_kernel": report.tol_kernel,
        },
        "checks": checks,
        "warnings": [],
        "ok": ok,
    }
    return payload, ok


def _write_series_csv(out_dir: str, rows: list[tuple]) -> None:
    reporting.write_csv(
        f"{out_dir}/error_series.csv",
        ["t", "z_h2", "x1", "x2", "M", "E", "F", "H"],
        rows,
    )


def _write_snapshots_csv(out_dir: str, times, snapshots) -> None:
    if not snapshots:
        return
    n = snapshots[0].grid.n_points
    x_stride = max(1, n // 256)
    t_stride = max(1, math.ceil(len(snapshots) / 33))
    rows = []
    for idx in range(0, len(snapshots), t_stride):
        t = float(times[idx])
        field = snapshots[idx]
        xs = field.grid.points[::x_stride]
        us = field.samples[::x_stride]
        rows.extend((t, float(xv), float(uv)) for xv, uv in zip(xs, us))
    reporting.write_csv(f"{out_dir}/snapshots.csv", ["t", "x", "u"], rows)


def cmd_evolve(config: dict, out_dir: str, strict: bool) -> tuple[dict, bool]:
    grid = _grid_from(config)
    tols = resolve_tolerances(config)
    p = _params_from(config)
    evo = config["evolution"]
    cfg = EvolutionConfig(
        dt=float(evo["dt"]), t_end=float(evo["t_end"]),
        output_stride=int(evo["output_stride"]), strict_tails=strict,
    )
    u0 = breather(p, 0.0, grid, strict=strict)
    traj = evolve(u0, cfg)
    h_series = traj.lyapunov_series(p.alpha, p.beta)
    rows = []
    errors = []
    for idx, t in enumerate(traj.times):
        exact = breather(p, float(t), grid)
        err = sobolev_norm(traj.snapshots[idx] - exact, 2)
        errors.append(err)
        rows.append((
            float(t), err, p.x1, p.x2,
            float(traj.mass_series[idx]), float(traj.energy_series[idx]),
            float(traj.second_energy_series[idx]), float(h_series[idx]),
        ))
    _write_series_csv(out_dir, rows)
    _write_snapshots_csv(out_dir, traj.times, traj.snapshots)
    drift = conservation_drift(traj, p.alpha, p.beta)
    checks = [
        _check("propagation_h2", errors[-1], tols["propagation_h2"]["value"], "<=")
    ] + [
        _check(f"drift_{name}", value,
               tols["conservation_drift"]["value"], "<=")
        for name, value in drift.items()
    ]
    ok = all(c["pass"] for c in checks)
    payload = {
        "command": "evolve",
        "config": {"grid": config["grid"], "params": config["params"],
                   "evolution": evo},
        "thresholds": tols,
        "results": {"final_h2_error": errors[-1], "conserved_drift": drift},
        "checks": checks,
        "warnings": [],
        "ok": ok,
    }
    return payload, ok


def cmd_stability(config: dict, out_dir: str, strict: bool) -> tuple[dict, bool]:
    grid = _grid_from(config)
    tols = resolve_tolerances(config)
    p = _params_from(config)
    evo = config["evolution"]
    stab = config["stability"]
    eta = float(stab["eta"])
    if eta > StabilityConfig.ETA_MAX:
        raise ConfigError(
            f"stability.eta must be <= {StabilityConfig.ETA_MAX} "
            f"(small-perturbation regime), got {eta}"
        )
    cfg = StabilityConfig(
        params=p,
        eta=eta,
        seed=int(stab["seed"]),
        k_max=int(stab["k_max"]),
        grid=grid,
        evolution=EvolutionConfig(
            dt=float(evo["dt"]), t_end=float(evo["t_end"]),
            output_stride=int(evo["output_stride"]), strict_tails=False,
        ),
    )
    report = run_stability(cfg)
    if not report.complete:
        raise ExperimentFault(f"stability run incomplete: {report.fault}")
    rows = [
        (
            float(t), float(z), fit.x1, fit.x2,
            float(report.conserved_series["M"][i]),
            float(report.conserved_series["E"][i]),
            float(report.conserved_series["F"][i]),
            float(report.conserved_series["H"][i]),
        )
        for i, (t, z, fit) in enumerate(
            zip(report.times, report.z_h2_norms, report.shift_tracks)
        )
    ]
    _write_series_csv(out_dir, rows)
    _write_snapshots_csv(out_dir, report.times, report.snapshots)
    checks = []
    if eta > 0:
        checks.append(_check("stability_sup_ratio", report.sup_ratio,
                             tols["stability_sup_ratio"]["value"], "<="))
        checks.append(_check("stability_growth", report.max_over_initial,
                             tols["stability_growth"]["value"], "<="))
    ok = all(c["pass"] for c in checks)
    payload = {
        "command": "stability",
        "config": {"grid": config["grid"], "params": config["params"],
                   "evolution": evo, "stability": stab},
        "thresholds": tols,
        "results": {
            "sup_ratio": report.sup_ratio,
            "max_over_initial": report.max_over_initial,
            "conserved_drift": report.conserved_drift,
            "final_z_h2": float(report.z_h2_norms[-1]),
        },
        "checks": checks,
        "warnings": [] if report.complete else [report.fault],
        "ok": ok,
    }
    return payload, ok


def cmd_soliton(config: dict, out_dir: str, strict: bool) -> tuple[dict, bool]:
    grid = _grid_from(config)
    tols = resolve_tolerances(config)
    checks = []
    results = {}
    for c in config["soliton"]["speeds"]:
        c = float(c)
        sp = SolitonParams(c)
        q = soliton(sp, 0.0, grid, strict=strict)
        mass_err = abs(functionals.mass(q) - functionals.soliton_mass_value(sp))
        numeric, analytic = functionals.soliton_mass_derivative(c, grid)
        ode_res = functionals.soliton_ode_residual(q, c).sup_norm()
        checks.append(_check(f"soliton_mass_c={c:g}", mass_err,
                             tols["soliton_mass"]["value"], "<="))
        checks.append(_check(f"soliton_mass_derivative_c={c:g}",
                             abs(numeric - analytic),
                             tols["soliton_mass_derivative"]["value"], "<="))
        checks.append(_check(f"soliton_ode_c={c:g}", ode_res,
                             tols["soliton_ode"]["value"], "<="))
        results[f"c={c:g}"] = {
            "mass_error": mass_err,
            "mass_derivative_numeric": numeric,
            "ode_residual": ode_res,
        }
    # cubic remainder of the soliton expansion along a fixed smooth direction
    c = 1.0
    x = grid.points
    w = Field(grid, np.cos(0.7 * x) / np.cosh(0.5 * x))
    w = (1.0 / sobolev_norm(w, 1)) * w
    eps_values = [1e-2, 5e-3, 2.5e-3]
    remainders = [
        functionals.soliton_expansion_remainder(c, eps * w) for eps in eps_values
    ]
    slope = _slope(eps_values, remainders)
    target = tols["remainder_slope_target"]["value"]
    band = tols["remainder_slope_band"]["value"]
    checks.append(_check("soliton_remainder_slope_low", slope, target - band, ">="))
    checks.append(_check("soliton_remainder_slope_high", slope, target + band, "<="))
    results["expansion_slope"] = slope
    ok = all(ch["pass"] for ch in checks)
    payload = {
        "command": "soliton",
        "config": {"grid": config["grid"], "soliton": config["soliton"]},
        "thresholds": tols,
        "results": results,
        "checks": checks,
        "warnings": [],
        "ok": ok,
    }
    return payload, ok


HANDLERS = {
    "verify": cmd_verify,
    "spectrum": cmd_spectrum,
    "evolve": cmd_evolve,
    "stability": cmd_stability,
    "soliton": cmd_soliton,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="breather-bench",
        description="Numerical checks and experiments for mKdV breathers.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name in HANDLERS:
        cmd = sub.add_parser(name)
        cmd.add_argument("--config", default=None, help="JSON config path")
        cmd.add_argument("--out", required=True, help="output directory")
        cmd.add_argument("--strict", action="store_true",
                         help="escalate tail warnings to errors")
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code in (0, None) else 2
    try:
        config = load_config(args.config)
        payload, ok = HANDLERS[args.command](config, args.out, args.strict)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except (NumericalFaultError, ConvergenceError, TailError, ExperimentFault) as exc:
        print(f"numerical fault: {exc}", file=sys.stderr)
        return 3
    except (ValueError, KeyError, TypeError) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    reporting.write_json(f"{args.out}/report.json", payload)
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
