"""Command-line entry point.

Subcommands: ``verify-algebra``, ``verify-dirac``, ``solve <example>``,
``energy-report [example]``, ``residual <example>``.  Exit status is 0 when
every check passes, 1 when a check or solve fails (the report is still
written) and 2 on usage or configuration errors.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from datetime import datetime, timezone
from pathlib import Path

import numpy as np

from . import verify as V
from .dirac import (
    contraction_equivalence,
    energy_conservation_residual,
    lagrange_dirac_check,
    lagrange_dirac_coefficients,
    standard_isotropy_suite,
)
from .exterior.identities import algebra_suite
from .gridio import ConfigError, parse_grid, read_config, write_field_csv
from .jet import PontryaginPoint, legendre_transform, random_jet_point
from .report import SCHEMA_VERSION, CheckResult
from .solver.energy import dirac_report, energy_report
from .solver.hyperbolic import march_hyperbolic
from .solver.newton import NewtonConfig, NewtonError
from .solver.nonholonomic import constraint_violations, energy_law_residuals, integrate, planar_reference
from .solver.residual import assemble_residual
from .solver.section import DiscreteSection
from .theories import (
    ExampleError,
    ExampleId,
    elasticity_model,
    make_example,
    maxwell_solution,
    patch_spec,
    planar_particle,
    rod_displacement,
    rod_spec,
    wave_solution,
)

CONFIG_KEYS = {
    "example", "potential", "m", "grid", "k", "lambda", "mu", "tau", "seed", "dim", "young", "length",
    "steps", "t_end", "base_dim", "speed", "constrained", "samples", "n", "tol", "courant",
}


class UsageError(Exception):
    pass


# ------------------------------------------------------------------ helpers
def _jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items() if k != "section"}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, CheckResult):
        return _jsonable(obj.to_dict())
    if isinstance(obj, (np.bool_, bool)):
        return bool(obj)
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, (np.floating, float)):
        return float(obj)
    if isinstance(obj, np.ndarray):
        return _jsonable(obj.tolist())
    return obj


def write_report(out: Path, name: str, payload: dict) -> Path:
    out.mkdir(parents=True, exist_ok=True)
    body = {"schema_version": SCHEMA_VERSION, "timestamp": datetime.now(timezone.utc).isoformat(), **payload}
    path = out / f"{name}.json"
    path.write_text(json.dumps(_jsonable(body), indent=2, sort_keys=True) + "\n", encoding="utf-8")
    return path


def _config(args) -> dict:
    cfg = {}
    if args.config:
        try:
            cfg = read_config(args.config)
        except OSError as exc:
            raise UsageError(f"cannot read config: {exc}") from None
    unknown = sorted(set(cfg) - CONFIG_KEYS)
    if unknown:
        raise UsageError(f"unknown config keys: {', '.join(unknown)}")
    if args.grid:
        cfg["grid"] = args.grid
    if args.seed is not None:
        cfg["seed"] = str(args.seed)
    if args.tol is not None:
        cfg["tol"] = str(args.tol)
    if args.samples is not None:
        cfg["samples"] = str(args.samples)
    if args.n is not None:
        cfg["n"] = str(args.n)
    return cfg


def _num(cfg, key, default, cast=float):
    try:
        return cast(cfg.get(key, default))
    except (TypeError, ValueError):
        raise UsageError(f"config key {key}={cfg.get(key)!r} is not a valid number") from None


def _grid(cfg, default):
    return parse_grid(cfg.get("grid", default))


def _example(name: str, cfg: dict) -> str:
    name = name or cfg.get("example") or "wave"
    if cfg.get("example") and cfg["example"] != name:
        raise UsageError(f"config example={cfg['example']} conflicts with {name}")
    try:
        return ExampleId(name).value
    except ValueError:
        raise UsageError(f"unknown example {name!r}; choose from {[e.value for e in ExampleId]}") from None


def _print_checks(checks):
    for c in checks:
        print(c.summary())


# ----------------------------------------------------------------- commands
def cmd_verify_algebra(args, cfg, out: Path) -> int:
    samples = _num(cfg, "samples", 1000, int)
    seed = _num(cfg, "seed", 42, int)
    t0 = time.perf_counter()
    checks = algebra_suite(samples, seed)
    _print_checks(checks)
    ok = all(c.passed for c in checks)
    write_report(out, "verify-algebra", {"command": "verify-algebra", "seed": seed, "checks": checks,
                                         "runtime_s": round(time.perf_counter() - t0, 3)})
    return 0 if ok else 1


def cmd_verify_dirac(args, cfg, out: Path) -> int:
    samples = _num(cfg, "samples", 200, int)
    seed = _num(cfg, "seed", 42, int)
    ns = (_num(cfg, "n", 0, int),) if "n" in cfg else (0, 1, 2)
    if min(ns) < 0:
        raise UsageError("--n must be >= 0")
    checks = standard_isotropy_suite(ns, samples, seed)
    ss = np.random.SeedSequence(seed).spawn(2 * len(ns) + 1)
    for i, n in enumerate(ns):
        for N in (1, 2):
            checks.append(contraction_equivalence(n, N, samples, np.random.default_rng(ss[2 * i + N - 1])))
    # pointwise Lagrange-Dirac condition and X ⨼ dE = 0 on the wave chart
    rng = np.random.default_rng(ss[-1])
    model = make_example("wave", {"potential": "-0.5*phi^2+0.1*phi^4"})
    worst_ld = worst_en = 0.0
    for _ in range(samples):
        x, y, v = random_jet_point(model.chart, rng)
        pa, p = legendre_transform(model, x, y, v)
        pt = PontryaginPoint(x, y, v, p, pa)
        X = lagrange_dirac_coefficients(model, pt, rng)
        worst_ld = max(worst_ld, lagrange_dirac_check(model, X, pt)[1])
        worst_en = max(worst_en, energy_conservation_residual(model, X, pt))
    checks.append(CheckResult("lagrange_dirac_pointwise", samples, worst_ld, 1e-10, details={
        "comparison": "1-form i_X Omega_M vs (-1)^(n+2) dE; X has grade n+1, Omega_M grade n+2"}))
    checks.append(CheckResult("energy_conservation", samples, worst_en, 1e-10))
    _print_checks(checks)
    write_report(out, "verify-dirac", {"command": "verify-dirac", "seed": seed, "checks": checks})
    return 0 if all(c.passed for c in checks) else 1


def _solve_elastostatics(cfg, out: Path, tol: float):
    dim = _num(cfg, "dim", 1, int)
    cfg_newton = NewtonConfig(tol=tol)
    if dim == 1:
        spec = rod_spec(_num(cfg, "tau", 2.0), _num(cfg, "young", 1.0), _num(cfg, "length", 1.0))
        ext = _grid(cfg, "11")
    elif dim == 2:
        spec = patch_spec(_num(cfg, "lambda", 1.0), _num(cfg, "mu", 1.0), _num(cfg, "tau", 1.0))
        ext = _grid(cfg, "7x7")
    else:
        raise UsageError("elastostatics dim must be 1 or 2 from the CLI")
    if len(ext) != dim:
        raise UsageError(f"grid {cfg.get('grid')} does not match dim={dim}")
    model, result = V.solve_elastostatics(spec, ext, cfg_newton)
    sec = result.section
    axes = sec.axes()
    names = ["u"] if dim == 1 else [f"u{i}" for i in range(dim)]
    for i, name in enumerate(names):
        write_field_csv(out / f"{name}.csv", axes, sec.y[i], name)
    blocks = assemble_residual(model, sec).block_norms()
    payload = {"example": "elastostatics", "grid": list(ext), "iterations": result.iterations,
               "final_residual": result.residual, "energy_max": energy_report(model, sec)["energy_max"],
               "dirac_check_max": dirac_report(model, sec)["dirac_check_max"], "observed_orders": {},
               "traction_max": blocks.get("traction", 0.0)}
    if dim == 1:
        payload["max_error"] = float(np.abs(sec.y[0] - rod_displacement(spec, axes[0])).max())
    return payload, result.residual <= tol


def _solve_wave(cfg, out: Path):
    nx = _grid(cfg, "64")[-1]
    k = _num(cfg, "k", 1.0)
    study = V.wave_march_study((nx // 2, nx), k, _num(cfg, "courant", 0.5))
    model = make_example("wave", {})
    phi, _, _ = wave_solution(k)
    h = 2 * np.pi / nx
    dt = _num(cfg, "courant", 0.5) * h
    steps = int(round(2 * np.pi / dt))
    x = np.arange(nx) * h
    sec = march_hyperbolic(model, phi(0.0, x)[None], phi(dt, x)[None], dt, (h,), steps)
    write_field_csv(out / "phi.csv", sec.axes(), sec.y[0], "phi")
    payload = {"example": "wave", "grid": [steps + 1, nx], "iterations": steps,
               "final_residual": study["residuals"][-1], "march_error": study["errors"][-1],
               "energy_max": study["energy"][-1]["energy_max"], "dirac_check_max": study["dirac"][-1]["dirac_check_max"],
               "observed_orders": {"march_error": study["error_orders"], "residual": study["residual_orders"]}}
    return payload, study["dirac"][-1]["passed"]


def _solve_maxwell(cfg, out: Path):
    ext = _grid(cfg, "32x8")
    if len(ext) != 2:
        raise UsageError("maxwell grid is NXxNY for the (x, y) plane")
    nx, ny = ext
    if min(ext) < 2 * V.HYPERBOLIC_MARGIN + 1:
        raise UsageError(f"maxwell grid needs at least {2 * V.HYPERBOLIC_MARGIN + 1} points per axis")
    k = _num(cfg, "k", 1.0)
    model = make_example("maxwell", {"base_dim": 3})
    potential, _ = maxwell_solution(k, 3)
    h = 2 * np.pi / nx
    dt = _num(cfg, "courant", 0.5) * h / np.sqrt(2.0)
    steps = int(round(2 * np.pi / dt))
    xs, ys = np.arange(nx) * h, np.arange(ny) * h

    def level(t):
        X, Y = np.meshgrid(xs, ys, indexing="ij")
        return potential(np.stack([np.full_like(X, t), X, Y]))

    sec = march_hyperbolic(model, level(0.0), level(dt), dt, (h, h), steps)
    t = np.arange(steps + 1) * dt
    exact = np.sin(k * (xs[None, :, None] - t[:, None, None])) * np.ones((1, 1, ny))
    err = float(np.abs(sec.y[2] - exact).max())
    write_field_csv(out / "A2.csv", sec.axes(), sec.y[2], "A2")
    rep = dirac_report(model, sec, width=V.HYPERBOLIC_MARGIN)
    payload = {"example": "maxwell", "grid": [steps + 1, nx, ny], "iterations": steps,
               "final_residual": assemble_residual(model, sec).interior_norm(V.HYPERBOLIC_MARGIN), "march_error": err,
               "energy_max": energy_report(model, sec, V.HYPERBOLIC_MARGIN)["energy_max"],
               "dirac_check_max": rep["dirac_check_max"], "observed_orders": {},
               "antisymmetry": float(np.abs(sec.pa + np.swapaxes(sec.pa, 0, 1)).max())}
    return payload, rep["passed"]


def _solve_nonholonomic(cfg, out: Path):
    steps = _num(cfg, "steps", 40, int)
    t_end = _num(cfg, "t_end", 1.0)
    constrained = str(cfg.get("constrained", "true")).lower() not in ("0", "false", "no")
    spec = planar_particle(constrained, _num(cfg, "speed", 1.0))
    states = integrate(spec, t_end, steps)
    t = np.array([s.t for s in states])
    for i in range(spec.config_dim):
        write_field_csv(out / f"q{i}.csv", [t], [s.q[i] for s in states], f"q{i}")
    payload = {"example": "nonholonomic", "grid": [steps + 1], "iterations": steps,
               "final_residual": float(constraint_violations(spec, states).max()),
               "energy_max": float(energy_law_residuals(spec, states).max()), "dirac_check_max": None,
               "observed_orders": {}}
    ok = payload["final_residual"] <= 1e-10
    if constrained:
        study = V.nonholonomic_study(spec, t_end, (steps // 2, steps))
        q_ref, _ = planar_reference(spec, t_end, t_end / steps)
        payload["reference_error"] = float(np.abs(states[-1].q - q_ref).max())
        payload["observed_orders"] = {"trajectory": study["orders"]}
    else:
        payload["reference_error"] = float(np.abs(states[-1].q - (spec.q0 + spec.v0 * t_end)).max())
    return payload, ok


def cmd_solve(args, cfg, out: Path) -> int:
    example = _example(args.example, cfg)
    tol = _num(cfg, "tol", 1e-10)
    out.mkdir(parents=True, exist_ok=True)
    try:
        if example == "elastostatics":
            payload, ok = _solve_elastostatics(cfg, out, tol)
        elif example == "wave":
            payload, ok = _solve_wave(cfg, out)
        elif example == "maxwell":
            payload, ok = _solve_maxwell(cfg, out)
        else:
            payload, ok = _solve_nonholonomic(cfg, out)
    except NewtonError as exc:
        write_report(out, f"solve-{example}", {"command": "solve", "example": example, "error": str(exc),
                                               "final_residual": exc.residual, "iterations": exc.iterations})
        print(f"[FAIL] solve {example}: {exc}")
        return 1
    write_report(out, f"solve-{example}", {"command": "solve", **payload})
    print(f"[{'PASS' if ok else 'FAIL'}] solve {example}: final_residual={payload['final_residual']:.3e}")
    return 0 if ok else 1


def cmd_energy_report(args, cfg, out: Path) -> int:
    example = _example(args.example, cfg)
    if example == "wave":
        study = V.wave_residual_study(_grid(cfg, "64x64")[-1:], _num(cfg, "k", 1.0), _num(cfg, "m", 0.0))
        energy, dirac = study["energy"][-1], study["dirac"][-1]
    elif example == "maxwell":
        model, sec = V.maxwell_reference_section(_grid(cfg, "33")[0], _num(cfg, "k", 1.0))
        energy, dirac = energy_report(model, sec), dirac_report(model, sec)
    elif example == "elastostatics":
        study = V.rod_study() if _num(cfg, "dim", 1, int) == 1 else V.patch_study()
        energy, dirac = study["energy"], study["dirac"]
    else:
        spec = planar_particle()
        states = integrate(spec, _num(cfg, "t_end", 1.0), _num(cfg, "steps", 40, int))
        law = float(energy_law_residuals(spec, states).max())
        energy = {"energy_max": 0.0, "energy_law_max": law}
        dirac = {"passed": True}
    ok = energy["energy_max"] <= 1e-14 and dirac.get("passed", True)
    print(f"[{'PASS' if ok else 'FAIL'}] energy-report {example}: " + " ".join(f"{k}={v:.3e}" for k, v in energy.items()))
    write_report(out, f"energy-report-{example}", {"command": "energy-report", "example": example, "energy": energy, "dirac": dirac})
    return 0 if ok else 1


def cmd_residual(args, cfg, out: Path) -> int:
    example = _example(args.example, cfg)
    if example == "wave":
        n = _grid(cfg, "64x64")[-1]
        study = V.wave_residual_study((n // 2, n), _num(cfg, "k", 1.0), _num(cfg, "m", 0.0))
        payload = {"residuals": study["residuals"], "observed_orders": study["orders"]}
        ok = study["dirac"][-1]["passed"]
    elif example == "maxwell":
        n = _grid(cfg, "33")[0]
        study = V.maxwell_study(((n + 1) // 2, n), _num(cfg, "k", 1.0))
        payload = {"residuals": study["residuals"], "observed_orders": study["orders"],
                   "antisymmetry": study["antisymmetry"], "momentum_sign": study["momentum_sign"]}
        ok = study["antisymmetry"] <= 1e-14
        print(f"maxwell: dL/dA_(mu,nu) = {study['momentum_sign']}F^(mu nu)")
    elif example == "elastostatics":
        spec = rod_spec(_num(cfg, "tau", 2.0), _num(cfg, "young", 1.0), _num(cfg, "length", 1.0))
        model = elasticity_model(spec)
        n = _grid(cfg, "11")[0]
        x = np.linspace(0.0, spec.length[0], n)
        sec = DiscreteSection.from_fields(model, (x[1] - x[0],), rod_displacement(spec, x)[None])
        res = assemble_residual(model, sec)
        payload = {"residual": res.norm_inf(), "blocks": res.block_norms()}
        ok = res.norm_inf() <= 1e-12
    else:
        study = V.nonholonomic_study(planar_particle())
        payload = {"errors": study["errors"], "observed_orders": study["orders"], "constraint_max": study["constraint_max"]}
        ok = study["passed"]
    print(f"[{'PASS' if ok else 'FAIL'}] residual {example}: " + json.dumps(_jsonable(payload)))
    write_report(out, f"residual-{example}", {"command": "residual", "example": example, **payload})
    return 0 if ok else 1


# -------------------------------------------------------------------- parser
def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=None)
    common.add_argument("--out", default="hpfield_out")
    common.add_argument("--config", default=None)
    common.add_argument("--grid", default=None)
    common.add_argument("--tol", type=float, default=None)
    common.add_argument("--samples", type=int, default=None)
    common.add_argument("--n", type=int, default=None)

    parser = argparse.ArgumentParser(prog="hpfield", description="Hamilton-Pontryagin field theory checks and solvers")
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("verify-algebra", parents=[common]).set_defaults(func=cmd_verify_algebra)
    sub.add_parser("verify-dirac", parents=[common]).set_defaults(func=cmd_verify_dirac)
    p = sub.add_parser("solve", parents=[common])
    p.add_argument("example", nargs="?", default=None)
    p.set_defaults(func=cmd_solve)
    p = sub.add_parser("energy-report", parents=[common])
    p.add_argument("example", nargs="?", default=None)
    p.set_defaults(func=cmd_energy_report)
    p = sub.add_parser("residual", parents=[common])
    p.add_argument("example", nargs="?", default=None)
    p.set_defaults(func=cmd_residual)
    return parser


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        cfg = _config(args)
        return args.func(args, cfg, Path(args.out))
    except (UsageError, ConfigError, ExampleError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run())
