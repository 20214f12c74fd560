"""Command-line front end.

Subcommands::

    dockopt solve CONFIG            one optimization run + report
    dockopt sweep CONFIG --axis ... weight sweep to CSV (Pareto exploration)
    dockopt calibrate CONFIG        fit surrogate coefficients to a target
    dockopt simulate CONFIG         Monte Carlo docking simulation
    dockopt check-gradients CONFIG  analytic-vs-finite-difference audit

Configuration is a YAML/JSON document with sections ``scenario`` (built-in
name) or ``problem`` (inline weights/bounds/constraints/x_init), plus
optional ``coefficients``, ``solver``, ``simulation``, and ``output``.
Unknown keys are rejected with the offending path named.  The environment
variable ``DOCKOPT_SEED`` (integer) overrides every configured seed.

Exit codes: 0 success/converged, 1 usage or configuration error,
2 solver did not converge (or a numerical audit failed).
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from dataclasses import dataclass

import numpy as np
import yaml

from .domain import (DesignBounds, DesignVector, DockGeometry,
                     InfeasibleRealizationError, WeightVector, default_bounds,
                     realize_design)
from .objective import ObjectiveCoefficients, gradient_at, total_cost_arrays
from .oracle import (SimulationConfig, rayleigh_success_probability,
                     simulate_docking)
from .scenarios import (DEFAULT_X_INIT, Scenario, calibrate, scenario_by_name)
from .solver import (ConstraintSet, SolveResult, SolverSettings,
                     multi_start_solve, solve)

EXIT_OK = 0
EXIT_CONFIG = 1
EXIT_NOT_CONVERGED = 2

CSV_HEADER = "p,q,r,s,A,l,u,e,eta,h,c,d,v,J,status"

_VECTOR_KEYS = ("A", "l", "u", "e", "eta")
_WEIGHT_KEYS = ("p", "q", "r", "s")
_COEFF_KEYS = ("kA", "kl", "ku", "ke", "k_eta", "au", "ae", "a_eta",
               "bA", "bl", "bu", "A_max", "l_max")
_SOLVER_KEYS = ("barrier_initial", "barrier_shrink", "barrier_floor",
                "kkt_tolerance", "max_outer_iterations",
                "max_inner_iterations", "armijo_c", "backtrack_factor",
                "multistart_count", "seed")
_GEOMETRY_KEYS = ("theta1", "theta2", "phi1", "phi2", "clearance")
_SIMULATION_KEYS = ("samples", "seed", "sigma_c", "authority_weight",
                    "accuracy_weight", "geometry")
_OUTPUT_KEYS = ("result", "csv")


class ConfigError(ValueError):
    """Configuration document is missing, malformed, or inconsistent."""


@dataclass(frozen=True)
class RunConfig:
    """Validated configuration document."""

    scenario: Scenario
    coefficients: ObjectiveCoefficients
    settings: SolverSettings
    sigma_c: float
    authority_weight: float
    accuracy_weight: float
    simulation_samples: int
    simulation_seed: int
    simulation_geometry: DockGeometry | None
    output_result: str | None
    output_csv: str | None


def _require_mapping(node, path: str) -> dict:
    if not isinstance(node, dict):
        raise ConfigError(f"{path}: expected a mapping, got "
                          f"{type(node).__name__}")
    return node


def _reject_unknown(node: dict, allowed: tuple[str, ...], path: str) -> None:
    for key in node:
        if key not in allowed:
            raise ConfigError(f"unknown key {path}.{key}" if path
                              else f"unknown key {key}")


def _number(node: dict, key: str, path: str, default=None) -> float:
    if key not in node:
        if default is None:
            raise ConfigError(f"{path}.{key} is required")
        return default
    value = node[key]
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigError(f"{path}.{key}: expected a number, got {value!r}")
    return float(value)


def _design_vector(node, path: str) -> DesignVector:
    node = _require_mapping(node, path)
    _reject_unknown(node, _VECTOR_KEYS, path)
    values = {k: _number(node, k, path) for k in _VECTOR_KEYS}
    try:
        return DesignVector(**values)
    except ValueError as exc:
        raise ConfigError(f"{path}: {exc}") from exc


def _parse_problem(node, path: str) -> Scenario:
    node = _require_mapping(node, path)
    _reject_unknown(node, ("weights", "bounds", "constraints", "x_init",
                           "expected_x_star"), path)
    weights_node = _require_mapping(node.get("weights"), f"{path}.weights")
    _reject_unknown(weights_node, _WEIGHT_KEYS, f"{path}.weights")
    try:
        weights = WeightVector(**{k: _number(weights_node, k, f"{path}.weights")
                                  for k in _WEIGHT_KEYS})
    except ValueError as exc:
        raise ConfigError(f"{path}.weights: {exc}") from exc

    bounds = default_bounds()
    if "bounds" in node:
        bnode = _require_mapping(node["bounds"], f"{path}.bounds")
        _reject_unknown(bnode, ("lower", "upper"), f"{path}.bounds")
        try:
            bounds = DesignBounds(
                lower=_design_vector(bnode.get("lower"), f"{path}.bounds.lower"),
                upper=_design_vector(bnode.get("upper"), f"{path}.bounds.upper"))
        except ValueError as exc:
            raise ConfigError(f"{path}.bounds: {exc}") from exc

    constraints = ConstraintSet()
    if "constraints" in node:
        cnode = _require_mapping(node["constraints"], f"{path}.constraints")
        _reject_unknown(cnode, ("volume_min", "tolerance_ratio_min"),
                        f"{path}.constraints")
        try:
            constraints = ConstraintSet(
                volume_min=_number(cnode, "volume_min", f"{path}.constraints",
                                   ConstraintSet().volume_min),
                tolerance_ratio_min=_number(cnode, "tolerance_ratio_min",
                                            f"{path}.constraints",
                                            ConstraintSet().tolerance_ratio_min))
        except ValueError as exc:
            raise ConfigError(f"{path}.constraints: {exc}") from exc

    x_init = DEFAULT_X_INIT
    if "x_init" in node:
        x_init = _design_vector(node["x_init"], f"{path}.x_init")
    expected = None
    if "expected_x_star" in node:
        expected = _design_vector(node["expected_x_star"],
                                  f"{path}.expected_x_star")
    return Scenario(name="custom", weights=weights, bounds=bounds,
                    constraints=constraints, x_init=x_init,
                    expected_x_star=expected)


def load_config(path: str, need_problem: bool = True) -> RunConfig:
    """Parse and validate a configuration file into typed objects."""
    try:
        with open(path, encoding="utf-8") as handle:
            document = yaml.safe_load(handle)
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    except yaml.YAMLError as exc:
        raise ConfigError(f"cannot parse config {path}: {exc}") from exc
    if document is None:
        document = {}
    document = _require_mapping(document, "config")
    _reject_unknown(document, ("scenario", "problem", "coefficients",
                               "solver", "simulation", "output"), "")

    if "scenario" in document and "problem" in document:
        raise ConfigError("config sets both scenario and problem; choose one")
    if "scenario" in document:
        name = document["scenario"]
        if not isinstance(name, str):
            raise ConfigError(f"scenario: expected a name, got {name!r}")
        try:
            scenario = scenario_by_name(name)
        except KeyError as exc:
            raise ConfigError(f"scenario: {exc.args[0]}") from exc
    elif "problem" in document:
        scenario = _parse_problem(document["problem"], "problem")
    elif need_problem:
        raise ConfigError("config needs a scenario name or a problem section")
    else:
        scenario = scenario_by_name("general")

    coefficients = ObjectiveCoefficients()
    if "coefficients" in document:
        cnode = _require_mapping(document["coefficients"], "coefficients")
        _reject_unknown(cnode, _COEFF_KEYS, "coefficients")
        overrides = {k: _number(cnode, k, "coefficients") for k in cnode}
        try:
            coefficients = ObjectiveCoefficients(**{
                **ObjectiveCoefficients().as_dict(), **overrides})
        except ValueError as exc:
            raise ConfigError(f"coefficients: {exc}") from exc

    settings = SolverSettings()
    if "solver" in document:
        snode = _require_mapping(document["solver"], "solver")
        _reject_unknown(snode, _SOLVER_KEYS, "solver")
        defaults = SolverSettings()
        values = {}
        for key in _SOLVER_KEYS:
            values[key] = _number(snode, key, "solver",
                                  float(getattr(defaults, key)))
        for key in ("max_outer_iterations", "max_inner_iterations",
                    "multistart_count", "seed"):
            values[key] = int(values[key])
        try:
            settings = SolverSettings(**values)
        except ValueError as exc:
            raise ConfigError(f"solver: {exc}") from exc

    sigma_c = 0.1
    authority_weight = 1.0
    accuracy_weight = 1.0
    samples = 100_000
    sim_seed = settings.seed
    geometry = None
    if "simulation" in document:
        mnode = _require_mapping(document["simulation"], "simulation")
        _reject_unknown(mnode, _SIMULATION_KEYS, "simulation")
        sigma_c = _number(mnode, "sigma_c", "simulation", 0.1)
        authority_weight = _number(mnode, "authority_weight", "simulation", 1.0)
        accuracy_weight = _number(mnode, "accuracy_weight", "simulation", 1.0)
        samples = int(_number(mnode, "samples", "simulation", 100_000))
        sim_seed = int(_number(mnode, "seed", "simulation", settings.seed))
        if "geometry" in mnode:
            gnode = _require_mapping(mnode["geometry"], "simulation.geometry")
            _reject_unknown(gnode, _GEOMETRY_KEYS, "simulation.geometry")
            try:
                geometry = DockGeometry(**{k: _number(gnode, k,
                                                      "simulation.geometry")
                                           for k in _GEOMETRY_KEYS})
            except ValueError as exc:
                raise ConfigError(f"simulation.geometry: {exc}") from exc

    output_result = output_csv = None
    if "output" in document:
        onode = _require_mapping(document["output"], "output")
        _reject_unknown(onode, _OUTPUT_KEYS, "output")
        for key in _OUTPUT_KEYS:
            if key in onode and not isinstance(onode[key], str):
                raise ConfigError(f"output.{key}: expected a path string")
        output_result = onode.get("result")
        output_csv = onode.get("csv")

    env_seed = os.environ.get("DOCKOPT_SEED")
    if env_seed is not None:
        try:
            seed = int(env_seed)
        except ValueError as exc:
            raise ConfigError(f"DOCKOPT_SEED must be an integer, got "
                              f"{env_seed!r}") from exc
        settings = SolverSettings(**{**_settings_dict(settings), "seed": seed})
        sim_seed = seed

    return RunConfig(scenario=scenario, coefficients=coefficients,
                     settings=settings, sigma_c=sigma_c,
                     authority_weight=authority_weight,
                     accuracy_weight=accuracy_weight,
                     simulation_samples=samples, simulation_seed=sim_seed,
                     simulation_geometry=geometry,
                     output_result=output_result, output_csv=output_csv)


def _settings_dict(settings: SolverSettings) -> dict:
    return {key: getattr(settings, key) for key in _SOLVER_KEYS}


def _fmt(value: float) -> str:
    return f"{value:.9g}"


def _result_record(result: SolveResult, weights: WeightVector) -> dict:
    x = result.x_star
    return {
        "weights": weights.as_dict(),
        "x_star": dict(zip(_VECTOR_KEYS, x.as_tuple())),
        "objective": {"h": result.objective.h, "c": result.objective.c,
                      "d": result.objective.d, "v": result.objective.v,
                      "J": result.objective.J},
        "kkt_residual": result.kkt_residual,
        "constraint_values": {"volume": result.constraint_values[0],
                              "tolerance_ratio": result.constraint_values[1]},
        "active_set": list(result.active_set),
        "iterations": result.iterations,
        "status": result.status.value,
        "start_index": result.start_index,
        "basin_agreement": result.basin_agreement,
        "multimodal": result.multimodal,
    }


def _print_report(scenario: Scenario, result: SolveResult,
                  config: RunConfig) -> None:
    x = result.x_star
    print(f"scenario: {scenario.name}")
    print(f"status:   {result.status.value}  (KKT residual "
          f"{result.kkt_residual:.3e}, {result.iterations} inner iterations)")
    print("optimal design:")
    units = {"A": "m^2", "l": "m", "u": "", "e": "", "eta": ""}
    for key, value in zip(_VECTOR_KEYS, x.as_tuple()):
        print(f"  {key:3s} = {value:.6g} {units[key]}".rstrip())
    o = result.objective
    print(f"objectives: h={o.h:.6g} c={o.c:.6g} d={o.d:.6g} v={o.v:.6g}  "
          f"J={o.J:.6g}")
    g1, g2 = result.constraint_values
    print(f"constraints: A*l - volume_min = {g1:.6g} m^3, "
          f"eta/A - ratio_min = {g2:.6g} 1/m^2")
    print(f"active set: {', '.join(result.active_set) if result.active_set else '(none)'}")
    try:
        profile, geometry = realize_design(x, config.sigma_c,
                                           config.authority_weight,
                                           config.accuracy_weight)
        print(f"realized vehicle: {profile.dof_count} controlled DOF, "
              f"control error sigma = {profile.control_error_sigma:.6g} m")
        print(f"realized dock: azimuth span [{geometry.theta1:.6g}, "
              f"{geometry.theta2:.6g}] rad, polar span [{geometry.phi1:.6g}, "
              f"{geometry.phi2:.6g}] rad, clearance D = "
              f"{geometry.clearance:.6g} m")
    except InfeasibleRealizationError as exc:
        print(f"realization: not achievable ({exc})")


def _write_json(path: str, record: dict) -> None:
    with open(path, "w", encoding="utf-8") as handle:
        json.dump(record, handle, indent=2, sort_keys=True)
        handle.write("\n")


def cmd_solve(config_path: str, multistart: bool = False) -> int:
    """Run one optimization and report the optimal design."""
    config = load_config(config_path)
    scenario = config.scenario
    if multistart:
        result = multi_start_solve(scenario.weights, config.coefficients,
                                   scenario.bounds, scenario.constraints,
                                   config.settings)
    else:
        result = solve(scenario.weights, config.coefficients, scenario.bounds,
                       scenario.constraints, scenario.x_init, config.settings)
    _print_report(scenario, result, config)
    if config.output_result:
        record = _result_record(result, scenario.weights)
        record["scenario"] = scenario.name
        _write_json(config.output_result, record)
        print(f"result record written to {config.output_result}")
    return EXIT_OK if result.converged else EXIT_NOT_CONVERGED


def _parse_axis(spec: str) -> tuple[str, float, float, int]:
    try:
        component, _, rest = spec.partition("=")
        start_s, stop_s, steps_s = rest.split(":")
        start, stop, steps = float(start_s), float(stop_s), int(steps_s)
    except ValueError as exc:
        raise ConfigError(f"axis spec {spec!r} must look like "
                          "COMPONENT=START:STOP:STEPS") from exc
    if component not in _WEIGHT_KEYS:
        raise ConfigError(f"axis component must be one of {_WEIGHT_KEYS}, "
                          f"got {component!r}")
    if steps < 1:
        raise ConfigError(f"axis steps must be >= 1, got {steps}")
    return component, start, stop, steps


def _axis_values(start: float, stop: float, steps: int) -> list[float]:
    if steps == 1:
        return [start]
    return [start + (stop - start) * i / (steps - 1) for i in range(steps)]


def cmd_sweep(config_path: str, axis_specs: list[str]) -> int:
    """Sweep one or two weight components and emit a CSV trade-off table."""
    if not 1 <= len(axis_specs) <= 2:
        raise ConfigError("sweep needs one or two --axis specifications")
    config = load_config(config_path)
    scenario = config.scenario
    axes = [_parse_axis(spec) for spec in axis_specs]
    if len(axes) == 2 and axes[0][0] == axes[1][0]:
        raise ConfigError("sweep axes must use distinct weight components")

    grids = [_axis_values(start, stop, steps)
             for _, start, stop, steps in axes]
    points: list[dict[str, float]] = []
    if len(axes) == 1:
        points = [{axes[0][0]: v} for v in grids[0]]
    else:
        points = [{axes[0][0]: v0, axes[1][0]: v1}
                  for v0 in grids[0] for v1 in grids[1]]

    rows = []
    all_converged = True
    for overrides in points:
        weights = WeightVector(**{**scenario.weights.as_dict(), **overrides})
        result = multi_start_solve(weights, config.coefficients,
                                   scenario.bounds, scenario.constraints,
                                   config.settings)
        all_converged &= result.converged
        o = result.objective
        values = [weights.p, weights.q, weights.r, weights.s,
                  *result.x_star.as_tuple(), o.h, o.c, o.d, o.v, o.J]
        rows.append(",".join(_fmt(v) for v in values)
                    + f",{result.status.value}")

    csv_text = CSV_HEADER + "\n" + "\n".join(rows) + "\n"
    if config.output_csv:
        with open(config.output_csv, "w", encoding="utf-8", newline="\n") as f:
            f.write(csv_text)
        print(f"{len(rows)} rows written to {config.output_csv}")
    else:
        sys.stdout.write(csv_text)
    return EXIT_OK if all_converged else EXIT_NOT_CONVERGED


def cmd_calibrate(config_path: str, budget: int = 1500) -> int:
    """Fit surrogate coefficients to the scenario's expected optimum."""
    config = load_config(config_path)
    scenario = config.scenario
    if scenario.expected_x_star is None:
        raise ConfigError(f"scenario {scenario.name!r} carries no "
                          "expected_x_star to calibrate against")
    outcome = calibrate(scenario, config.coefficients, budget,
                        config.settings)
    print(f"calibrated {len(outcome.coefficients.as_dict())} coefficients "
          f"against scenario {scenario.name!r}")
    print(f"evaluations: {outcome.evaluations}  residual (L2^2): "
          f"{outcome.residual:.6g}")
    for key, value in outcome.coefficients.as_dict().items():
        print(f"  {key:6s} = {value:.9g}")
    print("solved optimum vs target:")
    target = scenario.expected_x_star
    for key, got, want in zip(_VECTOR_KEYS, outcome.x_star.as_tuple(),
                              target.as_tuple()):
        rel = abs(got - want) / abs(want) if want else math.inf
        print(f"  {key:3s} = {got:.6g}  target {want:.6g}  rel err {rel:.3f}")
    if config.output_result:
        record = {
            "scenario": scenario.name,
            "coefficients": outcome.coefficients.as_dict(),
            "residual": outcome.residual,
            "evaluations": outcome.evaluations,
            "x_star": dict(zip(_VECTOR_KEYS, outcome.x_star.as_tuple())),
            "target": dict(zip(_VECTOR_KEYS, target.as_tuple())),
        }
        _write_json(config.output_result, record)
        print(f"calibration record written to {config.output_result}")
    return EXIT_OK


def cmd_simulate(config_path: str) -> int:
    """Monte Carlo docking simulation for the configured geometry."""
    config = load_config(config_path, need_problem=False)
    if config.simulation_geometry is None:
        raise ConfigError("simulation.geometry is required for simulate")
    sim = SimulationConfig(geometry=config.simulation_geometry,
                           sigma_c=config.sigma_c,
                           samples=config.simulation_samples,
                           seed=config.simulation_seed)
    report = simulate_docking(sim)
    closed_form = rayleigh_success_probability(
        config.simulation_geometry.clearance, config.sigma_c)
    print(f"samples:          {report.samples}")
    print(f"success rate:     {report.success_rate:.6f} "
          f"+/- {report.ci_halfwidth_95:.6f} (95% CI)")
    print(f"closed form:      {closed_form:.6f} (Rayleigh CDF)")
    print(f"difference:       {abs(report.success_rate - closed_form):.6f}")
    if config.output_result:
        _write_json(config.output_result, {
            "samples": report.samples,
            "success_rate": report.success_rate,
            "ci_halfwidth_95": report.ci_halfwidth_95,
            "closed_form": closed_form,
        })
        print(f"simulation record written to {config.output_result}")
    return EXIT_OK


def cmd_check_gradients(config_path: str) -> int:
    """Compare analytic gradients against central finite differences."""
    config = load_config(config_path, need_problem=False)
    bounds = config.scenario.bounds
    lb = np.array(bounds.lower.as_tuple())
    ub = np.array(bounds.upper.as_tuple())
    rng = np.random.default_rng(config.settings.seed)

    worst = 0.0
    for _ in range(10):
        weights = WeightVector(*(rng.random(4) * 2.0))
        coeff = ObjectiveCoefficients(*(rng.random(11) * 2.0 + 0.05))
        for _ in range(100):
            x = lb + rng.random(5) * (ub - lb)
            analytic = gradient_at(*x, weights, coeff)
            fd = np.empty(5)
            for i in range(5):
                h = 1e-6 * (ub[i] - lb[i])
                plus, minus = x.copy(), x.copy()
                plus[i] += h
                minus[i] -= h
                fd[i] = (total_cost_arrays(*plus, weights, coeff)
                         - total_cost_arrays(*minus, weights, coeff)) / (2 * h)
            norm = np.linalg.norm(analytic)
            worst = max(worst, float(np.linalg.norm(fd - analytic)
                                     / max(norm, 1e-12)))
    print(f"checked 10 weight/coefficient sets x 100 points; worst relative "
          f"error {worst:.3e} (tolerance 1e-05)")
    return EXIT_OK if worst < 1e-5 else EXIT_NOT_CONVERGED


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(
        prog="dockopt",
        description="Co-design optimization for AUV docking systems")
    sub = parser.add_subparsers(dest="command", required=True)

    p_solve = sub.add_parser("solve", help="run one optimization")
    p_solve.add_argument("config")
    p_solve.add_argument("--multistart", action="store_true",
                         help="use Latin-hypercube multi-start instead of "
                              "the configured initial guess")

    p_sweep = sub.add_parser("sweep", help="weight sweep to CSV")
    p_sweep.add_argument("config")
    p_sweep.add_argument("--axis", action="append", required=True,
                         metavar="COMPONENT=START:STOP:STEPS",
                         help="weight axis to sweep; repeat for a 2-D grid")

    p_cal = sub.add_parser("calibrate", help="fit surrogate coefficients")
    p_cal.add_argument("config")
    p_cal.add_argument("--budget", type=int, default=1500,
                       help="objective-evaluation budget (default 1500)")

    p_sim = sub.add_parser("simulate", help="Monte Carlo docking simulation")
    p_sim.add_argument("config")

    p_grad = sub.add_parser("check-gradients",
                            help="finite-difference gradient audit")
    p_grad.add_argument("config")

    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse uses its own exit codes
        return EXIT_CONFIG if exc.code else EXIT_OK

    try:
        if args.command == "solve":
            return cmd_solve(args.config, multistart=args.multistart)
        if args.command == "sweep":
            return cmd_sweep(args.config, args.axis)
        if args.command == "calibrate":
            return cmd_calibrate(args.config, budget=args.budget)
        if args.command == "simulate":
            return cmd_simulate(args.config)
        if args.command == "check-gradients":
            return cmd_check_gradients(args.config)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    raise AssertionError(f"unhandled command {args.command}")


if __name__ == "__main__":
    sys.exit(main())
