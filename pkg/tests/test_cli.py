"""Command-line interface: configs, reports, CSV contract, exit codes."""

import json
import math

import pytest
import yaml

from dockopt import SolverSettings, multi_start_solve
from dockopt.cli import CSV_HEADER, main
from dockopt.scenarios import scenario_by_name

FAST_SOLVER = {"multistart_count": 4, "seed": 0}


def write_config(tmp_path, name="config.yaml", **document):
    path = tmp_path / name
    path.write_text(yaml.safe_dump(document), encoding="utf-8")
    return str(path)


class TestSolveCommand:
    def test_general_scenario_report(self, tmp_path, capsys):
        cfg = write_config(tmp_path, scenario="general",
                           solver=FAST_SOLVER,
                           output={"result": str(tmp_path / "result.json")})
        code = main(["solve", cfg])
        out = capsys.readouterr().out
        assert code == 0
        assert "Converged" in out
        assert "realized vehicle" in out
        record = json.loads((tmp_path / "result.json").read_text())
        assert record["status"] == "Converged"
        # all-ones coefficients put the optimum at A=1/3, l=1, u->1
        assert record["x_star"]["A"] == pytest.approx(1 / 3, abs=1e-3)
        assert record["x_star"]["l"] == pytest.approx(1.0, abs=1e-3)
        assert record["kkt_residual"] <= 1e-8

    def test_negative_weight_names_field(self, tmp_path, capsys):
        cfg = write_config(tmp_path,
                           problem={"weights": {"p": 1, "q": -0.5,
                                                "r": 1, "s": 1}})
        code = main(["solve", cfg])
        err = capsys.readouterr().err
        assert code == 1
        assert "problem.weights" in err and "q" in err

    def test_unknown_key_rejected_with_path(self, tmp_path, capsys):
        cfg = write_config(tmp_path, scenario="general",
                           solver={"bogus_knob": 3})
        assert main(["solve", cfg]) == 1
        assert "solver.bogus_knob" in capsys.readouterr().err

    def test_missing_file(self, tmp_path, capsys):
        assert main(["solve", str(tmp_path / "nope.yaml")]) == 1

    def test_non_converged_settings_exit_two(self, tmp_path, capsys):
        cfg = write_config(tmp_path, scenario="general",
                           solver={"max_outer_iterations": 1, "seed": 0})
        code = main(["solve", cfg])
        out = capsys.readouterr().out
        assert code == 2
        assert "IterationLimit" in out
        assert "optimal design" in out  # best iterate still reported

    def test_inline_problem(self, tmp_path, capsys):
        cfg = write_config(
            tmp_path,
            problem={"weights": {"p": 1, "q": 1, "r": 1, "s": 1},
                     "x_init": {"A": 0.03, "l": 1.5, "u": 0.5,
                                "e": 0.5, "eta": 0.5}},
            solver=FAST_SOLVER)
        assert main(["solve", cfg]) == 0

    def test_scenario_and_problem_conflict(self, tmp_path, capsys):
        cfg = write_config(tmp_path, scenario="general",
                           problem={"weights": {"p": 1, "q": 1,
                                                "r": 1, "s": 1}})
        assert main(["solve", cfg]) == 1


class TestSweepCommand:
    def run_sweep(self, tmp_path, capsys, axes, steps="q=1:2:5"):
        csv_path = tmp_path / "sweep.csv"
        cfg = write_config(tmp_path, scenario="general", solver=FAST_SOLVER,
                           output={"csv": str(csv_path)})
        code = main(["sweep", cfg] + axes)
        capsys.readouterr()
        return code, csv_path

    def test_csv_contract(self, tmp_path, capsys):
        code, csv_path = self.run_sweep(tmp_path, capsys, ["--axis", "q=1:2:5"])
        assert code == 0
        data = csv_path.read_bytes()
        assert b"\r" not in data  # LF endings only
        lines = data.decode().splitlines()
        assert lines[0] == CSV_HEADER
        assert len(lines) == 6
        assert lines[-1].startswith("1,2,1,1,")

    def test_endpoint_matches_low_cost_scenario(self, tmp_path, capsys):
        _, csv_path = self.run_sweep(tmp_path, capsys, ["--axis", "q=1:2:5"])
        last = csv_path.read_text().splitlines()[-1].split(",")
        scenario = scenario_by_name("low-cost")
        reference = multi_start_solve(scenario.weights,
                                      scenario_coeff(), scenario.bounds,
                                      scenario.constraints,
                                      SolverSettings(**FAST_SOLVER))
        for got, want in zip(last[4:9], reference.x_star.as_tuple()):
            assert float(got) == pytest.approx(want, abs=1e-8)

    def test_monotone_fidelity_under_cost_pressure(self, tmp_path, capsys):
        _, csv_path = self.run_sweep(tmp_path, capsys, ["--axis", "q=1:2:5"])
        rows = [line.split(",") for line in
                csv_path.read_text().splitlines()[1:]]
        fidelity = [float(r[6]) for r in rows]
        assert all(a >= b - 1e-9 for a, b in zip(fidelity, fidelity[1:]))

    def test_single_point_sweep_matches_solve(self, tmp_path, capsys):
        code, csv_path = self.run_sweep(tmp_path, capsys,
                                        ["--axis", "q=1:1:1"])
        assert code == 0
        row = csv_path.read_text().splitlines()[1].split(",")
        cfg = write_config(tmp_path, name="solve.yaml", scenario="general",
                           solver=FAST_SOLVER,
                           output={"result": str(tmp_path / "r.json")})
        assert main(["solve", cfg]) == 0
        capsys.readouterr()
        record = json.loads((tmp_path / "r.json").read_text())
        for got, key in zip(row[4:9], ("A", "l", "u", "e", "eta")):
            assert float(got) == pytest.approx(record["x_star"][key], abs=1e-6)

    def test_two_axis_grid(self, tmp_path, capsys):
        code, csv_path = self.run_sweep(
            tmp_path, capsys, ["--axis", "q=1:2:2", "--axis", "r=1:1.2:2"])
        assert code == 0
        lines = csv_path.read_text().splitlines()
        assert len(lines) == 5  # header + 2x2 grid
        weights = [tuple(line.split(",")[:4]) for line in lines[1:]]
        assert weights == [("1", "1", "1", "1"), ("1", "1", "1.2", "1"),
                           ("1", "2", "1", "1"), ("1", "2", "1.2", "1")]

    def test_deterministic_byte_identical(self, tmp_path, capsys):
        _, first = self.run_sweep(tmp_path, capsys, ["--axis", "q=1:2:3"])
        first_bytes = first.read_bytes()
        _, second = self.run_sweep(tmp_path, capsys, ["--axis", "q=1:2:3"])
        assert first_bytes == second.read_bytes()

    def test_axis_validation(self, tmp_path, capsys):
        cfg = write_config(tmp_path, scenario="general")
        assert main(["sweep", cfg, "--axis", "z=1:2:5"]) == 1
        assert main(["sweep", cfg, "--axis", "q=1:2"]) == 1
        assert main(["sweep", cfg, "--axis", "q=1:2:3",
                     "--axis", "q=1:2:3"]) == 1
        capsys.readouterr()

    def test_env_seed_overrides_config(self, tmp_path, capsys, monkeypatch):
        csv_a = tmp_path / "a.csv"
        cfg_a = write_config(tmp_path, name="a.yaml", scenario="general",
                             solver={"multistart_count": 4, "seed": 5},
                             output={"csv": str(csv_a)})
        monkeypatch.setenv("DOCKOPT_SEED", "0")
        assert main(["sweep", cfg_a, "--axis", "q=1:2:2"]) == 0
        monkeypatch.delenv("DOCKOPT_SEED")
        csv_b = tmp_path / "b.csv"
        cfg_b = write_config(tmp_path, name="b.yaml", scenario="general",
                             solver=FAST_SOLVER, output={"csv": str(csv_b)})
        assert main(["sweep", cfg_b, "--axis", "q=1:2:2"]) == 0
        capsys.readouterr()
        assert csv_a.read_bytes() == csv_b.read_bytes()

    def test_bad_env_seed(self, tmp_path, capsys, monkeypatch):
        cfg = write_config(tmp_path, scenario="general")
        monkeypatch.setenv("DOCKOPT_SEED", "not-a-number")
        assert main(["solve", cfg]) == 1
        assert "DOCKOPT_SEED" in capsys.readouterr().err


class TestSimulateCommand:
    def test_two_sigma_report(self, tmp_path, capsys):
        cfg = write_config(
            tmp_path,
            simulation={"samples": 100_000, "seed": 3, "sigma_c": 0.1,
                        "geometry": {"theta1": 0.0, "theta2": 2 * math.pi,
                                     "phi1": 0.0, "phi2": math.pi / 2,
                                     "clearance": 0.2}},
            output={"result": str(tmp_path / "sim.json")})
        assert main(["simulate", cfg]) == 0
        out = capsys.readouterr().out
        assert "0.8646" in out  # Rayleigh closed form 1 - exp(-2)
        record = json.loads((tmp_path / "sim.json").read_text())
        expected = 1 - math.exp(-2.0)
        assert record["closed_form"] == pytest.approx(expected, abs=1e-9)
        assert abs(record["success_rate"] - expected) \
            < 3 * record["ci_halfwidth_95"]

    def test_geometry_required(self, tmp_path, capsys):
        cfg = write_config(tmp_path, simulation={"samples": 1000})
        assert main(["simulate", cfg]) == 1
        assert "geometry" in capsys.readouterr().err


class TestCheckGradientsCommand:
    def test_defaults_pass(self, tmp_path, capsys):
        cfg = write_config(tmp_path, scenario="general")
        assert main(["check-gradients", cfg]) == 0
        assert "worst relative error" in capsys.readouterr().out


class TestCalibrateCommand:
    def test_self_consistent_target_has_tiny_residual(self, tmp_path, capsys):
        # target the optimum the default coefficients already produce
        scenario = scenario_by_name("general")
        settings = SolverSettings(multistart_count=2, seed=0)
        result = multi_start_solve(scenario.weights, scenario_coeff(),
                                   scenario.bounds, scenario.constraints,
                                   settings)
        x = result.x_star
        cfg = write_config(
            tmp_path,
            problem={"weights": {"p": 1, "q": 1, "r": 1, "s": 1},
                     "expected_x_star": {"A": x.A, "l": x.l, "u": x.u,
                                         "e": x.e, "eta": x.eta}},
            solver={"multistart_count": 2, "seed": 0},
            output={"result": str(tmp_path / "cal.json")})
        assert main(["calibrate", cfg, "--budget", "20"]) == 0
        capsys.readouterr()
        record = json.loads((tmp_path / "cal.json").read_text())
        assert record["residual"] < 1e-8
        for name in ("kl", "ke", "k_eta", "ae", "a_eta", "bl", "bu"):
            assert record["coefficients"][name] == pytest.approx(1.0, abs=0.2)

    def test_scenario_without_target_rejected(self, tmp_path, capsys):
        cfg = write_config(
            tmp_path,
            problem={"weights": {"p": 1, "q": 1, "r": 1, "s": 1}})
        assert main(["calibrate", cfg, "--budget", "5"]) == 1
        assert "expected_x_star" in capsys.readouterr().err


def scenario_coeff():
    from dockopt import ObjectiveCoefficients
    return ObjectiveCoefficients()


def test_command_required(capsys):
    assert main([]) == 1
    capsys.readouterr()
