"""Command-line surface: subcommand outputs, file formats, exit codes,
and byte-level determinism."""

from __future__ import annotations

import json
import math
import subprocess
import sys

import pytest

import dubins_escape as de
from dubins_escape.cli import main


def run(capsys, *argv: str) -> tuple[int, str]:
    code = main(list(argv))
    return code, capsys.readouterr().out


class TestSolveCommand:
    def test_turn_straight_json(self, capsys):
        code, out = run(
            capsys, "solve", "--r", "0.5", "--theta", "1.5707963267948966", "--R", "0.2"
        )
        assert code == 0
        payload = json.loads(out)
        assert payload["strategy"] == "turn-straight"
        assert payload["t_escape"] == pytest.approx(0.5853886, abs=1e-6)
        assert payload["phi"] == pytest.approx(0.2897517, abs=1e-6)
        assert payload["tangent"]["x"] == pytest.approx(0.6428571, abs=1e-6)
        assert payload["tangent"]["y"] == pytest.approx(0.1916630, abs=1e-6)
        assert payload["intercept"] is None
        assert payload["mirrored"] is False

    def test_round_trip_to_the_last_digit(self, capsys):
        _, out = run(capsys, "solve", "--r", "0.5", "--theta", "0.7", "--R", "0.3")
        payload = json.loads(out)
        decision = de.solve(de.ScaledState(0.5, 0.7), de.VehicleConfig(R=0.3))
        assert payload["t_escape"] == decision.t_escape
        assert payload["exit"]["x"] == decision.exit_point.x
        assert payload["exit"]["y"] == decision.exit_point.y

    def test_turn_only_includes_intercept(self, capsys):
        _, out = run(capsys, "solve", "--r", "0.9", "--theta", "0.3", "--R", "2.0")
        payload = json.loads(out)
        assert payload["strategy"] == "turn-only"
        ig = payload["intercept"]
        assert ig["arc_angle"] == pytest.approx(0.0517413257590873, abs=1e-12)
        assert ig["point"]["x"] == pytest.approx(0.999607627606678, abs=1e-12)

    def test_degrees_flag_converts_input(self, capsys):
        _, rad = run(capsys, "solve", "--r", "0.5", "--theta", str(math.pi / 2), "--R", "0.2")
        _, deg = run(capsys, "solve", "--r", "0.5", "--theta", "90", "--deg", "--R", "0.2")
        assert rad == deg

    def test_center_start_maps_to_exit_code_1(self, capsys):
        code, out = run(capsys, "solve", "--r", "0", "--theta", "0", "--R", "0.2")
        assert code == 1
        payload = json.loads(out)
        assert payload["error"] == "CenterStart"
        assert "message" in payload

    def test_outside_start_maps_to_exit_code_1(self, capsys):
        code, out = run(capsys, "solve", "--r", "1.5", "--theta", "0", "--R", "0.2")
        assert code == 1
        assert json.loads(out)["error"] == "StartOutside"

    def test_out_flag_writes_the_same_bytes(self, capsys, tmp_path):
        _, out = run(capsys, "solve", "--r", "0.4", "--theta", "0.2", "--R", "0.5")
        target = tmp_path / "decision.json"
        code = main(
            ["solve", "--r", "0.4", "--theta", "0.2", "--R", "0.5", "--out", str(target)]
        )
        capsys.readouterr()
        assert code == 0
        assert target.read_text() == out


class TestTrajectoryCommand:
    def test_csv_schema(self, capsys):
        code, out = run(
            capsys, "trajectory", "--r", "0.5", "--theta", "1.2", "--R", "0.2",
            "--dt-max", "0.05",
        )
        assert code == 0
        lines = out.strip().split("\n")
        assert lines[0] == "t,r,theta,x,y,u"
        rows = [[float(v) for v in line.split(",")] for line in lines[1:]]
        assert all(len(row) == 6 for row in rows)
        ts = [row[0] for row in rows]
        assert ts[0] == 0.0
        assert all(b > a for a, b in zip(ts, ts[1:]))
        assert max(b - a for a, b in zip(ts, ts[1:])) <= 0.05 + 1e-12
        assert rows[-1][1] == pytest.approx(1.0, abs=1e-8)

    def test_rows_match_library_samples_bitwise(self, capsys):
        _, out = run(capsys, "trajectory", "--r", "0.5", "--theta", "1.2", "--R", "0.2")
        traj = de.integrate(de.ScaledState(0.5, 1.2), de.VehicleConfig(R=0.2))
        lines = out.strip().split("\n")[1:]
        assert len(lines) == len(traj.samples)
        last = lines[-1].split(",")
        assert float(last[1]) == traj.samples[-1].r
        assert float(last[3]) == traj.samples[-1].x

    def test_inward_boundary_start_maps_to_exit_code_1(self, capsys):
        code, out = run(capsys, "trajectory", "--r", "1.0", "--theta", "2.0", "--R", "0.2")
        assert code == 1
        assert json.loads(out)["error"] == "OnBoundaryInward"


class TestMapCommand:
    def test_field_csv(self, capsys):
        code, out = run(capsys, "map", "--nr", "8", "--ntheta", "9", "--R", "0.2")
        assert code == 0
        lines = out.strip().split("\n")
        assert lines[0] == "theta,r,strategy,t_escape"
        assert len(lines) == 1 + 8 * 9
        first = lines[1].split(",")
        assert float(first[0]) == -math.pi  # theta outer, ascending
        assert float(first[1]) == 0.125
        codes = {int(line.split(",")[2]) for line in lines[1:]}
        assert codes <= {-1, 0, 1, 2}

    def test_sentinel_serializes_as_nan_text(self, capsys):
        _, out = run(capsys, "map", "--nr", "8", "--ntheta", "9", "--R", "0.2")
        sentinel_rows = [
            line for line in out.strip().split("\n")[1:] if line.split(",")[2] == "-1"
        ]
        assert sentinel_rows
        assert all(line.split(",")[3] == "nan" for line in sentinel_rows)

    def test_contours_csv(self, capsys):
        code, out = run(
            capsys, "map", "--nr", "32", "--ntheta", "33", "--R", "0.2",
            "--contours", "0.3,0.6",
        )
        assert code == 0
        lines = out.strip().split("\n")
        assert lines[0] == "curve_id,theta,r"
        ids = {line.split(",")[0] for line in lines[1:]}
        assert "boundary" in ids
        assert any(i.startswith("level-0.3-") for i in ids)
        assert any(i.startswith("level-0.6-") for i in ids)

    def test_pgm_output(self, capsys, tmp_path):
        target = tmp_path / "field.pgm"
        code = main(
            ["map", "--nr", "8", "--ntheta", "9", "--R", "0.2", "--pgm", "--out", str(target)]
        )
        capsys.readouterr()
        assert code == 0
        blob = target.read_bytes()
        header, data = blob.split(b"\n3\n", 1)
        assert header == b"P5\n8 9"
        assert len(data) == 8 * 9
        assert set(data) <= {0, 1, 2, 3}
        grid = de.raster(8, 9, R=0.2)
        assert data[0] == grid.strategy[0, 0]  # row-major, theta outer

    def test_mutually_exclusive_modes_are_a_usage_error(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["map", "--nr", "8", "--ntheta", "9", "--R", "0.2",
                  "--pgm", "--contours", "0.3"])
        assert exc.value.code == 2
        capsys.readouterr()

    def test_malformed_contour_list_is_a_usage_error(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["map", "--nr", "8", "--ntheta", "9", "--R", "0.2",
                  "--contours", "0.3,potato"])
        assert exc.value.code == 2
        capsys.readouterr()


class TestCharacteristicsCommand:
    def test_csv_schema_and_seed_row(self, capsys):
        code, out = run(
            capsys, "characteristics", "--theta-f", "0.8", "--tau-max", "2.0", "--R", "0.2"
        )
        assert code == 0
        lines = out.strip().split("\n")
        assert lines[0] == "tau,r,theta,lambda_r,lambda_theta,u,h_residual"
        seed = [float(v) for v in lines[1].split(",")]
        assert seed[0] == 0.0 and seed[1] == 1.0 and seed[2] == 0.8
        assert seed[4] == 0.0

    def test_seed_out_of_range_maps_to_exit_code_1(self, capsys):
        code, out = run(
            capsys, "characteristics", "--theta-f", "1.6", "--tau-max", "1.0", "--R", "0.2"
        )
        assert code == 1
        assert json.loads(out)["error"] == "SeedOutOfRange"

    def test_degrees_flag(self, capsys):
        _, by_rad = run(
            capsys, "characteristics", "--theta-f", str(math.pi / 4), "--tau-max",
            "1.0", "--R", "0.2",
        )
        _, by_deg = run(
            capsys, "characteristics", "--theta-f", "45", "--deg", "--tau-max",
            "1.0", "--R", "0.2",
        )
        assert by_rad == by_deg


class TestVerifyCommand:
    def test_summary_and_exit_code_0(self, capsys):
        code, out = run(capsys, "verify", "--count", "10", "--seed", "42")
        assert code == 0
        summary = json.loads(out)
        assert summary["passed"] == 10
        assert summary["failed"] == 0
        assert summary["max_violation"] <= de.grid_bound(3.0, 2000)

    def test_any_failure_exits_3(self, capsys):
        code, out = run(
            capsys, "verify", "--count", "3", "--seed", "1", "--tol", "1e-2"
        )
        assert code == 3
        summary = json.loads(out)
        assert summary["failed"] >= 1

    def test_full_report_schema(self, capsys, tmp_path):
        target = tmp_path / "report.json"
        code = main(
            ["verify", "--count", "4", "--seed", "9", "--out", str(target)]
        )
        capsys.readouterr()
        assert code == 0
        records = json.loads(target.read_text())
        assert len(records) == 4
        for record in records:
            assert set(record) == {
                "r", "theta", "R", "closed", "integrated", "best_candidate", "pass"
            }
            assert set(record["best_candidate"]) == {"family", "parameter", "time"}
            assert record["pass"] is True

    def test_custom_ranges_are_honored(self, capsys):
        code, out = run(
            capsys, "verify", "--count", "5", "--seed", "3",
            "--r-min", "0.5", "--r-max", "0.5",
            "--theta-min", "0.3", "--theta-max", "0.3",
            "--R-min", "0.2", "--R-max", "0.2",
        )
        assert code == 0
        assert json.loads(out)["passed"] == 5


class TestUsageAndDeterminism:
    def test_missing_required_flag_exits_2(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["solve", "--r", "0.5", "--theta", "0.3"])
        assert exc.value.code == 2
        capsys.readouterr()

    def test_unknown_flag_exits_2(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["solve", "--r", "0.5", "--theta", "0.3", "--R", "0.2", "--frob"])
        assert exc.value.code == 2
        capsys.readouterr()

    def test_missing_subcommand_exits_2(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main([])
        assert exc.value.code == 2
        capsys.readouterr()

    def test_identical_argv_is_byte_identical(self, capsys):
        argv = ["verify", "--count", "8", "--seed", "5"]
        _, first = run(capsys, *argv)
        _, second = run(capsys, *argv)
        assert first == second
        argv = ["map", "--nr", "16", "--ntheta", "17", "--R", "0.3"]
        _, first = run(capsys, *argv)
        _, second = run(capsys, *argv)
        assert first == second

    def test_installed_entry_point(self):
        result = subprocess.run(
            [sys.executable, "-m", "dubins_escape.cli", "solve", "--r", "0.5",
             "--theta", "0.3", "--R", "0.2"],
            capture_output=True, text=True,
        )
        assert result.returncode == 0
        assert json.loads(result.stdout)["strategy"] == "turn-straight"

    def test_physical_mode_scales_outputs(self, capsys):
        _, scaled_out = run(capsys, "solve", "--r", "0.5", "--theta", "0.7", "--R", "0.2")
        _, physical_out = run(
            capsys, "solve", "--r", "1.0", "--theta", "0.7", "--R", "0.4",
            "--rho", "2.0", "--ve", "0.5",
        )
        t_scaled = json.loads(scaled_out)["t_escape"]
        t_physical = json.loads(physical_out)["t_escape"]
        assert t_physical == pytest.approx(4.0 * t_scaled, rel=1e-12)
