"""Serialization round trips and command-line behavior."""

import json

import numpy as np
import pytest
from click.testing import CliRunner

from weylnet import io
from weylnet.cat import cat_state
from weylnet.cli import main
from weylnet.cluster import NetworkState
from weylnet.errors import InputError


@pytest.fixture
def runner():
    return CliRunner()


@pytest.fixture
def bell_file(tmp_path):
    st = NetworkState.from_pure(cat_state(2, (0, 0)), (2, 2))
    path = tmp_path / "bell.json"
    path.write_text(io.state_to_json(st))
    return str(path)


@pytest.fixture
def ghz_file(tmp_path):
    st = NetworkState.from_pure(cat_state(2, (0, 0, 0)), (2, 2, 2))
    path = tmp_path / "ghz.json"
    path.write_text(io.state_to_json(st))
    return str(path)


class TestSerialization:
    def test_operator_round_trip_bit_exact(self):
        rng = np.random.default_rng(0)
        m = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
        again = io.operator_from_json(io.operator_to_json(m))
        assert np.array_equal(m, again)

    def test_state_round_trip(self):
        st = NetworkState.from_pure(cat_state(2, (0, 0)), (2, 2))
        again = io.state_from_json(io.state_to_json(st))
        assert again.dims == (2, 2)
        assert np.array_equal(again.rho, st.rho)

    def test_schema_fields(self):
        data = json.loads(io.operator_to_json(np.eye(2)))
        assert data["dim"] == 2
        assert data["entries"][0][0] == {"re": 1.0, "im": 0.0}

    def test_malformed_inputs(self):
        with pytest.raises(InputError):
            io.operator_from_json("not json")
        with pytest.raises(InputError):
            io.operator_from_json('{"dim": 2, "entries": [[{"re": 1}]]}')
        with pytest.raises(InputError):
            io.state_from_json(io.operator_to_json(np.eye(2)))  # no dims


class TestCliCommands:
    def test_basis_matches_tabulated_n3(self, runner):
        result = runner.invoke(main, ["basis", "3"])
        assert result.exit_code == 0
        out = result.output
        assert "U_01 =" in out
        assert "[   1,    0,    0]" in out
        # phase-gradient member shows symbolic powers of w
        assert "w^2" in out

    def test_basis_range_error(self, runner):
        assert runner.invoke(main, ["basis", "20"]).exit_code == 2

    def test_gray(self, runner):
        result = runner.invoke(main, ["gray", "--nodes", "3"])
        assert result.exit_code == 0
        assert result.output.split() == [
            "000", "001", "011", "010", "110", "111", "101", "100"]

    def test_fig_purity_values(self, runner):
        result = runner.invoke(main, ["fig-purity", "--n-range", "2:2", "--m-range", "1:2"])
        assert result.exit_code == 0
        lines = result.output.strip().split("\n")
        assert lines[0] == "n,m,p_m"
        assert lines[1] == "2,1,0.0"
        assert lines[2].startswith("2,2,0.333333333")

    def test_fig_purity_bad_range(self, runner):
        assert runner.invoke(main, ["fig-purity", "--n-range", "5:2"]).exit_code == 2

    def test_cat_profile(self, runner):
        result = runner.invoke(main, ["cat", "--dim", "2", "--nodes", "3", "--verify"])
        assert result.exit_code == 0
        assert result.output.strip().split("\n")[-1].startswith("3,4.0,1.0")

    def test_table_csum_small(self, runner):
        result = runner.invoke(main, ["table-csum", "--n", "2", "--n-max", "3"])
        assert result.exit_code == 0
        lines = result.output.strip().split("\n")
        assert lines[0] == "n,N,A,B,C,C_tag,D,Cat"
        assert lines[1] == "2,1,1,1,1,exact,1,1"
        assert lines[2] == "2,2,1,3,3,exact,3,3"
        assert lines[3] == "2,3,1,3,4,exact,7,4"

    def test_echo_random_diagonal(self, runner):
        result = runner.invoke(main, ["echo", "--dim", "4", "--dt", "2.2"])
        assert result.exit_code == 0

    def test_echo_from_file(self, runner, tmp_path):
        path = tmp_path / "h.json"
        path.write_text(io.operator_to_json(np.diag([2.0, -1.0, -1.0])))
        result = runner.invoke(main, ["echo", "--hamiltonian", str(path), "--dt", "1.7"])
        assert result.exit_code == 0

    def test_echo_rejects_traceful(self, runner, tmp_path):
        path = tmp_path / "h.json"
        path.write_text(io.operator_to_json(np.diag([1.0, 0.0])))
        result = runner.invoke(main, ["echo", "--hamiltonian", str(path)])
        assert result.exit_code == 2

    def test_control_cat_creation(self, runner):
        result = runner.invoke(main, ["control", "--nodes", "4", "--m", "2", "--alpha-t", "pi/4"])
        assert result.exit_code == 0
        assert "1.0" in result.output.split("\n")[1]

    def test_invariants_all_models(self, runner):
        for model in ("foerster", "renormalization", "stimulation"):
            result = runner.invoke(main, ["invariants", "--model", model])
            assert result.exit_code == 0, result.output

    def test_invariants_bad_params(self, runner):
        result = runner.invoke(main, ["invariants", "--model", "foerster", "--params", "1.0"])
        assert result.exit_code == 2

    def test_symmetry_counts(self, runner):
        result = runner.invoke(main, ["symmetry", "--nodes", "4"])
        assert result.exit_code == 0
        assert result.output.strip().split("\n")[-1] == "total,16,,35"

    def test_symmetry_golden_dump(self, runner):
        result = runner.invoke(main, ["symmetry", "--nodes", "4", "--golden-json"])
        assert result.exit_code == 0
        data = json.loads(result.output)
        assert len(data) == 16
        assert data[0]["config"] == "1111"

    def test_collective_decompose(self, runner, bell_file):
        result = runner.invoke(main, ["collective-decompose", bell_file])
        assert result.exit_code == 0
        rows = {tuple(line.split(",")[:4]): line for line in result.output.strip().split("\n")[1:]}
        assert rows[("2", "0", "0", "0")].split(",")[4].startswith("0.99999")

    def test_analyze_bell(self, runner, bell_file):
        result = runner.invoke(main, ["analyze", bell_file])
        assert result.exit_code == 0
        report = json.loads(result.output)
        table = {tuple(r["subset"]): r["Y"] for r in report["cluster_sums"]}
        assert abs(table[()] - 1.0) < 1e-10
        assert abs(table[(1,)]) < 1e-10
        assert abs(table[(2,)]) < 1e-10
        assert abs(table[(1, 2)] - 3.0) < 1e-10
        # the aligned pair state lives entirely in the symmetric class
        assert abs(report["symmetry_weights"]["1.0"] - 1.0) < 1e-10
        assert abs(report["symmetry_weights"]["0.0"]) < 1e-10

    def test_analyze_ghz_purity_profile(self, runner, ghz_file):
        result = runner.invoke(main, ["analyze", ghz_file, "--format", "csv"])
        assert result.exit_code == 0
        values = {}
        for line in result.output.strip().split("\n")[1:]:
            kind, subset, value = line.split(",")
            values[(kind, subset)] = float(value)
        assert abs(values[("p", "1")]) < 1e-10
        assert abs(values[("p", "1|2")] - 1 / 3) < 1e-10
        assert abs(values[("p", "1|2|3")] - 1.0) < 1e-10

    def test_analyze_malformed_file(self, runner, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text("{]")
        assert runner.invoke(main, ["analyze", str(path)]).exit_code == 2

    def test_cap_exit_code(self, runner, tmp_path):
        st = NetworkState.from_pure(cat_state(2, (0,) * 8), (2,) * 8)
        path = tmp_path / "big.json"
        path.write_text(io.state_to_json(st))
        result = runner.invoke(main, ["table-csum", "--n", "3", "--n-max", "4",
                                      "--vertex-cap", "100", "--budget", "10"])
        # cap exhaustion inside a table row downgrades, never aborts
        assert result.exit_code == 0
        rows = result.output.strip().split("\n")
        assert rows[-1].split(",")[5] == "heuristic"

    def test_analyze_ground_state_class_weight(self, runner, tmp_path):
        v = np.zeros(16, dtype=complex)
        v[0] = 1.0
        st = NetworkState.from_pure(v, (2, 2, 2, 2))
        path = tmp_path / "ground.json"
        path.write_text(io.state_to_json(st))
        result = runner.invoke(main, ["analyze", str(path)])
        assert result.exit_code == 0
        weights = json.loads(result.output)["symmetry_weights"]
        assert abs(weights["2.0"] - 1.0) < 1e-10

    def test_echo_schedule_and_trajectory_files(self, runner, tmp_path):
        sched_path = tmp_path / "schedule.json"
        traj_path = tmp_path / "trajectory.csv"
        result = runner.invoke(main, [
            "echo", "--dim", "3", "--dt", "1.5",
            "--schedule-out", str(sched_path),
            "--trajectory-out", str(traj_path), "--initial-basis", "1"])
        assert result.exit_code == 0
        # the emitted schedule replays to the identity
        replay = runner.invoke(main, ["echo", "--schedule", str(sched_path)])
        assert replay.exit_code == 0
        assert float(replay.output.strip().split("\n")[1].split(",")[-1]) < 1e-10
        lines = traj_path.read_text().strip().split("\n")
        assert lines[0] == "t," + ",".join(f"re_{k},im_{k}" for k in range(3))
        first = [float(x) for x in lines[1].split(",")]
        last = [float(x) for x in lines[-1].split(",")]
        assert first[0] == 0.0 and abs(last[0] - 1.5) < 1e-12
        # initial basis state |1> returns to itself after the full echo
        assert abs(first[3] - 1.0) < 1e-12
        assert abs(last[3] - 1.0) < 1e-10

    def test_schedule_json_round_trip(self, tmp_path):
        from weylnet.protocols import PulseSchedule, Segment

        h = np.diag([1.0, -1.0]).astype(complex)
        sched = PulseSchedule([Segment("hamiltonian", h, 0.5),
                               Segment("gate", np.array([[0, 1], [1, 0]], dtype=complex))])
        again = io.schedule_from_json(io.schedule_to_json(sched))
        assert len(again.segments) == 2
        assert again.segments[0].kind == "hamiltonian"
        assert again.segments[0].duration == 0.5
        assert np.array_equal(again.segments[1].operator, sched.segments[1].operator)

    def test_control_trajectory(self, runner, tmp_path):
        traj_path = tmp_path / "pulse.csv"
        result = runner.invoke(main, [
            "control", "--nodes", "2", "--m", "2", "--alpha-t", "pi/4",
            "--trajectory-out", str(traj_path), "--steps", "8"])
        assert result.exit_code == 0
        lines = traj_path.read_text().strip().split("\n")
        assert len(lines) == 10  # header + 9 samples
        final = [float(x) for x in lines[-1].split(",")]
        # ends in the two-branch superposition: |amp|^2 = 1/2 on |00> and |11>
        assert abs(final[1] ** 2 + final[2] ** 2 - 0.5) < 1e-10
        assert abs(final[7] ** 2 + final[8] ** 2 - 0.5) < 1e-10

    def test_deterministic_output(self, runner):
        a = runner.invoke(main, ["--seed", "0", "echo", "--dim", "5", "--dt", "1.0"]).output
        b = runner.invoke(main, ["--seed", "0", "echo", "--dim", "5", "--dt", "1.0"]).output
        assert a == b

    def test_config_file_defaults(self, runner, tmp_path):
        cfg = tmp_path / "run.cfg"
        cfg.write_text("n_max=2\n")
        result = runner.invoke(main, ["--config", str(cfg), "table-csum", "--n", "2"])
        assert result.exit_code == 0
        assert len(result.output.strip().split("\n")) == 3  # header + N=1,2

    def test_flags_beat_config(self, runner, tmp_path):
        cfg = tmp_path / "run.cfg"
        cfg.write_text("n_max=2\n")
        result = runner.invoke(main, ["--config", str(cfg), "table-csum", "--n", "2", "--n-max", "3"])
        assert len(result.output.strip().split("\n")) == 4
