import json

import numpy as np
import pytest

from drivenqubits import negativity, steady_state, SystemParams
from drivenqubits.cli import main


def write_config(tmp_path, name, doc):
    path = tmp_path / name
    path.write_text(json.dumps(doc))
    return str(path)


def base_system(**overrides):
    system = {"n_qubits": 2, "omega": 1.0, "delta": 0.0, "coupling_j": 1.5,
              "gamma": 0.8, "nbar": 0.0}
    system.update(overrides)
    return system


def read_csv(path):
    lines = path.read_text().strip().splitlines()
    header = lines[0].split(",")
    rows = [line.split(",") for line in lines[1:]]
    return header, rows


def test_evolve_converges_to_steady_negativity(tmp_path):
    cfg = write_config(tmp_path, "run.json", {
        "system": base_system(),
        "initial": {"theta": 0.0},
        "run": {"t_end": 60.0, "sample_count": 61},
    })
    out = tmp_path / "traj.csv"
    assert main(["evolve", "--config", cfg, "--output", str(out)]) == 0
    header, rows = read_csv(out)
    assert header[:2] == ["t[1/Omega]", "negativity"]
    p = SystemParams(2, 1.0, 0.0, 1.5, 0.8, 0.0)
    e_ss = negativity(steady_state(p).rho_ss)
    assert abs(float(rows[-1][1]) - e_ss) < 1e-5


def test_evolve_decoupled_bell_constant(tmp_path):
    cfg = write_config(tmp_path, "run.json", {
        "system": base_system(omega=0.0, gamma=0.0),
        "initial": {"theta": np.pi / 4},
        "run": {"t_end": 5.0, "sample_count": 11},
    })
    out = tmp_path / "traj.csv"
    assert main(["evolve", "--config", cfg, "--output", str(out)]) == 0
    _, rows = read_csv(out)
    assert all(abs(float(r[1]) - 0.5) < 1e-7 for r in rows)


def test_malformed_config_exits_2_without_output(tmp_path):
    cfg = write_config(tmp_path, "bad.json", {"system": base_system(gamma=-1.0)})
    out = tmp_path / "nope.csv"
    assert main(["evolve", "--config", cfg, "--output", str(out)]) == 2
    assert not out.exists()


def test_unknown_key_is_fatal(tmp_path):
    cfg = write_config(tmp_path, "bad.json", {"system": base_system(), "typo": 1})
    assert main(["steady", "--config", cfg]) == 2


def test_initial_matrix_roundtrip(tmp_path):
    flat = []
    m = np.diag([0.25, 0.25, 0.25, 0.25])
    for v in m.reshape(-1):
        flat += [float(v), 0.0]
    cfg = write_config(tmp_path, "run.json", {
        "system": base_system(),
        "initial": {"matrix": flat},
        "run": {"t_end": 1.0, "sample_count": 3},
    })
    assert main(["evolve", "--config", cfg, "--output", str(tmp_path / "t.csv")]) == 0


def test_steady_undriven_reports_ground_state(tmp_path):
    cfg = write_config(tmp_path, "run.json", {"system": base_system(omega=0.0)})
    out = tmp_path / "ss.json"
    assert main(["steady", "--config", cfg, "--output", str(out), "--format", "json"]) == 0
    doc = json.loads(out.read_text())
    entries = {(r[0], r[1]): complex(r[2], r[3]) for r in doc["rows"]}
    assert abs(entries[(4, 4)] - 1.0) < 1e-10
    assert doc["residual"] < 1e-9
    assert doc["uniqueness_gap"] > 1e-8


def test_steady_near_threshold_warns(tmp_path):
    cfg = write_config(tmp_path, "run.json", {"system": base_system(gamma=1 / 3)})
    out = tmp_path / "ss.json"
    assert main(["steady", "--config", cfg, "--output", str(out), "--format", "json"]) == 0
    doc = json.loads(out.read_text())
    assert "warning" in doc


def test_steady_degenerate_exits_4(tmp_path):
    cfg = write_config(tmp_path, "run.json", {"system": base_system(omega=0.0, gamma=0.0)})
    assert main(["steady", "--config", cfg]) == 4


def test_sweep_first_positive_point_just_above_threshold(tmp_path):
    grid = list(np.round(np.linspace(0.05, 3.0, 60), 10))
    cfg = write_config(tmp_path, "run.json", {
        "system": base_system(),
        "run": {"parameter": "gamma", "grid": grid},
    })
    out = tmp_path / "sweep.csv"
    assert main(["sweep", "--config", cfg, "--output", str(out)]) == 0
    _, rows = read_csv(out)
    first_positive = next(float(r[0]) for r in rows if float(r[1]) > 1e-8)
    below = [g for g in grid if g <= 1 / 3]
    assert below[-1] < first_positive <= 1 / 3 + (grid[1] - grid[0]) + 1e-9


def test_oracle_check_reports_small_deviation(tmp_path):
    cfg = write_config(tmp_path, "run.json", {
        "system": base_system(nbar=0.1),
        "initial": {"theta": 1.0},
        "run": {"t_end": 30.0, "sample_count": 31},
    })
    out = tmp_path / "oracle.json"
    assert main(["oracle-check", "--config", cfg, "--output", str(out), "--format", "json"]) == 0
    doc = json.loads(out.read_text())
    assert doc["max_deviation"] < 1e-6


def test_events_excited_state_reports_birth(tmp_path):
    cfg = write_config(tmp_path, "run.json", {
        "system": base_system(),
        "initial": {"theta": np.pi / 2},
        "run": {"t_end": 30.0, "sample_count": 201},
    })
    out = tmp_path / "events.csv"
    assert main(["events", "--config", cfg, "--output", str(out)]) == 0
    _, rows = read_csv(out)
    assert rows and rows[0][0] == "birth"
    assert float(rows[0][1]) > 0.0


def test_optimum_table_with_fit(tmp_path):
    cfg = write_config(tmp_path, "run.json", {
        "system": base_system(gamma=0.5),
        "run": {"nbar_list": [0.0, 0.05], "gamma_max": 5.0},
    })
    out = tmp_path / "opt.json"
    assert main(["optimum", "--config", cfg, "--output", str(out), "--format", "json"]) == 0
    doc = json.loads(out.read_text())
    assert len(doc["rows"]) == 2
    assert doc["fit_slope"] is not None


def test_border_threads_reproduce_serial_output(tmp_path):
    cfg = write_config(tmp_path, "run.json", {
        "system": base_system(),
        "run": {
            "axis1": {"name": "J", "grid": [1.0, 1.5, 2.0]},
            "axis2": {"name": "gamma", "grid": [0.2, 0.4, 0.6, 0.8]},
        },
    })
    out1, out4 = tmp_path / "b1.csv", tmp_path / "b4.csv"
    assert main(["border", "--config", cfg, "--output", str(out1), "--threads", "1"]) == 0
    assert main(["border", "--config", cfg, "--output", str(out4), "--threads", "4"]) == 0
    assert out1.read_bytes() == out4.read_bytes()


def test_identical_configs_are_byte_identical(tmp_path):
    cfg = write_config(tmp_path, "run.json", {
        "system": base_system(),
        "run": {"parameter": "gamma", "grid": [0.2, 0.5, 0.9]},
    })
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    assert main(["sweep", "--config", cfg, "--output", str(a), "--format", "json"]) == 0
    assert main(["sweep", "--config", cfg, "--output", str(b), "--format", "json"]) == 0
    assert a.read_bytes() == b.read_bytes()
    json.loads(a.read_text())  # emitted JSON re-parses


def test_tolerance_override_validation(tmp_path):
    cfg = write_config(tmp_path, "run.json", {"system": base_system()})
    assert main(["steady", "--config", cfg, "--tolerance", "bogus=1"]) == 2
    assert main(["steady", "--config", cfg, "--output", str(tmp_path / "o.csv"),
                 "--tolerance", "negativity_eps=1e-5"]) == 0


def test_missing_config_file(tmp_path):
    assert main(["steady", "--config", str(tmp_path / "absent.json")]) == 2
