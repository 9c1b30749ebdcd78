import pytest

import holebox.cli as cli
from holebox.numeric import SolverError


def test_successful_run_writes_csv(tmp_path, capsys):
    out = tmp_path / "table.csv"
    rc = cli.main(["materials-table", "--out", str(out)])
    assert rc == 0
    assert out.is_file()
    assert (tmp_path / "table.csv.cfg").is_file()
    assert str(out) in capsys.readouterr().out


def test_usage_error_exits_one(capsys):
    with pytest.raises(SystemExit) as exc:
        cli.main(["materials-table"])          # --out is required
    assert exc.value.code == 1
    with pytest.raises(SystemExit) as exc:
        cli.main(["no-such-command", "--out", "x.csv"])
    assert exc.value.code == 1


def test_config_error_exits_one(tmp_path, capsys):
    rc = cli.main(["e0-sweep", "--out", str(tmp_path / "x.csv"),
                   "--set", "material.name=Adamantium"])
    assert rc == 1
    assert "config error" in capsys.readouterr().err
    rc = cli.main(["e0-sweep", "--out", str(tmp_path / "y.csv"),
                   "--config", str(tmp_path / "absent.cfg")])
    assert rc == 1
    rc = cli.main(["lz-sweep", "--out", str(tmp_path / "z.csv"),
                   "--tier", "minimal_exact"])   # not a closed-form tier
    assert rc == 1


def test_strain_sweep_without_strain_params_exits_one(tmp_path, capsys):
    # rejected at run time, once the command actually needs nu and b_v
    rc = cli.main(["strain-sweep", "--out", str(tmp_path / "x.csv"),
                   "--set", "material.name=Ge", "--set", "sweep.eps_count=2"])
    assert rc == 1
    assert "strain parameters" in capsys.readouterr().err


def test_unwritable_output_exits_one(tmp_path, capsys):
    rc = cli.main(["materials-table", "--out",
                   str(tmp_path / "no" / "such" / "dir" / "t.csv")])
    assert rc == 1
    assert "cannot write" in capsys.readouterr().err


def test_solver_error_exits_two(tmp_path, capsys, monkeypatch):
    def boom(spec, out):
        raise SolverError("synthetic failure")
    monkeypatch.setitem(cli._RUNNERS, "e0-sweep", boom)
    rc = cli.main(["e0-sweep", "--out", str(tmp_path / "x.csv"),
                   "--set", "sweep.e0_count=2"])
    assert rc == 2
    assert "solver error" in capsys.readouterr().err


def test_runs_are_reproducible_end_to_end(tmp_path):
    args = ["lz-sweep", "--set", "sweep.lz_count=3"]
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    assert cli.main(args + ["--out", str(a)]) == 0
    assert cli.main(args + ["--out", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()


def test_tier_flag_reaches_output(tmp_path):
    out = tmp_path / "lz.csv"
    rc = cli.main(["lz-sweep", "--out", str(out), "--tier", "analytic2",
                   "--set", "sweep.lz_count=2"])
    assert rc == 0
    text = out.read_text("utf-8")
    assert "# tiers: analytic2" in text
    assert "f_R_analytic4" not in text


def test_threads_flag_gives_identical_angle_map(tmp_path):
    base = ["angle-map", "--tier", "analytic2,minimal_exact",
            "--set", "sweep.theta_count=4", "--set", "sweep.phi_count=5"]
    a, b = tmp_path / "t1.csv", tmp_path / "t4.csv"
    assert cli.main(base + ["--out", str(a)]) == 0
    assert cli.main(base + ["--out", str(b), "--threads", "4"]) == 0
    assert a.read_bytes() == b.read_bytes()
