"""Black-box CLI tests: exit codes, files, determinism, thread parity."""

import json
import os
import subprocess
import sys

import pytest

from wealthsim import derive_seed

ANGLE_CONFIG = {
    "model": "angle",
    "agents": 40,
    "rounds": 400,
    "seed": 11,
    "params": {"share": 0.5},
    "snapshots": [0, 400],
}

PAIRWISE_CONFIG = {
    "model": "pairwise",
    "agents": 40,
    "rounds": 60,
    "seed": 12,
    "params": {"monopolist_fraction": 0.25},
    "snapshots": [60],
}


def cli(*argv, env_extra=None, cwd=None):
    env = dict(os.environ)
    env.pop("WEALTHSIM_OUTPUT_DIR", None)
    if env_extra:
        env.update(env_extra)
    return subprocess.run(
        [sys.executable, "-m", "wealthsim", *map(str, argv)],
        capture_output=True,
        text=True,
        env=env,
        cwd=cwd,
    )


def write_config(tmp_path, payload, name="config.json"):
    path = tmp_path / name
    path.write_text(json.dumps(payload))
    return path


def run_to_dir(tmp_path, payload, outname, *extra):
    config = dict(payload)
    config["output"] = str(tmp_path / outname)
    path = write_config(tmp_path, config, f"{outname}.json")
    proc = cli("run", path, *extra)
    return proc, tmp_path / outname


class TestRun:
    def test_successful_run_writes_three_files(self, tmp_path):
        proc, outdir = run_to_dir(tmp_path, ANGLE_CONFIG, "out")
        assert proc.returncode == 0, proc.stderr
        for name in ("config.json", "snapshots.csv", "report.json"):
            assert (outdir / name).exists()
            assert str(outdir / name) in proc.stdout
        report = json.loads((outdir / "report.json").read_text())
        assert report["model"] == "angle"
        assert report["analyzed_round"] == 400
        assert report["n"] == 40
        assert "gamma_mle" in report

    def test_missing_config_exits_4_naming_path(self, tmp_path):
        proc = cli("run", tmp_path / "absent.json")
        assert proc.returncode == 4
        assert "absent.json" in proc.stderr

    def test_invalid_json_exits_2(self, tmp_path):
        path = tmp_path / "broken.json"
        path.write_text("{nope")
        proc = cli("run", path)
        assert proc.returncode == 2

    def test_unknown_key_exits_2(self, tmp_path):
        payload = dict(ANGLE_CONFIG)
        payload["sharez"] = 1
        proc = cli("run", write_config(tmp_path, payload))
        assert proc.returncode == 2
        assert "sharez" in proc.stderr

    def test_zero_rounds_records_endowment_and_exits_0(self, tmp_path):
        payload = dict(ANGLE_CONFIG)
        payload["rounds"] = 0
        payload["snapshots"] = [0]
        proc, outdir = run_to_dir(tmp_path, payload, "zero")
        assert proc.returncode == 0, proc.stderr
        body = (outdir / "snapshots.csv").read_text().splitlines()
        assert body[0] == "round,agent_id,wealth"
        assert len(body) == 1 + 40
        assert all(line.endswith(",1.0") for line in body[1:])
        # the all-equal endowment defeats the Gamma fit; that is reported,
        # not fatal
        report = json.loads((outdir / "report.json").read_text())
        assert "analysis_error" in report

    def test_seed_override_recorded(self, tmp_path):
        proc, outdir = run_to_dir(tmp_path, ANGLE_CONFIG, "seeded", "--seed", 999)
        assert proc.returncode == 0
        saved = json.loads((outdir / "config.json").read_text())
        assert saved["seed"] == 999

    def test_repeat_runs_byte_identical(self, tmp_path):
        _, out_a = run_to_dir(tmp_path, ANGLE_CONFIG, "a")
        _, out_b = run_to_dir(tmp_path, ANGLE_CONFIG, "b")
        assert (out_a / "snapshots.csv").read_bytes() == (out_b / "snapshots.csv").read_bytes()
        assert (out_a / "report.json").read_bytes() == (out_b / "report.json").read_bytes()

    def test_threads_flag_does_not_change_bytes(self, tmp_path):
        _, out_a = run_to_dir(tmp_path, PAIRWISE_CONFIG, "t1", "--threads", 1)
        _, out_b = run_to_dir(tmp_path, PAIRWISE_CONFIG, "t3", "--threads", 3)
        assert (out_a / "snapshots.csv").read_bytes() == (out_b / "snapshots.csv").read_bytes()

    def test_output_dir_env_var_wins(self, tmp_path):
        config = dict(ANGLE_CONFIG)
        config["output"] = str(tmp_path / "ignored")
        path = write_config(tmp_path, config)
        proc = cli("run", path, env_extra={"WEALTHSIM_OUTPUT_DIR": str(tmp_path / "envdir")})
        assert proc.returncode == 0
        assert (tmp_path / "envdir" / "snapshots.csv").exists()
        assert not (tmp_path / "ignored").exists()

    def test_bad_threads_exits_2(self, tmp_path):
        proc, _ = run_to_dir(tmp_path, ANGLE_CONFIG, "bad", "--threads", 0)
        assert proc.returncode == 2


class TestAnalyze:
    @pytest.fixture()
    def pairwise_csv(self, tmp_path):
        proc, outdir = run_to_dir(tmp_path, PAIRWISE_CONFIG, "data")
        assert proc.returncode == 0, proc.stderr
        return outdir / "snapshots.csv"

    def test_report_on_stdout(self, pairwise_csv):
        proc = cli("analyze", pairwise_csv)
        assert proc.returncode == 0, proc.stderr
        report = json.loads(proc.stdout)
        assert report["kind"] == "pairwise"
        assert report["round"] == 60
        assert report["monopolist_mean_wealth"] > 0
        assert report["non_monopolist_mean_wealth"] > 0
        assert report["tail"]["verdict"] in ("exponential-like", "power-like", "inconclusive")

    def test_missing_file_exits_4(self, tmp_path):
        proc = cli("analyze", tmp_path / "none.csv")
        assert proc.returncode == 4

    def test_foreign_csv_exits_2(self, tmp_path):
        path = tmp_path / "foreign.csv"
        path.write_text("a,b\n1,2\n")
        proc = cli("analyze", path)
        assert proc.returncode == 2

    def test_population_too_small_to_analyze_exits_3(self, tmp_path):
        payload = dict(ANGLE_CONFIG)
        payload["agents"] = 8
        proc, outdir = run_to_dir(tmp_path, payload, "tiny")
        assert proc.returncode == 0  # the run itself succeeds
        proc = cli("analyze", outdir / "snapshots.csv")
        assert proc.returncode == 3


class TestSweep:
    def sweep_spec(self, tmp_path, outname, base=None):
        spec = {
            "base": dict(base or PAIRWISE_CONFIG, output=str(tmp_path / outname)),
            "variable": "monopolist_fraction",
            "values": [0.0, 0.5],
            "replicas": 2,
        }
        path = tmp_path / f"{outname}.json"
        path.write_text(json.dumps(spec))
        return path, tmp_path / outname

    def test_sweep_outputs(self, tmp_path):
        spec, outdir = self.sweep_spec(tmp_path, "sweep")
        proc = cli("sweep", spec)
        assert proc.returncode == 0, proc.stderr
        lines = (outdir / "aggregate.csv").read_text().splitlines()
        assert lines[0] == (
            "variable,value,replica,seed,gamma_shape,gamma_scale,gini,ks,"
            "mono_mean_wealth,nonmono_mean_wealth"
        )
        assert len(lines) == 1 + 2 * (2 + 1)  # per value: 2 replicas + mean row
        cells = [line.split(",") for line in lines[1:]]
        seeds = [row[3] for row in cells if row[2] != "mean"]
        expected = [str(derive_seed(12, vi, 2, r)) for vi in range(2) for r in range(2)]
        assert seeds == expected
        assert (outdir / "kde_monopolist_fraction_0.csv").exists()
        assert (outdir / "kde_monopolist_fraction_0.5.csv").exists()
        assert (outdir / "sweep.svg").exists()
        # monopolist columns populated only where both classes exist
        by_value = {row[1]: row for row in cells if row[2] == "mean"}
        assert by_value["0.0"][8] == ""
        assert by_value["0.5"][8] != ""

    def test_threads_do_not_change_any_byte(self, tmp_path):
        spec_a, out_a = self.sweep_spec(tmp_path, "s1")
        spec_b, out_b = self.sweep_spec(tmp_path, "s2")
        assert cli("sweep", spec_a, "--threads", 1).returncode == 0
        assert cli("sweep", spec_b, "--threads", 4).returncode == 0
        files_a = sorted(p.name for p in out_a.iterdir())
        files_b = sorted(p.name for p in out_b.iterdir())
        assert files_a == files_b
        for name in files_a:
            assert (out_a / name).read_bytes() == (out_b / name).read_bytes(), name

    def test_unknown_variable_exits_2(self, tmp_path):
        spec = {
            "base": PAIRWISE_CONFIG,
            "variable": "monopoly_share",
            "values": [0.1],
        }
        path = tmp_path / "bad.json"
        path.write_text(json.dumps(spec))
        proc = cli("sweep", path)
        assert proc.returncode == 2

    def test_replica_failure_reports_seed_and_exits_3(self, tmp_path):
        base = dict(PAIRWISE_CONFIG, agents=8)  # too few agents to fit
        spec, _ = self.sweep_spec(tmp_path, "fail", base=base)
        proc = cli("sweep", spec)
        assert proc.returncode == 3
        assert "seed=" in proc.stderr

    def test_seed_override_changes_derived_seeds(self, tmp_path):
        spec, outdir = self.sweep_spec(tmp_path, "override")
        proc = cli("sweep", spec, "--seed", 500)
        assert proc.returncode == 0
        lines = (outdir / "aggregate.csv").read_text().splitlines()
        first_cell = lines[1].split(",")
        assert first_cell[3] == str(derive_seed(500, 0, 2, 0))


class TestPlot:
    @pytest.fixture()
    def kde_files(self, tmp_path):
        spec = {
            "base": dict(PAIRWISE_CONFIG, output=str(tmp_path / "kdes")),
            "variable": "monopolist_fraction",
            "values": [0.0, 0.4],
            "replicas": 1,
        }
        path = tmp_path / "spec.json"
        path.write_text(json.dumps(spec))
        assert cli("sweep", path).returncode == 0
        return [
            tmp_path / "kdes" / "kde_monopolist_fraction_0.csv",
            tmp_path / "kdes" / "kde_monopolist_fraction_0.4.csv",
        ]

    def test_plot_with_labels(self, tmp_path, kde_files):
        out = tmp_path / "fig.svg"
        proc = cli("plot", out, *kde_files, "--labels", "p_m=0,p_m=0.4")
        assert proc.returncode == 0, proc.stderr
        svg = out.read_text()
        assert svg.count("<polyline") == 2
        assert "p_m=0" in svg and "p_m=0.4" in svg

    def test_plot_reruns_identical_bytes(self, tmp_path, kde_files):
        out_a = tmp_path / "a.svg"
        out_b = tmp_path / "b.svg"
        assert cli("plot", out_a, *kde_files).returncode == 0
        assert cli("plot", out_b, *kde_files).returncode == 0
        assert out_a.read_bytes() == out_b.read_bytes()

    def test_label_count_mismatch_exits_2(self, tmp_path, kde_files):
        proc = cli("plot", tmp_path / "x.svg", *kde_files, "--labels", "only-one")
        assert proc.returncode == 2

    def test_missing_input_exits_4(self, tmp_path):
        proc = cli("plot", tmp_path / "x.svg", tmp_path / "nope.csv")
        assert proc.returncode == 4


def test_no_arguments_exits_2():
    proc = cli()
    assert proc.returncode == 2
