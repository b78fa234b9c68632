import json

import pytest
from click.testing import CliRunner

from dimesim.cli import main

TINY = {"params": {"n": 24, "t": 12}}


@pytest.fixture
def runner():
    return CliRunner()


def write_config(tmp_path, payload, name="config.json"):
    path = tmp_path / name
    path.write_text(json.dumps(payload))
    return str(path)


def run_cli(runner, args):
    result = runner.invoke(main, args, catch_exceptions=False)
    return result


class TestConfigHandling:
    def test_missing_config_file(self, runner, tmp_path):
        result = runner.invoke(main, ["run", "--config", str(tmp_path / "nope.json")])
        assert result.exit_code == 2
        assert "not found" in result.output

    def test_invalid_json(self, runner, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text("{not json")
        result = runner.invoke(main, ["run", "--config", str(path)])
        assert result.exit_code == 2
        assert "not valid JSON" in result.output

    def test_unknown_top_level_key(self, runner, tmp_path):
        config = write_config(tmp_path, {**TINY, "bogus": 1})
        result = runner.invoke(main, ["run", "--config", config])
        assert result.exit_code == 2
        assert "unknown config keys" in result.output

    def test_unsupported_version(self, runner, tmp_path):
        config = write_config(tmp_path, {**TINY, "version": 99})
        result = runner.invoke(main, ["run", "--config", config])
        assert result.exit_code == 2
        assert "version" in result.output

    def test_unknown_params_key(self, runner, tmp_path):
        config = write_config(tmp_path, {"params": {"n": 24, "t": 12, "zeta": 3}})
        result = runner.invoke(main, ["run", "--config", config])
        assert result.exit_code == 2

    def test_out_of_range_flag(self, runner, tmp_path):
        result = runner.invoke(
            main, ["run", "--p", "1.5", "--n", "24", "--T", "5",
                   "--outdir", str(tmp_path)]
        )
        assert result.exit_code == 2
        assert "p" in result.output

    def test_unknown_preset(self, runner):
        result = runner.invoke(main, ["run", "--preset", "unheard-of"])
        assert result.exit_code == 2


class TestRunCommand:
    def test_writes_artifacts(self, runner, tmp_path):
        config = write_config(tmp_path, TINY)
        result = run_cli(runner, [
            "run", "--config", config, "--seed", "4", "--label", "t1",
            "--replicates", "2", "--outdir", str(tmp_path / "out"),
        ])
        assert result.exit_code == 0, result.output
        target = tmp_path / "out" / "run" / "t1"
        for name in ("timeseries.csv", "timeseries_smoothed.csv", "summary.json",
                     "replicate_000.timeseries.csv", "replicate_001.timeseries.csv"):
            assert (target / name).is_file(), name
        summary = json.loads((target / "summary.json").read_text())
        assert summary["params"]["seed"] == 4
        assert summary["replicate_count"] == 2
        assert "steady-state population fractions" in result.output

    def test_flags_override_config(self, runner, tmp_path):
        config = write_config(tmp_path, TINY)
        run_cli(runner, [
            "run", "--config", config, "--T", "7", "--label", "t2",
            "--outdir", str(tmp_path / "out"),
        ])
        summary = json.loads(
            (tmp_path / "out" / "run" / "t2" / "summary.json").read_text()
        )
        assert summary["params"]["t"] == 7

    def test_preset_sets_parameters(self, runner, tmp_path):
        run_cli(runner, [
            "run", "--preset", "intransigent", "--n", "24", "--T", "6",
            "--label", "t3", "--outdir", str(tmp_path / "out"),
        ])
        summary = json.loads(
            (tmp_path / "out" / "intransigent" / "t3" / "summary.json").read_text()
        )
        assert summary["params"]["p"] == 0.8

    def test_config_round_trip(self, runner, tmp_path):
        """The resolved config embedded in summary.json reproduces the run."""
        run_cli(runner, [
            "run", "--n", "24", "--T", "10", "--seed", "6", "--label", "a",
            "--outdir", str(tmp_path / "out"),
        ])
        summary = json.loads((tmp_path / "out" / "run" / "a" / "summary.json").read_text())
        resolved = summary["config"]
        config = write_config(tmp_path, {k: resolved[k] for k in
                                         ("version", "params", "network", "table",
                                          "replicates", "rolling_window")})
        run_cli(runner, ["run", "--config", config, "--label", "b",
                         "--outdir", str(tmp_path / "out2")])
        first = (tmp_path / "out" / "run" / "a" / "timeseries.csv").read_bytes()
        second = (tmp_path / "out2" / "run" / "b" / "timeseries.csv").read_bytes()
        assert first == second

    def test_byte_identical_across_runs_and_workers(self, runner, tmp_path):
        for label, workers in (("w1", "1"), ("w2", "2"), ("w3", "1")):
            run_cli(runner, [
                "run", "--n", "24", "--T", "10", "--seed", "5",
                "--replicates", "2", "--workers", workers,
                "--label", label, "--outdir", str(tmp_path / "out"),
            ])
        read = lambda label: (tmp_path / "out" / "run" / label / "timeseries.csv").read_bytes()
        assert read("w1") == read("w2") == read("w3")


class TestSweepCommand:
    def sweep_config(self, tmp_path):
        return write_config(tmp_path, {
            "params": {"n": 24, "t": 12},
            "sweep": {"axes": {"p": [0.2, 0.8], "f": [0.1]}, "replicates": 1},
        })

    def test_requires_sweep_section(self, runner, tmp_path):
        config = write_config(tmp_path, TINY)
        result = runner.invoke(main, ["sweep", "--config", config])
        assert result.exit_code == 2
        assert "sweep" in result.output

    def test_writes_csv_and_manifest(self, runner, tmp_path):
        config = self.sweep_config(tmp_path)
        result = run_cli(runner, [
            "sweep", "--config", config, "--label", "s1",
            "--outdir", str(tmp_path / "out"),
        ])
        assert result.exit_code == 0, result.output
        target = tmp_path / "out" / "sweep" / "s1"
        lines = (target / "sweep.csv").read_text().strip().split("\n")
        assert len(lines) == 1 + 2 * 6  # header + 2 cells x 6 types
        manifest = json.loads((target / "manifest.json").read_text())
        assert len(manifest["completed"]) == 2

    def test_resume_skips_completed_cells(self, runner, tmp_path):
        config = self.sweep_config(tmp_path)
        args = ["sweep", "--config", config, "--label", "s2",
                "--outdir", str(tmp_path / "out")]
        run_cli(runner, args)
        target = tmp_path / "out" / "sweep" / "s2"
        before = (target / "sweep.csv").read_text()
        result = run_cli(runner, args)
        assert "resuming sweep: 2 cells already done" in result.output
        assert (target / "sweep.csv").read_text() == before


class TestNetworkCommand:
    def test_reports_stats(self, runner):
        result = run_cli(runner, ["network", "--n", "100", "--m", "3",
                                  "--mt", "2", "--n0", "5", "--seed", "1"])
        assert result.exit_code == 0
        assert "nodes: 100  edges: 295" in result.output
        assert "global clustering" in result.output

    def test_writes_artifacts(self, runner, tmp_path):
        target = tmp_path / "net"
        result = run_cli(runner, ["network", "--n", "50", "--m", "3", "--mt", "2",
                                  "--n0", "5", "--outdir", str(target)])
        assert result.exit_code == 0
        assert (target / "graph.edges").is_file()
        histogram = (target / "degree_histogram.csv").read_text()
        assert histogram.startswith("degree,count\n")

    def test_erdos_renyi_generator(self, runner):
        result = run_cli(runner, ["network", "--generator", "erdos-renyi",
                                  "--n", "200", "--edge-prob", "0.05"])
        assert result.exit_code == 0
        assert "generator: erdos-renyi" in result.output

    def test_invalid_parameters(self, runner):
        result = runner.invoke(main, ["network", "--n", "5", "--n0", "13"])
        assert result.exit_code == 2


class TestBatteryCommand:
    def test_runs_five_variants(self, runner, tmp_path):
        result = run_cli(runner, [
            "battery", "--n", "24", "--T", "8", "--replicates", "1",
            "--label", "b1", "--outdir", str(tmp_path / "out"),
        ])
        assert result.exit_code == 0, result.output
        target = tmp_path / "out" / "battery" / "b1"
        lines = (target / "battery.csv").read_text().strip().split("\n")
        assert len(lines) == 6  # header + five initial-condition variants
        summary = json.loads((target / "battery_summary.json").read_text())
        assert len(summary["steady_state"]) == 5
