import csv
import json

import pytest
from click.testing import CliRunner

from designbench.cli import main


@pytest.fixture()
def runner():
    return CliRunner()


def _write_config(path, mobo=None, strategy=None):
    cfg = {}
    if mobo:
        cfg["mobo"] = mobo
    if strategy:
        cfg["strategy"] = strategy
    path.write_text(json.dumps(cfg), encoding="utf-8")
    return str(path)


def _write_observations(path, rows):
    with path.open("w", newline="", encoding="utf-8") as fh:
        writer = csv.DictWriter(
            fh,
            fieldnames=[
                "design.D", "design.k", "design.G", "design.A",
                "mean_time_ms", "mean_error_cm",
            ],
        )
        writer.writeheader()
        writer.writerows(rows)
    return str(path)


def _row(D=0.5, k=0.2, G=5.0, A=1.3, t=1200.0, e=0.3):
    return {
        "design.D": D, "design.k": k, "design.G": G, "design.A": A,
        "mean_time_ms": t, "mean_error_cm": e,
    }


SMALL_MOBO = {"n_init": 2, "n_total": 4}
FAST_STRATEGY = {"budget_evaluations": 4}


class TestSimulate:
    def test_writes_outputs(self, runner, tmp_path):
        config = _write_config(tmp_path / "cfg.json", mobo=SMALL_MOBO, strategy=FAST_STRATEGY)
        out = tmp_path / "out"
        res = runner.invoke(
            main,
            ["simulate", "--sessions", "1", "--seed", "3", "--out", str(out), "--config", config],
        )
        assert res.exit_code == 0, res.output
        assert "2 session rows" in res.output
        assert (out / "summary.csv").exists()
        assert (out / "plot_points.csv").exists()
        assert sorted(p.name for p in (out / "logs").glob("*.jsonl")) == [
            "baseline-0000.jsonl",
            "optimizer-0000.jsonl",
        ]

    def test_repeat_runs_byte_identical(self, runner, tmp_path):
        config = _write_config(tmp_path / "cfg.json", mobo=SMALL_MOBO, strategy=FAST_STRATEGY)
        outs = []
        for name in ("a", "b"):
            out = tmp_path / name
            res = runner.invoke(
                main,
                ["simulate", "--seed", "7", "--out", str(out), "--config", config],
            )
            assert res.exit_code == 0, res.output
            outs.append(out)
        assert (outs[0] / "summary.csv").read_bytes() == (outs[1] / "summary.csv").read_bytes()

    def test_rejects_bad_session_count(self, runner, tmp_path):
        res = runner.invoke(main, ["simulate", "--sessions", "0", "--out", str(tmp_path / "x")])
        assert res.exit_code == 2
        assert "--sessions" in res.output

    def test_rejects_bad_config_json(self, runner, tmp_path):
        bad = tmp_path / "bad.json"
        bad.write_text("{nope", encoding="utf-8")
        res = runner.invoke(
            main, ["simulate", "--out", str(tmp_path / "x"), "--config", str(bad)]
        )
        assert res.exit_code == 2
        assert "cannot read config" in res.output


class TestPropose:
    def test_seed_phase(self, runner, tmp_path):
        obs = _write_observations(tmp_path / "obs.csv", [_row()])
        res = runner.invoke(main, ["propose", "--observations", obs, "--seed", "5"])
        assert res.exit_code == 0, res.output
        payload = json.loads(res.output)
        assert payload["tag"] == "seed"
        assert set(payload["design"]) == {"D", "k", "G", "A"}

    def test_acquisition_phase(self, runner, tmp_path):
        obs = _write_observations(
            tmp_path / "obs.csv",
            [_row(), _row(D=0.8, t=1000.0, e=0.6), _row(D=0.2, t=1500.0, e=0.1)],
        )
        config = _write_config(
            tmp_path / "cfg.json",
            mobo={**SMALL_MOBO, "mc_samples": 32, "restarts": 2, "raw_candidates": 64},
        )
        res = runner.invoke(
            main, ["propose", "--observations", obs, "--config", config, "--seed", "5"]
        )
        assert res.exit_code == 0, res.output
        assert json.loads(res.output)["tag"] == "acquisition"

    def test_deterministic(self, runner, tmp_path):
        obs = _write_observations(tmp_path / "obs.csv", [_row()])
        a = runner.invoke(main, ["propose", "--observations", obs, "--seed", "5"])
        b = runner.invoke(main, ["propose", "--observations", obs, "--seed", "5"])
        assert a.output == b.output

    def test_row_error_names_line(self, runner, tmp_path):
        obs = _write_observations(tmp_path / "obs.csv", [_row(), _row(G=99.0)])
        res = runner.invoke(main, ["propose", "--observations", obs])
        assert res.exit_code == 2
        assert "row 3" in res.output

    def test_missing_columns(self, runner, tmp_path):
        p = tmp_path / "obs.csv"
        p.write_text("design.D,mean_time_ms\n0.5,1200\n", encoding="utf-8")
        res = runner.invoke(main, ["propose", "--observations", str(p)])
        assert res.exit_code == 2
        assert "missing columns" in res.output

    def test_exhausted_budget(self, runner, tmp_path):
        obs = _write_observations(tmp_path / "obs.csv", [_row()] * 4)
        config = _write_config(tmp_path / "cfg.json", mobo=SMALL_MOBO)
        res = runner.invoke(main, ["propose", "--observations", obs, "--config", config])
        assert res.exit_code == 2
        assert "protocol complete" in res.output


class TestAnalyze:
    def _make_log(self, runner, tmp_path):
        config = _write_config(tmp_path / "cfg.json", mobo=SMALL_MOBO, strategy=FAST_STRATEGY)
        out = tmp_path / "out"
        res = runner.invoke(
            main, ["simulate", "--seed", "3", "--out", str(out), "--config", config]
        )
        assert res.exit_code == 0, res.output
        return out / "logs" / "optimizer-0000.jsonl"

    def test_reports_metrics(self, runner, tmp_path):
        log = self._make_log(runner, tmp_path)
        res = runner.invoke(main, ["analyze", "--log", str(log), "--m", "2,4"])
        assert res.exit_code == 0, res.output
        report = json.loads(res.output)
        assert report["evaluation_count"] == 4
        assert set(report["coverage"]) == {"2", "4"}
        assert report["normalized_successive_distance"] >= 0.0

    def test_corrupt_log_exits_1(self, runner, tmp_path):
        log = self._make_log(runner, tmp_path)
        lines = log.read_text(encoding="utf-8").splitlines()
        log.write_text("\n".join([lines[0], lines[2]]) + "\n", encoding="utf-8")
        res = runner.invoke(main, ["analyze", "--log", str(log)])
        assert res.exit_code == 1
        assert "corrupt log" in res.output

    def test_bad_m_list(self, runner, tmp_path):
        log = self._make_log(runner, tmp_path)
        res = runner.invoke(main, ["analyze", "--log", str(log), "--m", "two"])
        assert res.exit_code == 2
