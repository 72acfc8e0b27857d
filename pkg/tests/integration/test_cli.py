"""
Integration tests for the `xkm` command line.

Every command runs in-process through Typer's CliRunner; files live in
pytest's tmp_path.
"""

import json

import numpy as np
import pytest

from src.cli.router import app
from src.core.io import read_csv, write_csv


def run_ok(runner, args):
    result = runner.invoke(app, args)
    assert result.exit_code == 0, result.output
    return result


@pytest.fixture
def lb3_file(tmp_path, runner):
    path = tmp_path / "lb3.csv"
    run_ok(runner, ["gen", "--family", "lb2", "--d", "3", "--out", str(path)])
    return path


@pytest.fixture
def lb3_reference(tmp_path):
    """Natural 2-medians centers of the d=3 two-cluster dataset."""
    path = tmp_path / "lb3_centers.csv"
    write_csv(path, np.array([[-1.0, -1.0, -1.0], [1.0, 1.0, 1.0]]))
    return path


@pytest.mark.integration
class TestGen:
    """`xkm gen`."""

    def test_two_cluster_dataset(self, runner, tmp_path):
        out = tmp_path / "lb.csv"
        result = run_ok(runner, ["gen", "--family", "lb2", "--d", "3", "--out", str(out)])
        assert json.loads(result.stdout) == {"n": 6, "d": 3, "family": "lb2", "seed": 0}
        assert read_csv(out).values.shape == (6, 3)

    def test_basis_with_labels(self, runner, tmp_path):
        out, labels = tmp_path / "basis.csv", tmp_path / "labels.csv"
        run_ok(runner, ["gen", "--family", "basis", "--k", "4", "--out", str(out), "--labels-out", str(labels)])
        assert read_csv(out).values.shape == (4, 3)
        assert labels.read_text().split() == ["0", "1", "2", "3"]

    def test_same_seed_same_file(self, runner, tmp_path):
        args = ["gen", "--family", "mixture", "--k", "3", "--d", "2", "--n", "30", "--seed", "5"]
        run_ok(runner, args + ["--out", str(tmp_path / "a.csv")])
        run_ok(runner, args + ["--out", str(tmp_path / "b.csv")])
        assert (tmp_path / "a.csv").read_bytes() == (tmp_path / "b.csv").read_bytes()

    def test_missing_family_parameter(self, runner, tmp_path):
        result = runner.invoke(app, ["gen", "--family", "lb2", "--out", str(tmp_path / "x.csv")])
        assert result.exit_code == 2

    def test_unknown_family(self, runner, tmp_path):
        result = runner.invoke(app, ["gen", "--family", "spiral", "--out", str(tmp_path / "x.csv")])
        assert result.exit_code == 2


@pytest.mark.integration
class TestFit:
    """`xkm fit`."""

    def test_twocut_medians(self, runner, lb3_file, tmp_path):
        out = tmp_path / "tree.json"
        result = run_ok(runner, ["fit", "--algo", "twocut", "--in", str(lb3_file), "--objective", "medians", "--out", str(out)])
        stats = json.loads(result.stdout)
        assert stats["cost"] == pytest.approx(10.0)
        assert stats["depth"] == 1
        assert stats["cut"]["cost"] == pytest.approx(10.0)
        assert json.loads(out.read_text())["k"] == 2

    def test_imm_with_center_file(self, runner, tmp_path):
        data = tmp_path / "basis.csv"
        run_ok(runner, ["gen", "--family", "basis", "--k", "4", "--out", str(data)])
        stats_path = tmp_path / "stats.json"
        result = run_ok(
            runner,
            ["fit", "--algo", "imm", "--in", str(data), "--init", "file", "--centers", str(data), "--stats", str(stats_path)],
        )
        stats = json.loads(result.stdout)
        assert stats["cost"] == 0.0
        assert stats["depth"] == 3
        assert stats["mistakes_per_node"] == [0, 0, 0]
        assert json.loads(stats_path.read_text()) == stats

    def test_imm_with_kmeanspp(self, runner, tmp_path):
        data = tmp_path / "mix.csv"
        run_ok(runner, ["gen", "--family", "mixture", "--k", "3", "--d", "2", "--n", "60", "--out", str(data)])
        stats = json.loads(run_ok(runner, ["fit", "--algo", "imm", "--in", str(data), "--k", "3"]).stdout)
        assert stats["k"] == 3
        assert stats["cost"] >= 0.0
        assert stats["reference_cost"] > 0.0

    def test_kmeans_writes_centers(self, runner, tmp_path):
        data, centers = tmp_path / "mix.csv", tmp_path / "centers.csv"
        run_ok(runner, ["gen", "--family", "mixture", "--k", "2", "--d", "2", "--n", "40", "--out", str(data)])
        stats = json.loads(run_ok(runner, ["fit", "--algo", "kmeans", "--in", str(data), "--k", "2", "--out", str(centers)]).stdout)
        assert read_csv(centers).values.shape == (2, 2)
        assert stats["depth"] == 0
        assert stats["cost_history"]

    def test_id3_with_labels(self, runner, tmp_path):
        data, labels = tmp_path / "id3.csv", tmp_path / "labels.csv"
        run_ok(runner, ["gen", "--family", "id3fail", "--v", "10", "--n-per-blob", "20", "--out", str(data), "--labels-out", str(labels)])
        stats = json.loads(run_ok(runner, ["fit", "--algo", "id3", "--in", str(data), "--labels", str(labels), "--leaves", "3"]).stdout)
        assert stats["k"] == 3

    def test_identical_points_fail(self, runner, tmp_path):
        data = tmp_path / "same.csv"
        write_csv(data, np.ones((4, 2)))
        result = runner.invoke(app, ["fit", "--algo", "twocut", "--in", str(data)])
        assert result.exit_code == 4

    def test_missing_k(self, runner, lb3_file):
        result = runner.invoke(app, ["fit", "--algo", "imm", "--in", str(lb3_file)])
        assert result.exit_code == 2

    def test_k_larger_than_n(self, runner, lb3_file):
        result = runner.invoke(app, ["fit", "--algo", "kmeans", "--in", str(lb3_file), "--k", "10"])
        assert result.exit_code == 2

    def test_missing_input(self, runner, tmp_path):
        result = runner.invoke(app, ["fit", "--algo", "twocut", "--in", str(tmp_path / "absent.csv")])
        assert result.exit_code == 3

    def test_malformed_input(self, runner, tmp_path):
        data = tmp_path / "bad.csv"
        data.write_text("1,2\n3,nan\n")
        result = runner.invoke(app, ["fit", "--algo", "twocut", "--in", str(data)])
        assert result.exit_code == 3

    def test_header_row_is_skipped_on_request(self, runner, lb3_file, tmp_path):
        data = tmp_path / "lb3_header.csv"
        data.write_text("x,y,z\n" + lb3_file.read_text())
        assert runner.invoke(app, ["fit", "--algo", "twocut", "--in", str(data)]).exit_code == 3
        stats = json.loads(run_ok(runner, ["fit", "--algo", "twocut", "--in", str(data), "--objective", "medians", "--header"]).stdout)
        assert stats["cost"] == pytest.approx(10.0)

    def test_thread_count_does_not_change_output(self, runner, lb3_file, test_settings):
        single = json.loads(run_ok(runner, ["--threads", "1", "fit", "--algo", "twocut", "--in", str(lb3_file)]).stdout)
        many = json.loads(run_ok(runner, ["--threads", "4", "fit", "--algo", "twocut", "--in", str(lb3_file)]).stdout)
        single.pop("wall_time"), many.pop("wall_time")
        assert single == many


@pytest.mark.integration
class TestEval:
    """`xkm eval`."""

    def test_ratio_against_reference(self, runner, lb3_file, lb3_reference, tmp_path):
        tree = tmp_path / "tree.json"
        run_ok(runner, ["fit", "--algo", "twocut", "--in", str(lb3_file), "--objective", "medians", "--out", str(tree)])
        report = json.loads(run_ok(runner, ["eval", "--in", str(lb3_file), "--tree", str(tree), "--reference", str(lb3_reference)]).stdout)
        assert report["total_cost"] == pytest.approx(10.0)
        assert report["reference_cost"] == pytest.approx(6.0)
        assert report["ratio"] == pytest.approx(10.0 / 6.0)
        assert report["bound"] == 3.0

    def test_header_applies_to_data_and_reference(self, runner, lb3_file, lb3_reference, tmp_path):
        tree = tmp_path / "tree.json"
        run_ok(runner, ["fit", "--algo", "twocut", "--in", str(lb3_file), "--objective", "medians", "--out", str(tree)])
        data, centers = tmp_path / "data_h.csv", tmp_path / "centers_h.csv"
        data.write_text("x,y,z\n" + lb3_file.read_text())
        centers.write_text("x,y,z\n" + lb3_reference.read_text())
        args = ["eval", "--in", str(data), "--tree", str(tree), "--reference", str(centers), "--header"]
        report = json.loads(run_ok(runner, args).stdout)
        assert report["reference_cost"] == pytest.approx(6.0)

    def test_ratio_absent_for_zero_reference(self, runner, tmp_path):
        data, tree = tmp_path / "basis.csv", tmp_path / "tree.json"
        run_ok(runner, ["gen", "--family", "basis", "--k", "3", "--out", str(data)])
        run_ok(runner, ["fit", "--algo", "imm", "--in", str(data), "--init", "file", "--centers", str(data), "--out", str(tree)])
        report = json.loads(run_ok(runner, ["eval", "--in", str(data), "--tree", str(tree), "--reference", str(data)]).stdout)
        assert report["total_cost"] == 0.0
        assert "ratio" not in report

    def test_round_trip_reproduces_fit_cost(self, runner, tmp_path):
        data, tree = tmp_path / "mix.csv", tmp_path / "tree.json"
        run_ok(runner, ["gen", "--family", "mixture", "--k", "4", "--d", "3", "--n", "80", "--seed", "2", "--out", str(data)])
        stats = json.loads(run_ok(runner, ["fit", "--algo", "imm", "--in", str(data), "--k", "4", "--out", str(tree)]).stdout)
        report = json.loads(run_ok(runner, ["eval", "--in", str(data), "--tree", str(tree)]).stdout)
        assert report["total_cost"] == pytest.approx(stats["cost"], rel=1e-9)

    def test_cut_oracle(self, runner, lb3_file):
        report = json.loads(run_ok(runner, ["eval", "--in", str(lb3_file), "--oracle", "cut", "--objective", "medians"]).stdout)
        assert report["oracle"] == "cut"
        assert report["cost"] == pytest.approx(10.0)

    def test_partition_oracle(self, runner, lb3_file):
        report = json.loads(run_ok(runner, ["eval", "--in", str(lb3_file), "--oracle", "partition", "--k", "2", "--objective", "medians"]).stdout)
        assert report["cost"] == pytest.approx(6.0)
        assert report["labels"] == [0, 0, 0, 1, 1, 1]

    def test_matching_oracle(self, runner, lb3_file):
        report = json.loads(run_ok(runner, ["eval", "--in", str(lb3_file), "--oracle", "matching", "--coordinate", "2"]).stdout)
        assert report == {"oracle": "matching", "coordinate": 2, "holds": True}

    def test_tree_required_without_oracle(self, runner, lb3_file):
        assert runner.invoke(app, ["eval", "--in", str(lb3_file)]).exit_code == 2

    def test_unreadable_tree(self, runner, lb3_file, tmp_path):
        tree = tmp_path / "tree.json"
        tree.write_text('{"k": 2}')
        assert runner.invoke(app, ["eval", "--in", str(lb3_file), "--tree", str(tree)]).exit_code == 3


@pytest.mark.integration
class TestExportAndBench:
    """`xkm export` and `xkm bench`."""

    def test_export_is_deterministic(self, runner, lb3_file, tmp_path):
        tree = tmp_path / "tree.json"
        run_ok(runner, ["fit", "--algo", "twocut", "--in", str(lb3_file), "--out", str(tree)])
        first = run_ok(runner, ["export", "--tree", str(tree)]).stdout
        dot = tmp_path / "tree.dot"
        run_ok(runner, ["export", "--tree", str(tree), "--out", str(dot)])
        assert first.startswith("digraph")
        assert dot.read_text() == first

    def test_bench_single_cell(self, runner):
        result = run_ok(runner, ["bench", "--n", "50", "--d", "2", "--k", "3", "--repeats", "1"])
        lines = result.stdout.strip().splitlines()
        assert lines[0] == "n,d,k,repeat,seconds,cost,depth"
        assert len(lines) == 2
        assert lines[1].startswith("50,2,3,0,")

    def test_bench_costs_repeat(self, runner, tmp_path):
        out = tmp_path / "bench.csv"
        run_ok(runner, ["bench", "--n", "40", "--d", "2", "--k", "2", "--repeats", "2", "--out", str(out)])
        rows = [line.split(",") for line in out.read_text().strip().splitlines()[1:]]
        assert len(rows) == 2
        assert rows[0][5] == rows[1][5]
