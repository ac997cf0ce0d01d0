"""End-to-end tests of the command-line interface."""

import json

import numpy as np
from freqgraph.cli import EXIT_INPUT, EXIT_OK, EXIT_USAGE, main


def read_manifest(out_dir):
    return json.loads((out_dir / "manifest.json").read_text())


def run(argv):
    return main([str(a) for a in argv])


class TestSimulate:
    def test_outputs_and_shapes(self, tmp_path):
        code = run(["simulate", "--seed", "3", "--communities", "2",
                    "--community-size", "8", "--n", "1124", "--out-dir", tmp_path])
        assert code == EXIT_OK
        series = (tmp_path / "series.csv").read_text().splitlines()
        assert series[0].startswith("# manifest_sha256=")
        assert series[1].split(",")[0] == "x1"
        assert len(series) == 2 + 1024  # comment + header + retained rows
        assert len(series[2].split(",")) == 16
        model = json.loads((tmp_path / "model.json").read_text())
        assert model["p"] == 16 and model["order"] == 3
        truth = json.loads((tmp_path / "truth_edges.json").read_text())
        assert truth["num_edges"] == len(truth["edges"])

    def test_headline_shape_column_count(self, tmp_path):
        code = run(["simulate", "--seed", "0", "--communities", "16",
                    "--community-size", "8", "--n", "228", "--out-dir", tmp_path])
        assert code == EXIT_OK
        lines = (tmp_path / "series.csv").read_text().splitlines()
        assert len(lines[1].split(",")) == 128
        assert len(lines) == 2 + 128  # comment + header + retained rows

    def test_byte_identical_for_same_seed(self, tmp_path):
        a, b = tmp_path / "a", tmp_path / "b"
        for out in (a, b):
            assert run(["simulate", "--seed", "11", "--communities", "2",
                        "--community-size", "4", "--n", "356", "--out-dir", out]) == EXIT_OK
        for name in ("series.csv", "model.json", "truth_edges.json"):
            assert (a / name).read_bytes() == (b / name).read_bytes()

    def test_too_short_rejected(self, tmp_path):
        assert run(["simulate", "--n", "50", "--out-dir", tmp_path]) == EXIT_USAGE


class TestEstimate:
    def test_white_noise_empty_graph(self, tmp_path):
        rng = np.random.default_rng(0)
        csv_path = tmp_path / "noise.csv"
        rows = "\n".join(",".join(f"{v:.10g}" for v in row)
                         for row in rng.standard_normal((4096, 4)))
        csv_path.write_text(rows + "\n")
        out = tmp_path / "out"
        code = run(["estimate", csv_path, "--K", "255", "--lambda", "1",
                    "--alpha", "0.1", "--out-dir", out])
        assert code == EXIT_OK
        edges = json.loads((out / "edges.json").read_text())
        assert edges["num_edges"] == 0
        assert (out / "adjacency.csv").exists()
        assert (out / "adjacency.png").exists()
        assert (out / "report.json").exists()
        # adjacency parses as a pure numeric matrix after the comment line
        adj = np.loadtxt(out / "adjacency.csv", delimiter=",", comments="#")
        assert adj.shape == (4, 4)
        # every artifact is tied to the manifest identity
        manifest = read_manifest(out)
        assert edges["manifest"]["manifest_sha256"] == manifest["manifest_sha256"]
        report = json.loads((out / "report.json").read_text())
        assert report["manifest_sha256"] == manifest["manifest_sha256"]
        assert set(manifest["artifacts"]) >= {"edges.json", "adjacency.csv", "report.json"}

    def test_round_trip_from_simulate(self, tmp_path):
        sim = tmp_path / "sim"
        assert run(["simulate", "--seed", "1", "--communities", "2",
                    "--community-size", "4", "--n", "612", "--out-dir", sim]) == EXIT_OK
        out = tmp_path / "est"
        code = run(["estimate", sim / "series.csv", "--M", "4",
                    "--lambda", "0.3", "--out-dir", out])
        assert code == EXIT_OK
        manifest = read_manifest(out)
        assert manifest["config"]["K"] == 63  # derived from --M 4 at n=512
        assert manifest["config"]["M"] == 4

    def test_bic_tuning_writes_table(self, tmp_path):
        sim = tmp_path / "sim"
        assert run(["simulate", "--seed", "5", "--communities", "1",
                    "--community-size", "6", "--n", "612", "--out-dir", sim]) == EXIT_OK
        out = tmp_path / "est"
        code = run(["estimate", sim / "series.csv", "--M", "2", "--bic",
                    "--out-dir", out])
        assert code == EXIT_OK
        table = (out / "bic_table.csv").read_text().splitlines()
        assert table[0].startswith("# manifest_sha256=")
        assert table[1].split(",")[:4] == ["stage", "lambda", "alpha", "bic"]
        assert len(table) > 12

    def test_missing_file_is_input_error(self, tmp_path):
        code = run(["estimate", tmp_path / "absent.csv", "--K", "5",
                    "--lambda", "1", "--out-dir", tmp_path])
        assert code == EXIT_INPUT
        assert not (tmp_path / "edges.json").exists()

    def test_malformed_csv_is_input_error(self, tmp_path):
        bad = tmp_path / "bad.csv"
        bad.write_text("1.0,2.0\n3.0,oops\n")
        assert run(["estimate", bad, "--K", "5", "--lambda", "1",
                    "--out-dir", tmp_path]) == EXIT_INPUT

    def test_even_width_is_usage_error(self, tmp_path):
        rng = np.random.default_rng(1)
        csv_path = tmp_path / "x.csv"
        csv_path.write_text(
            "\n".join(",".join(f"{v:.6g}" for v in row)
                      for row in rng.standard_normal((64, 3))) + "\n")
        assert run(["estimate", csv_path, "--K", "4", "--lambda", "1",
                    "--out-dir", tmp_path]) == EXIT_USAGE

    def test_oversized_width_is_usage_error(self, tmp_path):
        rng = np.random.default_rng(2)
        csv_path = tmp_path / "x.csv"
        csv_path.write_text(
            "\n".join(",".join(f"{v:.6g}" for v in row)
                      for row in rng.standard_normal((64, 3))) + "\n")
        assert run(["estimate", csv_path, "--K", "33", "--lambda", "1",
                    "--out-dir", tmp_path]) == EXIT_USAGE

    def test_missing_lambda_is_usage_error(self, tmp_path):
        csv_path = tmp_path / "x.csv"
        csv_path.write_text("\n".join("0.1,0.2,0.3" for _ in range(64)) + "\n")
        assert run(["estimate", csv_path, "--K", "5",
                    "--out-dir", tmp_path]) == EXIT_USAGE

    def test_header_autodetect_and_no_header(self, tmp_path):
        rng = np.random.default_rng(3)
        data = rng.standard_normal((64, 2))
        body = "\n".join(",".join(f"{v:.6g}" for v in row) for row in data)
        with_header = tmp_path / "h.csv"
        with_header.write_text("alpha,beta\n" + body + "\n")
        out = tmp_path / "out"
        code = run(["estimate", with_header, "--K", "3", "--lambda", "10",
                    "--out-dir", out])
        assert code == EXIT_OK
        edges = json.loads((out / "edges.json").read_text())
        assert edges["columns"] == ["alpha", "beta"]
        # --no-header on a headered file must fail as input error
        assert run(["estimate", with_header, "--no-header", "--K", "3",
                    "--lambda", "10", "--out-dir", tmp_path]) == EXIT_INPUT


class TestBenchmark:
    def test_tiny_run_schema(self, tmp_path):
        out = tmp_path / "bench"
        code = run(["benchmark", "--runs", "1", "--n-list", "512", "--M", "4",
                    "--communities", "4", "--seed", "0", "--out-dir", out])
        assert code == EXIT_OK
        lines = (out / "benchmark.csv").read_text().splitlines()
        assert lines[0].startswith("# manifest_sha256=")
        header = lines[1].split(",")
        assert header[:5] == ["method", "n", "runs", "f1_mean", "f1_std"]
        rows = [dict(zip(header, line.split(","))) for line in lines[2:]]
        assert {r["method"] for r in rows} == {"proposed", "iid"}
        for r in rows:
            assert 0.0 <= float(r["f1_mean"]) <= 1.0
        assert (out / "benchmark_runs.csv").exists()
        assert (out / "benchmark_f1.png").exists()
        assert (out / "benchmark_timing.png").exists()

    def test_deterministic_given_seed(self, tmp_path):
        outs = []
        for name in ("r1", "r2"):
            out = tmp_path / name
            assert run(["benchmark", "--runs", "1", "--n-list", "256", "--M", "2",
                        "--communities", "2", "--community-size", "4",
                        "--seed", "7", "--methods", "proposed", "--out-dir", out,
                        "--no-figures"]) == EXIT_OK
            lines = (out / "benchmark_runs.csv").read_text().splitlines()
            header = lines[1].split(",")
            drop = header.index("seconds")  # wall-clock is the one non-deterministic column
            outs.append([
                [cell for i, cell in enumerate(line.split(",")) if i != drop]
                for line in lines[2:]
            ])
        assert outs[0] == outs[1]

    def test_unknown_method_is_usage_error(self, tmp_path):
        assert run(["benchmark", "--methods", "nonsense", "--runs", "1",
                    "--n-list", "256", "--out-dir", tmp_path]) == EXIT_USAGE
