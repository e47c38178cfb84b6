import json

import numpy as np
import pytest

from specbench.cli import main
from specbench.data import SampleSet
from specbench.modelio import TrainedModel


def run(argv):
    return main(argv)


class TestGenData:
    def test_writes_header_plus_records(self, tmp_path):
        out = tmp_path / "data.csv"
        assert run(["gen-data", "--count", "50", "--seed", "42", "--out", str(out)]) == 0
        lines = out.read_text().splitlines()
        assert len(lines) == 51
        assert lines[0].startswith("co_M,ni_M,a350")

    def test_byte_identical_for_same_seed(self, tmp_path):
        a = tmp_path / "a.csv"
        b = tmp_path / "b.csv"
        run(["gen-data", "--count", "40", "--seed", "7", "--out", str(a)])
        run(["gen-data", "--count", "40", "--seed", "7", "--out", str(b)])
        assert a.read_bytes() == b.read_bytes()

    def test_custom_bands(self, tmp_path):
        bands = tmp_path / "bands.ini"
        bands.write_text(
            "[Co]\ncenter_nm = 500\nsigma_nm = 20\neps_peak = 4.0\n"
            "[Ni]\ncenter_nm = 400\nsigma_nm = 25\neps_peak = 5.0\n"
        )
        out = tmp_path / "data.csv"
        assert run(
            ["gen-data", "--count", "10", "--seed", "0", "--bands", str(bands), "--out", str(out)]
        ) == 0

    def test_invalid_spec_is_domain_error(self, tmp_path, capsys):
        out = tmp_path / "x.csv"
        assert run(["gen-data", "--count", "0", "--out", str(out)]) == 1
        assert "error" in capsys.readouterr().err


class TestUsageErrors:
    def test_unknown_subcommand_exits_2(self):
        with pytest.raises(SystemExit) as excinfo:
            run(["frobnicate"])
        assert excinfo.value.code == 2

    def test_unknown_flag_exits_2(self):
        with pytest.raises(SystemExit) as excinfo:
            run(["gen-data", "--frob", "1"])
        assert excinfo.value.code == 2


@pytest.fixture(scope="module")
def pipeline(tmp_path_factory):
    """gen-data -> split -> train -> train-dual on a small corpus."""
    root = tmp_path_factory.mktemp("pipeline")
    data = root / "data.csv"
    run(["gen-data", "--count", "200", "--seed", "3", "--out", str(data)])
    prefix = str(root / "set")
    run(["split", "--data", str(data), "--seed", "4", "--out-prefix", prefix])
    fwd = root / "forward.json"
    dual = root / "dual.json"
    common = [
        "--train", f"{prefix}_train.csv", "--test", f"{prefix}_test.csv",
        "--norm", f"{prefix}_norm.json", "--hidden", "5",
        "--max-epochs", "5", "--seed", "1",
    ]
    run(["train", *common, "--out", str(fwd), "--trace", str(root / "fwd_trace.csv")])
    run(["train-dual", *common, "--out", str(dual)])
    return root, prefix, fwd, dual


class TestSplit:
    def test_sizes_and_norm_file(self, pipeline):
        root, prefix, _, _ = pipeline
        train = SampleSet.load_csv(f"{prefix}_train.csv")
        test = SampleSet.load_csv(f"{prefix}_test.csv")
        val = SampleSet.load_csv(f"{prefix}_validation.csv")
        assert (len(train), len(test), len(val)) == (140, 20, 40)
        norm = json.loads((root / "set_norm.json").read_text())
        assert "co_M" in norm and "a600" in norm


class TestTrain:
    def test_model_files_written(self, pipeline):
        _, _, fwd, dual = pipeline
        fwd_model = TrainedModel.load(fwd)
        dual_model = TrainedModel.load(dual)
        assert fwd_model.topology.input_count == 126
        assert dual_model.topology.output_count == 126
        assert fwd_model.provenance["seed"] == 1

    def test_trace_written(self, pipeline):
        root, *_ = pipeline
        lines = (root / "fwd_trace.csv").read_text().splitlines()
        assert lines[0] == "epoch,train_mse,test_mse"
        assert len(lines) == 6


class TestEval:
    def test_report_files(self, pipeline, tmp_path, capsys):
        root, prefix, fwd, _ = pipeline
        out = tmp_path / "report"
        assert run(
            ["eval", "--model", str(fwd), "--data", f"{prefix}_validation.csv",
             "--out-prefix", str(out)]
        ) == 0
        assert "[Co]" in capsys.readouterr().out
        lines = (tmp_path / "report.csv").read_text().splitlines()
        assert lines[0] == "label,r"
        assert len(lines) == 3  # header + [Co] + [Ni]


class TestPredict:
    def test_dual_prediction(self, pipeline, capsys):
        _, _, _, dual = pipeline
        assert run(["predict", "--model", str(dual), "--co", "0.05", "--ni", "0.05"]) == 0
        out = capsys.readouterr().out.splitlines()
        assert len(out) == 126
        assert out[0].startswith("350,")

    def test_forward_prediction(self, pipeline, capsys):
        _, _, fwd, _ = pipeline
        values = ",".join(["0.1"] * 126)
        assert run(["predict", "--model", str(fwd), "--absorbance", values]) == 0
        assert "co_M=" in capsys.readouterr().out

    def test_wrong_count_is_domain_error(self, pipeline, capsys):
        _, _, fwd, _ = pipeline
        values = ",".join(["0.1"] * 125)
        assert run(["predict", "--model", str(fwd), "--absorbance", values]) == 1
        assert "125" in capsys.readouterr().err

    def test_missing_flags(self, pipeline, capsys):
        _, _, _, dual = pipeline
        assert run(["predict", "--model", str(dual)]) == 1


class TestAchem:
    def test_small_search_runs(self, pipeline, tmp_path):
        _, prefix, _, _ = pipeline
        best = tmp_path / "best.json"
        history = tmp_path / "history.csv"
        rc = run([
            "achem",
            "--train", f"{prefix}_train.csv", "--test", f"{prefix}_test.csv",
            "--validation", f"{prefix}_validation.csv", "--norm", f"{prefix}_norm.json",
            "--direction", "forward",
            "--population", "4", "--cycles", "2", "--collisions", "2",
            "--budget", "2", "--width-max", "6", "--max-hidden-layers", "1",
            "--seed", "0",
            "--best-out", str(best), "--history-out", str(history),
        ])
        assert rc == 0
        payload = json.loads(best.read_text())
        assert payload["widths"][0] <= 6
        assert history.read_text().startswith("cycle,best_fitness")
