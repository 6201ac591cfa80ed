import afpmine as afp
import json
import pandas as pd
import pytest
from afpmine.app import EXIT_DATA, EXIT_GUARD, EXIT_OK, EXIT_USAGE, main
from io import StringIO


def _run(capsys, *argv):
    status = main(list(argv))
    return status, capsys.readouterr().out


def test_mine_best_on_tiny(capsys, tiny_path):
    status, out = _run(capsys, "mine", "--input", tiny_path, "--k", "1", "--ar", "1", "--delta", "0")
    assert status == EXIT_OK
    report = afp.RunReport.from_json(out)
    (best,) = report.patterns
    assert best["items"] == [1, 2]
    assert best["objective"] == pytest.approx(4.6667, abs=1e-4)
    assert report.data["result"]["ar_final"] == 1.0
    assert report.data["dataset"] == dict(source=tiny_path, n=3, m=2, q_max=2)
    assert report.data["config"] == dict(k=1, ar0=1.0, epoch=1000, delta=0.0, max_len=0)


def test_mine_topk_returns_all_patterns(capsys, tiny_path):
    status, out = _run(capsys, "mine", "--input", tiny_path, "--k", "5", "--delta", "0")
    assert status == EXIT_OK
    assert len(afp.RunReport.from_json(out).patterns) == 3


def test_mine_missing_file(capsys, tmp_path):
    status, out = _run(capsys, "mine", "--input", str(tmp_path / "missing.dat"))
    assert status == EXIT_DATA
    assert out == ""


def test_mine_parse_error(capsys, tmp_path):
    path = tmp_path / "bad.dat"
    path.write_text("1 2\nx\n")
    status, out = _run(capsys, "mine", "--input", str(path))
    assert status == EXIT_DATA
    assert out == ""


@pytest.mark.parametrize(
    "flags",
    [["--ar", "0.5"], ["--epoch", "0"], ["--delta", "-1"], ["--k", "0"]],
)
def test_mine_invalid_flag_values(capsys, tiny_path, flags):
    status, out = _run(capsys, "mine", "--input", tiny_path, *flags)
    assert status == EXIT_USAGE
    assert out == ""


def test_unparseable_flag_is_usage_error(tiny_path):
    with pytest.raises(SystemExit) as info:
        main(["mine", "--input", tiny_path, "--k", "many"])
    assert info.value.code == EXIT_USAGE


def test_mine_is_deterministic(capsys, tmp_path):
    path = str(tmp_path / "gen.dat")
    assert main(["gen", "--n", "40", "--m", "7", "--density", "0.4", "--seed", "3", "--output", path]) == EXIT_OK
    flags = ["mine", "--input", path, "--k", "3", "--epoch", "4"]
    _, first = _run(capsys, *flags)
    _, second = _run(capsys, *flags)
    a, b = afp.RunReport.from_json(first), afp.RunReport.from_json(second)
    assert a.without_timing() == b.without_timing()
    assert a.patterns


def test_mine_extras_and_report_file(capsys, tiny_path, tmp_path):
    outpath = tmp_path / "report.json"
    status, out = _run(
        capsys,
        "mine",
        "--input",
        tiny_path,
        "--k",
        "2",
        "--coverage",
        "--show-positions",
        "--output",
        str(outpath),
    )
    assert status == EXIT_OK
    assert out == ""
    report = afp.RunReport.load(str(outpath))
    assert report == afp.RunReport.from_json(report.to_json())
    for entry in report.patterns:
        assert set(entry["coverage"]) == {"hits", "powerset_size", "tkp_size", "coverage"}
        assert len(entry["positions"]) == entry["length"]

    status, out = _run(capsys, "eval", "--input", tiny_path, "--report", str(outpath))
    assert status == EXIT_OK
    evaluated = json.loads(out)
    assert [e["coverage"] for e in evaluated] == [
        p["coverage"]["coverage"] for p in report.patterns
    ]


def test_eval_inline_pattern(capsys, tiny_path):
    status, out = _run(capsys, "eval", "--input", tiny_path, "--pattern", "2,1")
    assert status == EXIT_OK
    (entry,) = json.loads(out)
    assert entry["items"] == [1, 2]
    assert entry["tkp_size"] == 3
    assert entry["hits"] == 3
    assert entry["coverage"] == 1.0


def test_eval_unknown_item(capsys, tiny_path):
    status, out = _run(capsys, "eval", "--input", tiny_path, "--pattern", "1,99")
    assert status == EXIT_DATA
    assert out == ""


@pytest.mark.parametrize("flags", [[], ["--pattern", "1", "--report", "r.json"], ["--pattern", "a,b"]])
def test_eval_flag_errors(capsys, tiny_path, flags):
    status, _ = _run(capsys, "eval", "--input", tiny_path, *flags)
    assert status == EXIT_USAGE


def test_oracle_modes(capsys, tiny_path):
    _, out = _run(capsys, "oracle", "--input", tiny_path, "--best")
    best = json.loads(out)
    assert best["items"] == [1, 2]
    assert best["objective"] == pytest.approx(14 / 3)

    _, out = _run(capsys, "oracle", "--input", tiny_path, "--top-n", "3")
    assert [e["support"] for e in json.loads(out)] == [3, 2, 2]

    _, out = _run(capsys, "oracle", "--input", tiny_path, "--powerset-sum", "--pattern", "1,2")
    assert json.loads(out) == [dict(items=[1, 2], powerset_support_sum=7)]


def test_oracle_guard_refusal(capsys, tmp_path):
    path = tmp_path / "wide.dat"
    path.write_text(" ".join(str(i) for i in range(24)) + "\n")
    status, out = _run(capsys, "oracle", "--input", str(path), "--best")
    assert status == EXIT_GUARD
    assert out == ""
    status, _ = _run(capsys, "oracle", "--input", str(path), "--best", "--max-len", "2")
    assert status == EXIT_OK


def test_gen_writes_loadable_file(tmp_path):
    path = str(tmp_path / "gen.dat")
    assert main(["gen", "--n", "10", "--m", "6", "--density", "0.5", "--seed", "7", "--output", path]) == EXIT_OK
    assert afp.load_fimi(path) == afp.generate_synthetic(10, 6, 0.5, seed=7)


def test_gen_bad_parameters(tmp_path):
    path = str(tmp_path / "gen.dat")
    status = main(["gen", "--n", "10", "--m", "6", "--density", "0", "--output", path])
    assert status == EXIT_USAGE


def test_gen_unwritable_path(tmp_path):
    path = str(tmp_path / "no" / "such" / "dir" / "gen.dat")
    status = main(["gen", "--n", "3", "--m", "3", "--density", "0.5", "--output", path])
    assert status == EXIT_DATA


def test_sweep_rows(capsys, tiny_path):
    status, out = _run(
        capsys, "sweep", "--input", tiny_path, "--parameter", "epoch", "--values", "200", "600", "1000"
    )
    assert status == EXIT_OK
    table = pd.read_csv(StringIO(out), index_col="epoch")
    assert table.index.tolist() == [200, 600, 1000]
    assert {"objective", "ar_final", "elapsed"} <= set(table.columns)
    assert table.objective.tolist() == pytest.approx([14 / 3] * 3)


def test_sweep_rejects_fractional_epoch(capsys, tiny_path):
    status, _ = _run(capsys, "sweep", "--input", tiny_path, "--values", "2.5")
    assert status == EXIT_USAGE


def test_convert_and_mine_csv(capsys, tmp_path):
    csv = tmp_path / "records.csv"
    csv.write_text("red,S\nred,S\nblue,?\n")
    fimi, labels = tmp_path / "records.dat", tmp_path / "labels.tsv"
    status = main(
        ["convert", "--input", str(csv), "--output", str(fimi), "--labels", str(labels)]
    )
    assert status == EXIT_OK
    assert afp.load_fimi(str(fimi)).n == 3
    assert set(pd.read_csv(labels, sep="\t").label) == {"0=blue", "0=red", "1=S"}

    status, out = _run(capsys, "mine", "--input", str(csv), "--format", "csv", "--delta", "0")
    assert status == EXIT_OK
    (best,) = afp.RunReport.from_json(out).patterns
    assert best["labels"] == ["0=red", "1=S"]


def test_data_info(capsys, tiny_path):
    status, out = _run(capsys, "data_info", tiny_path, "--header")
    assert status == EXIT_OK
    table = pd.read_csv(StringIO(out), sep="\t", index_col="path")
    assert table.loc[tiny_path, "n"] == 3
    assert table.loc[tiny_path, "q_max"] == 2


def test_bench_table_format(capsys):
    status, out = _run(capsys, "bench", "--n", "60", "--m", "8")
    assert status == EXIT_OK
    table = pd.read_csv(StringIO(out), sep="\t", index_col="dataset")
    assert table.columns.tolist() == afp.workflow.BENCHMARK_COLUMNS
    assert len(table) == 2


def test_no_command_prints_help(capsys):
    assert main([]) == EXIT_USAGE
    assert "COMMAND" in capsys.readouterr().out


def test_mine_invalid_utf8_is_data_error(capsys, tmp_path):
    path = tmp_path / "binary.dat"
    path.write_bytes(b"1 2\n\xff\xfe 3\n")
    status, out = _run(capsys, "mine", "--input", str(path))
    assert status == EXIT_DATA
    assert out == ""


def test_repeated_pattern_ids_collapse(capsys, tiny_path):
    status, out = _run(capsys, "eval", "--input", tiny_path, "--pattern", "1,1")
    assert status == EXIT_OK
    (entry,) = json.loads(out)
    assert entry["items"] == [1]
    assert entry["hits"] == 1
    assert entry["coverage"] == 1.0

    status, out = _run(
        capsys, "oracle", "--input", tiny_path, "--powerset-sum", "--pattern", "2,2"
    )
    assert status == EXIT_OK
    assert json.loads(out) == [dict(items=[2], powerset_support_sum=2)]
