import afpmine as afp
import pytest
from afpmine.data import ParameterError
from afpmine.search import SearchConfig


def test_load_database_formats(tiny_path, tmp_path):
    assert afp.workflow.load_database(tiny_path).n == 3
    csv = tmp_path / "records.csv"
    csv.write_text("a,x\na,y\n")
    assert afp.workflow.load_database(str(csv), format="csv").m == 3
    with pytest.raises(ParameterError):
        afp.workflow.load_database(tiny_path, format="arff")


def test_mine_report_round_trip(tiny_db):
    report = afp.workflow.mine_report(
        tiny_db, SearchConfig(k=2), source="tiny", with_coverage=True
    )
    assert afp.RunReport.from_json(report.to_json()) == report
    assert report.to_json() == afp.RunReport.from_json(report.to_json()).to_json()
    assert set(report.data) == set(afp.RunReport.sections)


def test_report_requires_sections():
    with pytest.raises(ValueError):
        afp.RunReport(dict(config={}, dataset={}))


def test_sweep_over_delta(tiny_db):
    table = afp.workflow.sweep(tiny_db, "delta", [0.0, 0.5])
    assert table.index.name == "delta"
    assert table.objective.tolist() == pytest.approx([14 / 3, 14 / 3])


def test_sweep_rejects_other_parameters(tiny_db):
    with pytest.raises(ParameterError):
        afp.workflow.sweep(tiny_db, "k", [1, 2])


def test_benchmark_dense_and_sparse():
    n, m, seed = 500, 15, 42
    datasets = {
        "dense": afp.generate_synthetic(n, m, 0.8, seed),
        "sparse": afp.generate_synthetic(n, m, 0.1, seed),
    }
    table = afp.workflow.benchmark_table(datasets)
    assert table.columns.tolist() == afp.workflow.BENCHMARK_COLUMNS
    for name in datasets:
        row = table.loc[name]
        assert 0.0 <= row["Coverage"] <= 1.0
        assert 1.0 <= row["Final Approximation Ratio (ar*)"] <= 10.0
        assert row["Objective Value"] > 0
        assert row["Execution Time (sec)"] >= 0
    # Items are independent, so dense databases spread support over many
    # subsets and cover less of the top frequent itemsets.
    assert table.loc["dense", "Coverage"] == pytest.approx(333 / 1023, abs=5e-4)
    assert table.loc["sparse", "Coverage"] == pytest.approx(3 / 7, abs=5e-4)
    assert table.loc["dense", "Coverage"] < table.loc["sparse", "Coverage"]
