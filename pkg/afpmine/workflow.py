import afpmine as afp
from afpmine.data import ParameterError
from afpmine.search import SearchConfig
from dataclasses import replace
from tqdm import tqdm
import pandas as pd
import logging


SWEEP_PARAMETERS = ("epoch", "delta")

BENCHMARK_COLUMNS = [
    "Coverage",
    "Objective Value",
    "Final Approximation Ratio (ar*)",
    "Execution Time (sec)",
]


def load_database(path, format="fimi", csv_header=False, missing="?"):
    with afp.logging_util.phase_info(f"Loading {path}"):
        if format == "fimi":
            return afp.data.load_fimi(path)
        elif format == "csv":
            return afp.data.read_categorical_csv(
                path, header=csv_header, missing_marker=missing
            )
        else:
            raise ParameterError(f"Unknown input format {format!r}.")


def mine(db, cfg, index=None):
    if index is None:
        with afp.logging_util.phase_info("Building vertical index"):
            index = afp.data.build_vertical(db)
    if cfg.k == 1:
        return afp.search.abb_best(db, index, cfg)
    return afp.search.abb_topk(db, index, cfg)


def evaluate_coverage(db, patterns, index=None):
    if index is None:
        index = afp.data.build_vertical(db)
    reports = []
    with afp.logging_util.phase_info(f"Coverage of {len(patterns)} pattern(s)"):
        for pattern in patterns:
            reports.append(afp.oracle.coverage(db, pattern, index=index))
    return reports


def mine_report(
    db,
    cfg,
    source=None,
    with_coverage=False,
    show_positions=False,
):
    index = afp.data.build_vertical(db)
    result = mine(db, cfg, index=index)
    coverage_reports = None
    if with_coverage:
        coverage_reports = evaluate_coverage(
            db, [pattern for pattern, _ in result.patterns], index=index
        )
    return afp.report.RunReport.from_run(
        db,
        cfg,
        result,
        source=source,
        coverage_reports=coverage_reports,
        show_positions=show_positions,
    )


def sweep(db, parameter, values, base_cfg=None):
    """Mine once per value of ``parameter`` with everything else fixed.

    One row per run: the parameter value, best objective, final ratio and
    elapsed seconds.
    """
    if parameter not in SWEEP_PARAMETERS:
        raise ParameterError(
            f"Sweep parameter must be one of {SWEEP_PARAMETERS}, got {parameter!r}."
        )
    if base_cfg is None:
        base_cfg = SearchConfig()
    index = afp.data.build_vertical(db)
    rows = []
    pbar = tqdm(
        values,
        mininterval=1.0,
        disable=(not logging.getLogger().isEnabledFor(logging.INFO)),
    )
    for value in pbar:
        cfg = replace(base_cfg, **{parameter: value})
        result = mine(db, cfg, index=index)
        best = result.best
        rows.append(
            {
                parameter: value,
                "objective": best[1] if best else 0.0,
                "ar_final": result.ar_final,
                "nodes_visited": result.nodes_visited,
                "elapsed": result.elapsed,
            }
        )
    return pd.DataFrame(rows).set_index(parameter)


def benchmark_table(datasets, cfg=None):
    """Coverage, objective, final ratio and time of the best pattern for each
    named database.
    """
    if cfg is None:
        cfg = SearchConfig()
    rows = {}
    pbar = tqdm(
        datasets.items(),
        mininterval=1.0,
        disable=(not logging.getLogger().isEnabledFor(logging.INFO)),
    )
    for name, db in pbar:
        index = afp.data.build_vertical(db)
        result = mine(db, cfg, index=index)
        if result.best is None:
            logging.warning(f"No pattern found in {name}.")
            rows[name] = [0.0, 0.0, result.ar_final, result.elapsed]
            continue
        pattern, value = result.best
        report = afp.oracle.coverage(db, pattern, index=index)
        rows[name] = [report.coverage, value, result.ar_final, result.elapsed]
    return pd.DataFrame.from_dict(
        rows, orient="index", columns=BENCHMARK_COLUMNS
    ).rename_axis(index="dataset")
