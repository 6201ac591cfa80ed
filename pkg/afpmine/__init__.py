from afpmine import (
    logging_util,
    math,
    data,
    objective,
    bounds,
    search,
    oracle,
    report,
    workflow,
    app,
)
from afpmine.data import (
    Error,
    TransactionDatabase,
    VerticalIndex,
    build_vertical,
    load_fimi,
    convert_categorical,
    read_categorical_csv,
    generate_synthetic,
)
from afpmine.objective import (
    Pattern,
    EvalState,
    objective_value,
    exact_objective_value,
)
from afpmine.bounds import (
    BoundContext,
    ub_theorem1,
    ub_theorem2,
    ub_theorem3,
    ub_general,
)
from afpmine.search import SearchConfig, SearchResult, abb_best, abb_topk
from afpmine.oracle import (
    exhaustive_best,
    exhaustive_topk,
    top_n_frequent,
    powerset_support_sum,
    coverage,
)
from afpmine.report import RunReport

__version__ = "0.1.0"
