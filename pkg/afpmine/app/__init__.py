import argparse
import json
import sys
import afpmine as afp
import pandas as pd
import logging
from afpmine.app.components import (
    AppInterface,
    ArgumentConstraintError,
    ArgumentParser,
    add_input_arguments,
    load_input,
    add_search_arguments,
    transform_search_parameter_inputs,
    add_pattern_arguments,
    parse_pattern_strings,
)
from afpmine.data import (
    DataConstraintError,
    DataParseError,
    DataShapeError,
    ParameterError,
    UnknownItemError,
)
from afpmine.objective import ContractError
from afpmine.oracle import EnumerationGuardError


EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DATA = 2
EXIT_GUARD = 3


def _write_text(text, outpath=None):
    if outpath:
        with open(outpath, "w", encoding="utf-8") as f:
            f.write(text)
    else:
        sys.stdout.write(text)


def _dump_json(obj):
    return json.dumps(obj, sort_keys=True, indent=1) + "\n"


class Mine(AppInterface):
    app_name = "mine"
    description = "Find the top-k approximate frequent patterns of a database."

    @classmethod
    def add_subparser_arguments(cls, parser):
        add_input_arguments(parser)
        add_search_arguments(parser)
        parser.add_argument(
            "--coverage",
            action="store_true",
            help="Add a coverage report for each returned pattern.",
        )
        parser.add_argument(
            "--show-positions",
            action="store_true",
            help="Add internal (support-ordered) positions to each pattern.",
        )
        parser.add_argument(
            "--output",
            "-o",
            help="Write the report here instead of standard output.",
        )

    @classmethod
    def transform_app_parameter_inputs(cls, args):
        return transform_search_parameter_inputs(args)

    @classmethod
    def run(cls, args):
        db = load_input(args)
        report = afp.workflow.mine_report(
            db,
            args.search_config,
            source=args.input,
            with_coverage=args.coverage,
            show_positions=args.show_positions,
        )
        _write_text(report.to_json(), args.output)


class Eval(AppInterface):
    app_name = "eval"
    description = "Compute the coverage of given patterns against top frequent itemsets."

    @classmethod
    def add_subparser_arguments(cls, parser):
        add_input_arguments(parser)
        add_pattern_arguments(parser)
        parser.add_argument(
            "--report",
            "-r",
            help="Evaluate the patterns of a report written by `afpmine mine`.",
        )

    @classmethod
    def transform_app_parameter_inputs(cls, args):
        if bool(args.pattern) == bool(args.report):
            raise ArgumentConstraintError(
                "One and only one of --pattern and --report must be passed."
            )
        args.pattern = parse_pattern_strings(args.pattern)
        return args

    @classmethod
    def run(cls, args):
        db = load_input(args)
        if args.report:
            try:
                report = afp.report.RunReport.load(args.report)
            except (ValueError, KeyError) as err:
                raise DataShapeError(f"{args.report} is not a mining report: {err}") from err
            item_lists = [p["items"] for p in report.patterns]
        else:
            item_lists = args.pattern
        patterns = [db.positions_of(items) for items in item_lists]
        reports = afp.workflow.evaluate_coverage(db, patterns)
        out = []
        for items, cov in zip(item_lists, reports):
            out.append(dict(items=sorted(set(items)), **cov.to_dict()))
        _write_text(_dump_json(out))


class Oracle(AppInterface):
    app_name = "oracle"
    description = "Run an exhaustive reference computation on a small database."

    @classmethod
    def add_subparser_arguments(cls, parser):
        add_input_arguments(parser)
        mode = parser.add_mutually_exclusive_group(required=True)
        mode.add_argument(
            "--best",
            action="store_true",
            help="Best pattern by full enumeration.",
        )
        mode.add_argument(
            "--top-n",
            type=int,
            help="The N itemsets of largest support.",
        )
        mode.add_argument(
            "--powerset-sum",
            action="store_true",
            help="Sum of supports over the non-empty subsets of each --pattern.",
        )
        add_pattern_arguments(parser)
        parser.add_argument(
            "--max-len",
            type=int,
            default=0,
            help="Longest pattern enumerated by --best (0 means no limit).",
        )

    @classmethod
    def transform_app_parameter_inputs(cls, args):
        if args.powerset_sum and not args.pattern:
            raise ArgumentConstraintError("--powerset-sum needs at least one --pattern.")
        if args.top_n is not None and args.top_n < 1:
            raise ArgumentConstraintError(f"--top-n must be positive, got {args.top_n}.")
        if args.max_len < 0:
            raise ArgumentConstraintError(f"--max-len must be >= 0, got {args.max_len}.")
        args.pattern = parse_pattern_strings(args.pattern)
        return args

    @classmethod
    def run(cls, args):
        db = load_input(args)
        if args.best:
            pattern, value = afp.oracle.exhaustive_best(db, max_len=args.max_len)
            items = db.ids_of(pattern) if pattern is not None else []
            out = dict(items=items, length=len(items), objective=value)
        elif args.top_n is not None:
            out = [
                dict(items=db.ids_of(itemset.items), support=itemset.support)
                for itemset in afp.oracle.top_n_frequent(db, args.top_n)
            ]
        else:
            out = [
                dict(
                    items=sorted(items),
                    powerset_support_sum=afp.oracle.powerset_support_sum(
                        db, db.positions_of(items)
                    ),
                )
                for items in args.pattern
            ]
        _write_text(_dump_json(out))


class Gen(AppInterface):
    app_name = "gen"
    description = "Write a synthetic database with independent items."

    @classmethod
    def add_subparser_arguments(cls, parser):
        parser.add_argument("--n", type=int, required=True, help="Transactions.")
        parser.add_argument("--m", type=int, required=True, help="Items.")
        parser.add_argument(
            "--density",
            type=float,
            required=True,
            help="Probability of each item appearing in each transaction.",
        )
        parser.add_argument("--seed", type=int, default=0, help="Random seed.")
        parser.add_argument(
            "--output", "-o", required=True, help="Path of the FIMI file to write."
        )

    @classmethod
    def transform_app_parameter_inputs(cls, args):
        try:
            args.db = afp.data.generate_synthetic(args.n, args.m, args.density, args.seed)
        except ParameterError as err:
            raise ArgumentConstraintError(str(err)) from err
        return args

    @classmethod
    def run(cls, args):
        args.db.write_fimi(args.output)
        logging.info(f"Wrote {args.db} to {args.output}.")


class Sweep(AppInterface):
    app_name = "sweep"
    description = "Mine repeatedly over a grid of epoch or delta values."

    @classmethod
    def add_subparser_arguments(cls, parser):
        add_input_arguments(parser)
        add_search_arguments(parser)
        parser.add_argument(
            "--parameter",
            default="epoch",
            choices=afp.workflow.SWEEP_PARAMETERS,
            help="Search parameter varied across runs.",
        )
        parser.add_argument(
            "--values",
            nargs="+",
            type=float,
            default=[200, 400, 600, 800, 1000],
            help="Values taken by the swept parameter.",
        )
        parser.add_argument(
            "--output", "-o", help="Write the CSV here instead of standard output."
        )

    @classmethod
    def transform_app_parameter_inputs(cls, args):
        args = transform_search_parameter_inputs(args)
        if args.parameter == "epoch":
            if not all(float(v).is_integer() and v >= 1 for v in args.values):
                raise ArgumentConstraintError(
                    f"Epoch values must be positive integers, got {args.values}."
                )
            args.values = [int(v) for v in args.values]
        elif not all(v >= 0 for v in args.values):
            raise ArgumentConstraintError(
                f"Delta values must be non-negative, got {args.values}."
            )
        return args

    @classmethod
    def run(cls, args):
        db = load_input(args)
        table = afp.workflow.sweep(db, args.parameter, args.values, args.search_config)
        table.to_csv(args.output if args.output else sys.stdout)


class Convert(AppInterface):
    app_name = "convert"
    description = "Itemize a categorical CSV into a FIMI file."

    @classmethod
    def add_subparser_arguments(cls, parser):
        parser.add_argument("--input", "-i", required=True, help="Categorical CSV.")
        parser.add_argument(
            "--csv-header",
            action="store_true",
            help="Treat the first CSV row as attribute names.",
        )
        parser.add_argument(
            "--missing",
            default="?",
            help="CSV token marking a missing value (produces no item).",
        )
        parser.add_argument(
            "--output", "-o", required=True, help="Path of the FIMI file to write."
        )
        parser.add_argument(
            "--labels",
            help="Also write a TSV mapping each item id to its attribute=value label.",
        )

    @classmethod
    def run(cls, args):
        db = afp.data.read_categorical_csv(
            args.input, header=args.csv_header, missing_marker=args.missing
        )
        db.write_fimi(args.output)
        if args.labels:
            labels = pd.Series(db.labels, name="label").rename_axis(index="item")
            labels.sort_index().to_csv(args.labels, sep="\t", header=True)


class DescribeData(AppInterface):
    app_name = "data_info"
    description = "Summarize the size and density of transaction databases."

    @classmethod
    def add_subparser_arguments(cls, parser):
        add_input_arguments(parser, nargs="+")
        parser.add_argument(
            "--header",
            action="store_true",
            help="Print the header line above the summaries.",
        )

    @classmethod
    def run(cls, args):
        rows = {path: load_input(args, path=path).summary() for path in args.input}
        table = pd.DataFrame.from_dict(rows, orient="index").rename_axis(index="path")
        table.to_csv(sys.stdout, sep="\t", header=args.header)


class Benchmark(AppInterface):
    app_name = "bench"
    description = (
        "Tabulate coverage, objective, final ratio and runtime on a dense and "
        "a sparse synthetic database."
    )

    @classmethod
    def add_subparser_arguments(cls, parser):
        add_search_arguments(parser)
        parser.add_argument("--n", type=int, default=500, help="Transactions.")
        parser.add_argument("--m", type=int, default=15, help="Items.")
        parser.add_argument(
            "--dense", type=float, default=0.8, help="Density of the dense database."
        )
        parser.add_argument(
            "--sparse", type=float, default=0.1, help="Density of the sparse database."
        )
        parser.add_argument("--seed", type=int, default=42, help="Random seed.")
        parser.add_argument(
            "--output", "-o", help="Write the TSV here instead of standard output."
        )

    @classmethod
    def transform_app_parameter_inputs(cls, args):
        args = transform_search_parameter_inputs(args)
        try:
            args.datasets = {
                f"dense ({args.dense})": afp.data.generate_synthetic(
                    args.n, args.m, args.dense, args.seed
                ),
                f"sparse ({args.sparse})": afp.data.generate_synthetic(
                    args.n, args.m, args.sparse, args.seed
                ),
            }
        except ParameterError as err:
            raise ArgumentConstraintError(str(err)) from err
        return args

    @classmethod
    def run(cls, args):
        table = afp.workflow.benchmark_table(args.datasets, args.search_config)
        table.to_csv(
            args.output if args.output else sys.stdout,
            sep="\t",
            float_format="%.6g",
        )


SUBCOMMANDS = [
    # Debugging
    DescribeData,
    # Input/Output
    Convert,
    Gen,
    # Mining
    Mine,
    Sweep,
    # Evaluation
    Eval,
    Oracle,
    Benchmark,
]


def main(argv=None):
    logging.basicConfig(format="%(asctime)s %(message)s")
    parser = ArgumentParser(
        prog="afpmine",
        formatter_class=argparse.ArgumentDefaultsHelpFormatter,
        fromfile_prefix_chars="@",
    )
    parser.add_argument("--version", action="version", version=afp.__version__)

    app_subparsers = parser.add_subparsers(metavar="COMMAND")
    for subcommand in SUBCOMMANDS:
        subcommand._add_app_subparser(app_subparsers)

    args = parser.parse_args(argv)
    if not hasattr(args, "_subcommand"):
        print(parser.format_help())
        return EXIT_USAGE

    try:
        args._subcommand(args)
    except (ArgumentConstraintError, ParameterError, ContractError) as err:
        logging.error(f"Usage error: {err}")
        return EXIT_USAGE
    except (
        DataParseError,
        DataShapeError,
        DataConstraintError,
        UnknownItemError,
        OSError,
    ) as err:
        logging.error(f"Data error: {err}")
        return EXIT_DATA
    except EnumerationGuardError as err:
        logging.error(f"Refused: {err}")
        return EXIT_GUARD
    return EXIT_OK
