import afpmine as afp
from copy import deepcopy
import argparse
import logging


class ArgumentConstraintError(Exception):
    pass


class ArgumentParser(argparse.ArgumentParser):
    "Usage errors exit with status 1."

    def error(self, message):
        self.print_usage()
        self.exit(1, f"{self.prog}: error: {message}\n")


def add_input_arguments(parser, nargs=None):
    if nargs is None:
        parser.add_argument(
            "--input",
            "-i",
            required=True,
            help="Path of the transaction database.",
        )
    else:
        parser.add_argument(
            "input",
            nargs=nargs,
            help="Path(s) of transaction databases.",
        )
    parser.add_argument(
        "--format",
        "-f",
        default="fimi",
        choices=["fimi", "csv"],
        help=(
            "Input format: 'fimi' is one transaction per line as whitespace-"
            "separated non-negative integer item ids; 'csv' is one categorical "
            "record per row, itemized as attribute=value pairs."
        ),
    )
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


def load_input(args, path=None):
    return afp.workflow.load_database(
        args.input if path is None else path,
        format=args.format,
        csv_header=args.csv_header,
        missing=args.missing,
    )


def add_search_arguments(parser):
    parser.add_argument(
        "--k",
        "-k",
        type=int,
        default=1,
        help="Number of patterns to return.",
    )
    parser.add_argument(
        "--ar",
        type=float,
        default=1.0,
        help="Initial approximation ratio (at least 1; 1 is exact).",
    )
    parser.add_argument(
        "--epoch",
        type=int,
        default=1000,
        help="Counted search nodes between approximation ratio increases.",
    )
    parser.add_argument(
        "--delta",
        type=float,
        default=0.1,
        help="Approximation ratio increase per epoch (0 keeps it constant).",
    )
    parser.add_argument(
        "--max-len",
        type=int,
        default=0,
        help="Longest pattern considered (0 means no limit).",
    )


def transform_search_parameter_inputs(args):
    args = deepcopy(args)
    try:
        args.search_config = afp.search.SearchConfig(
            ar0=args.ar,
            epoch=args.epoch,
            delta=args.delta,
            k=args.k,
            max_len=args.max_len,
        )
    except afp.data.ParameterError as err:
        raise ArgumentConstraintError(str(err)) from err
    return args


def add_pattern_arguments(parser):
    parser.add_argument(
        "--pattern",
        "-p",
        action="append",
        default=[],
        help="Pattern as comma-separated external item ids, e.g. '3,7,12'; may be repeated.",
    )


def parse_pattern_strings(pattern_strings):
    patterns = []
    for text in pattern_strings:
        tokens = [t.strip() for t in text.split(",") if t.strip()]
        if not tokens:
            raise ArgumentConstraintError(f"Empty pattern {text!r}.")
        if not all(t.isascii() and t.isdigit() for t in tokens):
            raise ArgumentConstraintError(
                f"Pattern {text!r} must list non-negative integer item ids."
            )
        # Patterns are sets; repeated ids collapse.
        patterns.append(sorted({int(t) for t in tokens}))
    return patterns


class AppInterface:
    app_name = None
    description = None

    @classmethod
    def add_subparser_arguments(cls, subparser):
        raise NotImplementedError(
            "Subclasses of AppInterface must implement a `add_subparser_arguments` method."
        )

    @classmethod
    def transform_app_parameter_inputs(cls, args):
        return args

    @classmethod
    def _setup_logging(cls, args):
        if args.debug:
            logging_level = logging.DEBUG
        elif args.verbose:
            logging_level = logging.INFO
        else:
            logging_level = logging.WARNING
        logging.getLogger().setLevel(logging_level)
        logging.debug(f"Set logging level to {logging_level}")

    @classmethod
    def run(cls, args):
        raise NotImplementedError(
            "Subclasses of AppInterface must implement a `run` method."
        )

    def __init__(self, args):
        """Run the application."""
        self._setup_logging(args)
        original_args = args
        args = self.transform_app_parameter_inputs(deepcopy(args))
        logging.debug("Args before transformations: %s", original_args)
        logging.debug("Args after transformations: %s", args)
        self.run(args)

    @classmethod
    def _add_app_subparser(cls, app_subparsers):
        subparser = app_subparsers.add_parser(
            cls.app_name,
            help=cls.description,
            description=cls.description,
            formatter_class=argparse.ArgumentDefaultsHelpFormatter,
        )
        subparser.set_defaults(_subcommand=cls)
        subparser.add_argument(
            "--verbose",
            "-v",
            action="store_true",
            help="Print info messages to stderr.",
        )
        subparser.add_argument(
            "--debug",
            action="store_true",
            help="Print debug messages to stderr.",
        )
        cls.add_subparser_arguments(subparser)
