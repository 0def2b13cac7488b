"""
Command-line interface.

Every subcommand writes a single JSON record (or CSV table) to standard
output. Errors are reported as a JSON object on standard error, with exit
code 2 for usage errors and 1 for all other errors.
"""
import argparse
import csv
import json
import logging
import sys

from raysearch import analytic
from raysearch.adversary import ratio_sweep, worst_case_ratio_det
from raysearch.config import OUTPUT_FORMATS, RunConfig
from raysearch.model import GoalPlacement
from raysearch.montecarlo import expected_ratio_mc
from raysearch.schedule import export_schedule
from raysearch.sequences import (
    WSequence,
    cyclic_convert,
    fact1_gap,
    ratio_H,
    ratio_S,
    single_robot_ratio,
    witness_check,
)
from raysearch.simulation import Simulator
from raysearch.strategies import (
    RANDOMIZED_STRATEGIES,
    STRATEGIES,
    RandomSource,
    horizon_for,
    make_plan,
)
from raysearch.utils.sequence_io import load_sequence

SCHEMA_VERSION = 1
SWEEP_COLUMNS = ("w", "lambda", "n", "ratio", "ci_low", "ci_high", "seed")

logger = logging.getLogger(__name__)


class UsageError(Exception):
    """Exception raised for malformed command lines"""


class ArgumentParser(argparse.ArgumentParser):
    """Argument parser raising :class:`UsageError` instead of exiting"""

    def error(self, message):
        raise UsageError(message)


def _number_list(text):
    return [float(item) for item in text.split(",") if item]


def _integer_list(text):
    return [int(item) for item in text.split(",") if item]


def build_parser():
    """Create the parser for all subcommands"""
    common = ArgumentParser(add_help=False)
    common.add_argument(
        "-v",
        "--verbose",
        action="count",
        default=0,
        help="increase the logging verbosity (repeatable)",
    )
    common.add_argument(
        "--format",
        dest="output_format",
        choices=OUTPUT_FORMATS,
        default="json",
        help="output format (default: json)",
    )

    instance = ArgumentParser(add_help=False)
    instance.add_argument(
        "--w", type=int, required=True, help="number of paths"
    )
    instance.add_argument(
        "--lambda",
        dest="lam",
        type=int,
        default=1,
        help="number of robots (default: 1)",
    )
    instance.add_argument(
        "--tol", type=float, help="tolerance of the optimizer for r_w"
    )

    strategy = ArgumentParser(add_help=False)
    strategy.add_argument(
        "--strategy", choices=STRATEGIES, default="det_multi", help="strategy"
    )
    strategy.add_argument("--horizon", type=int, help="number of stages")
    strategy.add_argument("--seed", type=int, help="master seed")
    strategy.add_argument(
        "--max-group-length",
        type=float,
        help="longest motion per parallel group (randomized multi-robot)",
    )

    parser = ArgumentParser(
        prog="raysearch",
        description="Search strategies for paths meeting at an origin",
    )
    commands = parser.add_subparsers(dest="command", required=True)

    commands.add_parser(
        "ratio", parents=[common, instance], help="closed-form ratios"
    )

    command = commands.add_parser(
        "plan", parents=[common, instance, strategy], help="generate a plan"
    )
    command.add_argument("--n", type=float, help="size the horizon for goal n")

    command = commands.add_parser(
        "simulate",
        parents=[common, instance, strategy],
        help="execute a strategy against a goal",
    )
    command.add_argument("--n", type=float, required=True, help="goal distance")
    command.add_argument("--path", type=int, default=0, help="goal path")
    command.add_argument(
        "--trace", action="store_true", help="include the executed trace"
    )

    command = commands.add_parser(
        "adversary",
        parents=[common, instance],
        help="worst-case goal for the deterministic strategy",
    )
    command.add_argument("--n-max", type=float, required=True)
    command.add_argument("--offset", type=float, default=1.0)

    command = commands.add_parser(
        "mc",
        parents=[common, instance],
        help="Monte Carlo estimate for the randomized strategy",
    )
    command.add_argument("--n", type=float, required=True, help="goal distance")
    command.add_argument("--path", type=int, default=0, help="goal path")
    command.add_argument("--trials", type=int, required=True)
    command.add_argument("--seed", type=int, required=True)
    command.add_argument("--workers", type=int)
    command.add_argument("--max-group-length", type=float)

    command = commands.add_parser(
        "seq", parents=[common], help="ratio sequences of a turn sequence"
    )
    command.add_argument("input", help="CSV or JSON file with the sequence")
    command.add_argument("--w", type=int, help="number of paths")
    command.add_argument("--window", type=int, default=50)
    command.add_argument(
        "--witness", type=int, metavar="J", help="find a witness for S_J"
    )

    command = commands.add_parser(
        "gfun", parents=[common], help="evaluate the functional G_w"
    )
    command.add_argument("--w", type=int, required=True, help="number of paths")
    command.add_argument("--epsilon", type=float, required=True)
    command.add_argument("--rate", type=float, help="tail rate (default: r_w)")
    command.add_argument(
        "--prefix", type=_number_list, default=(), help="s_0,...,s_k-1"
    )
    command.add_argument(
        "--trunc-tol", dest="formula_tol", type=float, help="series tolerance"
    )
    command.add_argument("--k", type=int, help="also evaluate the finite sum")

    command = commands.add_parser(
        "schedule",
        parents=[common, instance, strategy],
        help="export a plan as a schedule of basic algorithms",
    )
    command.add_argument("--n", type=float, help="size the horizon for goal n")

    command = commands.add_parser(
        "sweep", parents=[common], help="ratio profiles over grids"
    )
    command.add_argument(
        "--strategy", choices=STRATEGIES, default="det_multi", help="strategy"
    )
    command.add_argument("--w", dest="ws", type=_integer_list, required=True)
    command.add_argument(
        "--lambda", dest="lams", type=_integer_list, default=[1]
    )
    command.add_argument("--n", dest="ns", type=_number_list, required=True)
    command.add_argument("--trials", type=int)
    command.add_argument("--seed", type=int)
    command.add_argument("--offset", type=float, default=1.0)
    command.add_argument("--workers", type=int)
    command.add_argument("--max-group-length", type=float)
    return parser


def _plan(config):
    horizon = config.horizon
    if horizon is None:
        if config.n is None:
            raise UsageError("either --horizon or --n is required")
        horizon = horizon_for(config.strategy, config.w, config.lam, config.n)
    options = {}
    rng = None
    if config.strategy in RANDOMIZED_STRATEGIES:
        rng = RandomSource(config.seed)
    if config.strategy == "rand_multi":
        options["max_group_length"] = config.max_group_length
    return make_plan(
        config.strategy, config.w, config.lam, horizon, rng=rng, **options
    )


def cmd_ratio(config, args):
    return analytic.analytic_report(config.w, config.lam, config.tol).to_dict()


def cmd_plan(config, args):
    return _plan(config).to_dict()


def cmd_simulate(config, args):
    options = {}
    rng = None
    if config.strategy in RANDOMIZED_STRATEGIES:
        rng = RandomSource(config.seed)
    if config.strategy == "rand_multi":
        options["max_group_length"] = config.max_group_length
    simulator = Simulator(
        config.strategy,
        config.w,
        config.lam,
        rng=rng,
        horizon=config.horizon,
        **options
    )
    result = simulator.run(GoalPlacement(config.path, config.n))
    record = result.to_dict()
    if not args.trace:
        del record["trace"]
    return record


def cmd_adversary(config, args):
    return worst_case_ratio_det(
        config.w, config.lam, config.n_max, config.offset
    ).to_dict()


def cmd_mc(config, args):
    estimate = expected_ratio_mc(
        config.w,
        config.lam,
        GoalPlacement(config.path, config.n),
        config.trials,
        config.seed,
        workers=config.workers,
        max_group_length=config.max_group_length,
    )
    record = estimate.to_dict()
    record.update(
        w=config.w,
        n=config.n,
        path=config.path,
        bound=analytic.rand_multi_bound(config.w, config.lam, config.tol),
    )
    record["lambda"] = config.lam
    return record


def cmd_seq(config, args):
    seq = load_sequence(args.input, config.w)
    record = {"schema": SCHEMA_VERSION, "w": seq.w, "window": config.window}
    if isinstance(seq, WSequence):
        converted = cyclic_convert(seq)
        record.update(
            kind="w-sequence",
            H=ratio_H(seq).to_dict(),
            S=ratio_S(converted).to_dict(),
            single_robot_ratio=single_robot_ratio(seq, config.window),
        )
        if args.witness is not None:
            record["witness"] = witness_check(seq, args.witness)._asdict()
        rows = _table_rows("H", record["H"]) + _table_rows("S", record["S"])
    else:
        if args.witness is not None:
            raise UsageError("--witness requires a w-sequence (columns h, a)")
        converted = seq
        record.update(kind="cyclic", S=ratio_S(seq).to_dict())
        rows = _table_rows("S", record["S"])
    if len(converted) >= config.window + converted.w:
        record["fact1_gap"] = fact1_gap(converted, config.window)
    return record, rows + _summary_rows(record)


def _table_rows(quantity, table):
    return [
        {"quantity": quantity, "i": row["i"], "value": row["value"]}
        for row in table["rows"]
    ]


def _summary_rows(record):
    """The scalar results of ``seq`` as rows following the ratio tables"""
    rows = [
        {"quantity": name, "i": None, "value": record[name]}
        for name in ("single_robot_ratio", "fact1_gap")
        if name in record
    ]
    witness = record.get("witness")
    if witness is not None:
        rows.extend(
            {
                "quantity": "witness." + name,
                "i": witness["j"],
                "value": witness[name],
            }
            for name in ("j_star", "s_ratio", "h_ratio", "case")
        )
    return rows


def cmd_gfun(config, args):
    rate = config.rate
    if rate is None:
        rate = analytic.solve_rw(config.w, config.tol)
    seq = analytic.GeometricSequenceSpec(config.w, rate, tuple(args.prefix))
    record = {
        "schema": SCHEMA_VERSION,
        "w": config.w,
        "rate": rate,
        "epsilon": config.epsilon,
        "prefix": list(seq.prefix),
        "g": analytic.g_functional(config.epsilon, seq, config.formula_tol),
        "c_w": analytic.c_w(config.w, config.tol),
    }
    if args.k is not None:
        record["k"] = args.k
        record["finite_sum_bound"] = analytic.finite_sum_bound(
            args.k, config.epsilon, seq
        )
    return record


def cmd_schedule(config, args):
    return export_schedule(_plan(config)).to_dict()


def cmd_sweep(config, args):
    if args.strategy in RANDOMIZED_STRATEGIES:
        if args.trials is None:
            raise UsageError("randomized sweeps require --trials")
    rows = ratio_sweep(
        args.strategy,
        args.ws,
        args.lams,
        args.ns,
        trials=config.trials,
        seed=config.seed,
        offset=config.offset,
        workers=config.workers,
        max_group_length=config.max_group_length,
    )
    return None, rows


COMMANDS = {
    "ratio": cmd_ratio,
    "plan": cmd_plan,
    "simulate": cmd_simulate,
    "adversary": cmd_adversary,
    "mc": cmd_mc,
    "seq": cmd_seq,
    "gfun": cmd_gfun,
    "schedule": cmd_schedule,
    "sweep": cmd_sweep,
}


def _flatten(record, prefix=""):
    flat = {}
    for key, value in record.items():
        name = prefix + key
        if isinstance(value, dict):
            flat.update(_flatten(value, name + "."))
        elif isinstance(value, (list, tuple)):
            flat[name] = json.dumps(value, sort_keys=True)
        else:
            flat[name] = value
    return flat


def write_output(record, rows, output_format, stream):
    """Write a record or a table to the stream.

    In JSON format, the record is written as one line, or each row as a
    separate line if there is no record. In CSV format the rows are written
    as a table with the columns in the order of the first row, or the
    flattened record as a single row if there are no rows.
    """
    if output_format == "json":
        if record is not None:
            stream.write(json.dumps(record, sort_keys=True) + "\n")
        else:
            for row in rows:
                stream.write(json.dumps(row, sort_keys=True) + "\n")
        return
    if rows is None:
        rows = [_flatten(record)]
        columns = sorted(rows[0])
    elif rows and all(column in rows[0] for column in SWEEP_COLUMNS):
        columns = list(SWEEP_COLUMNS)
    elif rows:
        columns = list(rows[0])
    else:
        columns = []
    writer = csv.DictWriter(stream, fieldnames=columns, lineterminator="\n")
    writer.writeheader()
    writer.writerows(rows)


def _report_error(error, stream):
    record = {
        "schema": SCHEMA_VERSION,
        "error": {"type": type(error).__name__, "message": str(error)},
    }
    stream.write(json.dumps(record, sort_keys=True) + "\n")


def main(argv=None, stdout=None, stderr=None):
    """Run the command line interface.

    Args:
        argv: The arguments (default: ``sys.argv[1:]``)
        stdout: The stream for results (default: ``sys.stdout``)
        stderr: The stream for errors (default: ``sys.stderr``)

    Returns:
        The exit code
    """
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        logging.basicConfig(
            stream=stderr,
            level=max(logging.DEBUG, logging.WARNING - 10 * args.verbose),
            format="%(levelname)s %(name)s: %(message)s",
        )
        config = RunConfig.from_namespace(args)
        config.command = args.command
        config.validate()
        logger.debug("Running %s", args.command)
        result = COMMANDS[args.command](config, args)
    except UsageError as error:
        _report_error(error, stderr)
        return 2
    except (ValueError, ArithmeticError, RuntimeError, OSError) as error:
        _report_error(error, stderr)
        return 1

    if isinstance(result, tuple):
        record, rows = result
    else:
        record, rows = result, None
    write_output(record, rows, config.output_format, stdout)
    return 0
