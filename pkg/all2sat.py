#!/usr/bin/env python3
"""
all2sat - enumerate, count and compress the models of a 2-CNF
Models and cubes go to stdout, logs to stderr

Exit codes: 0 success, 20 unsatisfiable, 1 usage error, 2 DIMACS parse error
"""
import argparse
import json
import os
import re
import sys
from itertools import islice

from config.settings import Settings
from experiments.harness import HarnessError, format_records, format_summary, run_experiment, summarize
from twosat.compressed import CubeStream, count_models, format_cube
from twosat.enumerator import ConstraintError, enumerate_constrained, enumerate_models, enumerate_partial
from twosat.formula import DimacsError, Literal, parse_dimacs
from twosat.horn import ClauseSet, enumerate_renamings
from utils.logger import Logger

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_PARSE = 2
EXIT_UNSAT = 20


class CliParser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def positive_int(text):
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return value


def parse_literals(text):
    """'1,-3' or '1 -3' -> literals"""
    literals = []
    for token in re.split(r"[,\s]+", text.strip()):
        if not token:
            continue
        try:
            literals.append(Literal.from_dimacs(int(token)))
        except ValueError:
            raise ConstraintError(f"invalid literal {token!r}")
    return literals


def read_formula(path):
    with open(path, 'rb') as f:
        return parse_dimacs(f.read())


def write_line(line):
    sys.stdout.write(line + "\n")


def cmd_enumerate(args, settings, logger):
    stream = enumerate_models(read_formula(args.file), strategy=settings.get("branching"))
    return emit_models(stream, args.format or settings.get("model_format"), args.limit, logger)


def cmd_constrain(args, settings, logger):
    stream = enumerate_constrained(read_formula(args.file), parse_literals(args.true),
                                   parse_literals(args.false), strategy=settings.get("branching"))
    return emit_models(stream, args.format or settings.get("model_format"), args.limit, logger)


def emit_models(stream, fmt, limit, logger):
    if not stream.satisfiable:
        logger.info("Formula is unsatisfiable")
        return EXIT_UNSAT
    for model in islice(stream, limit):
        if fmt == "lits":
            write_line(" ".join(str(v) for v in model.assignment.to_literals()) + " 0")
        else:
            write_line(model.bits())
    return EXIT_OK


def cmd_partial(args, settings, logger):
    stream = enumerate_partial(read_formula(args.file), parse_literals(args.lits),
                               strategy=settings.get("branching"))
    if not stream.satisfiable:
        logger.info("Formula is unsatisfiable")
        return EXIT_UNSAT
    for partial in stream:
        write_line("".join(str(v) for v in partial.values))
    return EXIT_OK


def cmd_cubes(args, settings, logger):
    stream = CubeStream(read_formula(args.file), parse_literals(args.true), parse_literals(args.false),
                        split_order=settings.get("cube_split_order"))
    if not stream.satisfiable:
        logger.info("Formula is unsatisfiable")
        return EXIT_UNSAT
    fmt = args.format or settings.get("cube_format")
    for cube in stream:
        write_line(format_cube(cube, stream.prepared, stream.halfcore, fmt))
    return EXIT_OK


def cmd_count(args, settings, logger):
    result = count_models(read_formula(args.file), split_order=settings.get("cube_split_order"))
    stats = {
        "satisfiable": result.satisfiable,
        "N": result.count,
        "R": result.cubes,
        "av2": round(result.av2, 3),
        "W": result.poset_size,
        "HC": result.halfcore_size,
        "ti": result.ti_count,
        "largest_component": result.largest_component_size,
    }
    if (args.format or settings.get("count_format")) == "json":
        write_line(json.dumps(stats))
    else:
        for key, value in stats.items():
            write_line(f"{key} {value}")
    return EXIT_OK if result.satisfiable else EXIT_UNSAT


def cmd_horn(args, settings, logger):
    with open(args.file, 'rb') as f:
        text = f.read()
    try:
        clause_set = ClauseSet.from_dimacs(text)
    except DimacsError:
        raise
    except ValueError as e:
        raise DimacsError(str(e))
    stream = enumerate_renamings(clause_set, strategy=settings.get("branching"))
    if not stream.renamable:
        logger.info("Clause set is not Horn-renamable")
        return EXIT_UNSAT
    for renaming in stream:
        if args.format == "json":
            write_line(json.dumps(renaming.as_list()))
        else:
            write_line(" ".join([*map(str, renaming.as_list()), "0"]))
    return EXIT_OK


def cmd_bench(args, settings, logger):
    records = run_experiment(
        args.n or settings.get("bench_n"),
        args.t or settings.get("bench_t"),
        args.instances or settings.get("bench_instances"),
        seed=settings.get("bench_seed") if args.seed is None else args.seed,
        workers=args.workers or settings.get("bench_workers"),
        verify_limit=settings.get("brute_force_limit"),
    )
    write_line(format_records(records, args.format or settings.get("bench_format")))
    for line in format_summary(summarize(records)).splitlines():
        logger.info(line)
    return EXIT_OK


def build_parser():
    parser = CliParser(prog="all2sat", description="All models of a 2-CNF, plain or compressed")
    parser.add_argument('--config', help='Configuration file path')
    parser.add_argument('--log-level', choices=['DEBUG', 'INFO', 'WARNING', 'ERROR', 'CRITICAL'],
                        help='Logging level')
    parser.add_argument('--log-file', help='Also log to this file')
    parser.add_argument('--quiet', action='store_true', help='Only log warnings and errors')

    sub = parser.add_subparsers(dest='command', required=True)

    p = sub.add_parser('enumerate', help='Print every model')
    p.add_argument('file', help='DIMACS 2-CNF file')
    p.add_argument('--format', choices=['bits', 'lits'])
    p.add_argument('--limit', type=positive_int, help='Stop after this many models')
    p.set_defaults(handler=cmd_enumerate)

    p = sub.add_parser('count', help='Count models with compressed cubes')
    p.add_argument('file', help='DIMACS 2-CNF file')
    p.add_argument('--format', choices=['text', 'json'])
    p.set_defaults(handler=cmd_count)

    p = sub.add_parser('cubes', help='Print disjoint 0/1/2 cubes covering the models')
    p.add_argument('file', help='DIMACS 2-CNF file')
    p.add_argument('--format', choices=['text', 'json'])
    p.add_argument('--true', default='', help='Literals forced true, e.g. "1,-3"')
    p.add_argument('--false', default='', help='Literals forced false')
    p.set_defaults(handler=cmd_cubes)

    p = sub.add_parser('partial', help='Print the distinct restrictions of the models to some literals')
    p.add_argument('file', help='DIMACS 2-CNF file')
    p.add_argument('--lits', required=True, help='Literal list, e.g. "1,2"')
    p.set_defaults(handler=cmd_partial)

    p = sub.add_parser('constrain', help='Print the models meeting forced literal values')
    p.add_argument('file', help='DIMACS 2-CNF file')
    p.add_argument('--true', default='', help='Literals forced true')
    p.add_argument('--false', default='', help='Literals forced false')
    p.add_argument('--format', choices=['bits', 'lits'])
    p.add_argument('--limit', type=positive_int, help='Stop after this many models')
    p.set_defaults(handler=cmd_constrain)

    p = sub.add_parser('horn', help='Print every Horn renaming of a CNF')
    p.add_argument('file', help='DIMACS CNF file of any clause width')
    p.add_argument('--format', choices=['text', 'json'], default='text')
    p.set_defaults(handler=cmd_horn)

    p = sub.add_parser('bench', help='Count models of seeded random 2-CNFs')
    p.add_argument('--n', type=positive_int, help='Variables per instance')
    p.add_argument('--t', type=positive_int, help='Clauses per instance')
    p.add_argument('--instances', type=positive_int, help='Number of instances')
    p.add_argument('--seed', type=int, help='Seed of the first instance')
    p.add_argument('--workers', type=positive_int, help='Process pool size')
    p.add_argument('--format', choices=['csv', 'json'])
    p.set_defaults(handler=cmd_bench)
    return parser


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return e.code

    if args.config and not os.path.exists(args.config):
        sys.stderr.write(f"all2sat: config file not found: {args.config}\n")
        return EXIT_USAGE
    settings = Settings(args.config)
    level = "WARNING" if args.quiet else (args.log_level or settings.get("log_level"))
    logger = Logger(level=level, log_file=args.log_file or settings.get("log_file"),
                    color=settings.get("color"))

    try:
        return args.handler(args, settings, logger)
    except DimacsError as e:
        logger.error(f"{args.file}: {e}")
        return EXIT_PARSE
    except (ConstraintError, HarnessError) as e:
        logger.error(str(e))
        return EXIT_USAGE
    except OSError as e:
        logger.error(f"Cannot read input: {e}")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
