"""Command-line entry point: ``selrules {recode,mine,rules,filter,bench}``.

Exit codes: 0 success, 1 usage error, 2 data or contract error.  Data go to
``--output`` (or stdout); warnings and summaries go to stderr, except that
the one-line summary is printed on stdout when the data went to a file.
"""

from __future__ import annotations

import argparse
import logging
import sys
from fractions import Fraction
from typing import Callable, Sequence

from . import __version__
from .bench import BenchConfig, run_benchmark, synth_db
from .corpus import BASKET_SEPARATOR, TABLE_DELIMITER, load_basket, open_text, read_itemsets, recode_nominal_table, write_basket
from .errors import SelrulesError, TemplateSyntaxError
from .miner import apriori, closed_filter, write_itemsets
from .rulegen import read_rule_rows, write_rule_rows, write_rules, generate_rules
from .seltree import build_tree, count_database
from .templates import filter_rows, item_class, parse_template
from .thresholds import unit_fraction

log = logging.getLogger("selrules")

EXIT_OK, EXIT_USAGE, EXIT_DATA = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on bad arguments; 2 is reserved for data errors here
    def error(self, message):
        raise UsageError(f"{self.prog}: error: {message}")


def _fraction(name: str, allow_zero: bool = True) -> Callable[[str], Fraction]:
    def parse(text: str) -> Fraction:
        try:
            return unit_fraction(text, name, allow_zero=allow_zero)
        except (TypeError, ValueError) as exc:
            raise argparse.ArgumentTypeError(str(exc)) from None

    parse.__name__ = name
    return parse


def _sizes(text: str) -> tuple[int, ...]:
    try:
        sizes = tuple(int(s) for s in text.split(",") if s.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a comma-separated list of integers: {text!r}") from None
    if not sizes or any(s < 1 for s in sizes):
        raise argparse.ArgumentTypeError("family sizes must be positive integers")
    if any(a >= b for a, b in zip(sizes, sizes[1:])):
        raise argparse.ArgumentTypeError("family sizes must be strictly ascending")
    return sizes


def _positive_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if value < 1:
        raise argparse.ArgumentTypeError("must be at least 1")
    return value


def _synthetic(text: str) -> tuple[int, int, float]:
    parts = text.split(",")
    try:
        n_items, n_transactions, mean_size = int(parts[0]), int(parts[1]), float(parts[2])
    except (IndexError, ValueError):
        raise argparse.ArgumentTypeError("expected N_ITEMS,N_TRANSACTIONS,MEAN_SIZE") from None
    if len(parts) != 3 or n_items < 1 or n_transactions < 0 or not 0 < mean_size < n_items:
        raise argparse.ArgumentTypeError("need N_ITEMS >= 1, N_TRANSACTIONS >= 0 and 0 < MEAN_SIZE < N_ITEMS")
    return n_items, n_transactions, mean_size


def _summary(args, text: str) -> None:
    stream = sys.stdout if args.output else sys.stderr
    print(text, file=stream)


def cmd_recode(args) -> int:
    missing = args.missing if args.missing != "" else None
    db = recode_nominal_table(args.input, missing_token=missing, delimiter=args.delimiter)
    write_basket(db, args.output if args.output else sys.stdout, args.separator)
    _summary(args, f"{db.m} transactions, {len(db.dictionary)} items")
    return EXIT_OK


def cmd_mine(args) -> int:
    db = load_basket(args.input, args.separator)
    f = apriori(db, args.minsup, max_len=args.maxlen)
    if args.closed:
        f = closed_filter(f)
    write_itemsets(f, args.output)
    _summary(args, f"{len(f)} itemsets")
    return EXIT_OK


def cmd_rules(args) -> int:
    db = load_basket(args.input, args.separator)
    family, warnings = read_itemsets(args.itemsets, db.dictionary, args.separator)
    for w in warnings:
        log.warning(w)
    if not family:
        log.error("no itemset could be resolved against %s", args.input)
        return EXIT_DATA
    tree = build_tree(family, len(db.dictionary))
    count_database(tree, db)
    rules = generate_rules(family, tree, args.minconf, db.dictionary)
    for note in rules.notes:
        log.warning(note)
    write_rules(rules, args.output)
    _summary(args, f"{len(rules)} rules")
    return EXIT_OK


def cmd_filter(args) -> int:
    rows = read_rule_rows(args.rules)
    known = {item_class(label) for row in rows for label in row.lhs + (row.rhs,)}
    try:
        template = parse_template(args.template, known_classes=known)
    except TemplateSyntaxError as exc:
        raise UsageError(f"invalid template: {exc}") from None
    kept = filter_rows(rows, template)
    if args.output:
        with open_text(args.output, "w") as fh:
            write_rule_rows(kept, fh)
    else:
        write_rule_rows(kept, sys.stdout)
    _summary(args, f"{len(kept)} rules")
    return EXIT_OK


def cmd_bench(args) -> int:
    if args.synthetic:
        n_items, n_transactions, mean_size = args.synthetic
        db = synth_db(n_items, n_transactions, mean_size, args.seed)
    else:
        db = load_basket(args.input, args.separator)
    cfg = BenchConfig(
        pool_minsup=args.pool_minsup,
        family_sizes=args.sizes,
        repetitions=args.reps,
        minconf=args.minconf,
        seed=args.seed,
        baseline=not args.no_baseline,
        verify=args.verify,
    )
    report = run_benchmark(db, cfg)
    for note in report.notes:
        log.warning(note)
    report.write_csv(args.output)
    if args.figure:
        from .plotting import plot_report

        plot_report(report, args.figure)
    if report.mismatches:
        log.error("%d family(ies) where the baseline disagrees with selective generation", report.mismatches)
        return EXIT_DATA
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="selrules", description="Selective association rule generation.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("-v", "--verbose", action="store_true", help="also log progress messages")
    sub = parser.add_subparsers(dest="command", metavar="COMMAND", parser_class=_Parser)
    sub.required = True

    def add(name: str, func, help: str) -> argparse.ArgumentParser:
        p = sub.add_parser(name, help=help, description=help)
        p.set_defaults(func=func)
        return p

    def separator(p):
        p.add_argument("--separator", default=BASKET_SEPARATOR, help="basket label separator (default: space)")

    p = add("recode", cmd_recode, "Recode a nominal table into a basket file of attr=value items.")
    p.add_argument("--input", required=True, help="delimited table with a header row")
    p.add_argument("--output", help="basket file to write (default: stdout)")
    p.add_argument("--missing", default="?", help="cell value meaning 'missing' (default: ?); '' keeps every value")
    p.add_argument("--delimiter", default=TABLE_DELIMITER, help="table delimiter (default: ,)")
    separator(p)

    p = add("mine", cmd_mine, "Mine frequent (optionally closed) itemsets with Apriori.")
    p.add_argument("--input", required=True, help="basket file")
    p.add_argument("--minsup", required=True, type=_fraction("minsup", allow_zero=False), help="minimum support in (0, 1]")
    p.add_argument("--maxlen", type=_positive_int, help="maximum itemset length")
    p.add_argument("--closed", action="store_true", help="keep closed itemsets only")
    p.add_argument("--output", help="itemset file to write (default: stdout)")
    separator(p)

    p = add("rules", cmd_rules, "Generate rules selectively for the itemsets in a file.")
    p.add_argument("--input", required=True, help="basket file")
    p.add_argument("--itemsets", required=True, help="itemset file, one itemset per line")
    p.add_argument("--minconf", required=True, type=_fraction("minconf"), help="minimum confidence in [0, 1]")
    p.add_argument("--output", help="rule file to write (default: stdout)")
    separator(p)

    p = add("filter", cmd_filter, "Keep the rules of a rule file that match a template.")
    p.add_argument("--rules", required=True, help="rule file written by 'rules'")
    p.add_argument("--template", required=True, help="template such as 'any* => class'")
    p.add_argument("--output", help="rule file to write (default: stdout)")

    p = add("bench", cmd_bench, "Time selective generation against restricted Apriori.")
    source = p.add_mutually_exclusive_group(required=True)
    source.add_argument("--input", help="basket file")
    source.add_argument(
        "--synthetic", type=_synthetic, metavar="N_ITEMS,N_TRANSACTIONS,MEAN_SIZE", help="generate a synthetic database"
    )
    p.add_argument("--pool-minsup", required=True, type=_fraction("pool-minsup", allow_zero=False), help="minsup of the itemset pool")
    p.add_argument("--sizes", required=True, type=_sizes, help="ascending family sizes, e.g. 100,1000,10000")
    p.add_argument("--reps", type=_positive_int, default=1, help="repetitions per size (default: 1)")
    p.add_argument("--minconf", type=_fraction("minconf"), default=Fraction(8, 10), help="minimum confidence (default: 0.8)")
    p.add_argument("--seed", type=int, default=0, help="random seed (default: 0)")
    p.add_argument("--output", help="report file to write (default: stdout)")
    p.add_argument("--figure", help="also save a runtime plot (format from the suffix, e.g. .png)")
    p.add_argument("--no-baseline", action="store_true", help="time selective generation only")
    p.add_argument("--verify", action="store_true", help="check baseline rules against selective rules (untimed)")
    separator(p)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return EXIT_USAGE
    # attached per call so that the handler writes to the current sys.stderr
    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(logging.Formatter("selrules: %(levelname)s: %(message)s"))
    log.addHandler(handler)
    log.setLevel(logging.INFO if args.verbose else logging.WARNING)
    log.propagate = False
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"selrules {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (SelrulesError, OSError, ValueError) as exc:
        print(f"selrules {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_DATA
    finally:
        log.removeHandler(handler)


if __name__ == "__main__":
    sys.exit(main())
