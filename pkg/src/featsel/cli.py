"""Batch front door: rank features, select subsets, evaluate, benchmark.

Exit codes: 0 success, 2 argument error, 3 data error, 4 numerical
failure.  Errors print to stderr; stdout stays silent on failure.  All
randomness flows from --seed (default 0), so identical argv over
identical files produce byte-identical outputs.
"""

import argparse
import os
import sys

from . import registry
from .core import DataError, NumericalError, UsageError, select_top
from .dataset_io import (
    LabelSpec,
    load_csv,
    load_libsvm,
    read_ranking,
    write_document,
    write_ranking,
    write_subset,
    write_text,
)
from .evaluation import Classifier, accuracy_curve


def _parse_label_col(text):
    if text == "last":
        return LabelSpec.last_column()
    if text == "none":
        return LabelSpec.no_labels()
    try:
        k = int(text)
    except ValueError:
        raise UsageError("--label-col must be last, none, or a column index, "
                         "got %r" % text) from None
    if k < 0:
        raise UsageError("--label-col index must be >= 0, got %d" % k)
    return LabelSpec.column_index(k)


def _parse_params(text):
    out = {}
    if not text:
        return out
    for piece in text.split(","):
        key, sep, value = piece.partition("=")
        key, value = key.strip(), value.strip()
        if not sep or not key or not value:
            raise UsageError("--params entries must look like key=value, "
                             "got %r" % piece)
        if key in out:
            raise UsageError("duplicate param %r" % key)
        out[key] = value
    return out


def _parse_grid(text):
    try:
        return [int(s) for s in text.split(",")]
    except ValueError:
        raise UsageError("--grid must be comma-separated integers, got %r"
                         % text) from None


def _load_dataset(ns):
    if ns.format == "csv":
        return load_csv(ns.input, _parse_label_col(ns.label_col))
    if ns.label_col != "last":
        raise UsageError("--label-col does not apply to libsvm input")
    return load_libsvm(ns.input)


def _cmd_rank(ns):
    params = registry.convert_params(ns.method, _parse_params(ns.params))
    data, labels = _load_dataset(ns)
    ranking = registry.rank(data, labels, ns.method, params, ns.seed,
                            ns.standardize)
    write_ranking(ranking, ns.output)
    return 0


def _cmd_select(ns):
    ranking = read_ranking(ns.ranking)
    write_subset(select_top(ranking, ns.top), ns.output)
    return 0


def _run_eval(data, labels, method, params, ns):
    clf = Classifier.parse(ns.classifier)
    grid = _parse_grid(ns.grid)
    p = registry.convert_params(method, params)

    def rank_fn(train, train_labels):
        return registry.rank(train, train_labels, method, p, ns.seed,
                             ns.standardize)

    return accuracy_curve(data, labels, rank_fn, grid, ns.folds, clf,
                          ns.seed, method_name=registry.descriptor(method).name)


def _cmd_eval(ns):
    registry.descriptor(ns.method)
    data, labels = _load_dataset(ns)
    if labels is None:
        raise UsageError("eval requires labels")
    report = _run_eval(data, labels, ns.method, _parse_params(ns.params), ns)
    write_document(report.document(), ns.output)
    return 0


def _parse_methods(text):
    if text == "all":
        return registry.method_names()
    wanted = []
    for piece in text.split(","):
        key = piece.strip()
        registry.descriptor(key)
        if key not in wanted:
            wanted.append(key)
    if not wanted:
        raise UsageError("--methods must name at least one method")
    return [k for k in registry.method_names() if k in wanted]


def _summary_table(reports):
    grid = reports[0][1].m_grid
    header = ["method"] + ["m=%d" % m for m in grid]
    rows = [[registry.descriptor(key).name]
            + ["%.5f" % acc for acc in report.mean_acc]
            for key, report in reports]
    widths = [max(len(header[i]), *(len(row[i]) for row in rows))
              for i in range(len(header))]
    lines = ["  ".join(h.ljust(widths[i]) for i, h in enumerate(header))]
    for row in rows:
        lines.append("  ".join(c.ljust(widths[i]) for i, c in enumerate(row)))
    return "\n".join(lines) + "\n"


def _cmd_bench(ns):
    methods = _parse_methods(ns.methods)
    data, labels = _load_dataset(ns)
    if labels is None:
        raise UsageError("bench requires labels")
    try:
        os.makedirs(ns.output, exist_ok=True)
    except OSError as e:
        raise DataError("cannot create %s: %s" % (ns.output, e.strerror)) from None
    reports = []
    for key in methods:
        report = _run_eval(data, labels, key, {}, ns)
        write_document(report.document(), os.path.join(ns.output, key + ".json"))
        reports.append((key, report))
    table = _summary_table(reports)
    write_text(table, os.path.join(ns.output, "summary.txt"))
    sys.stdout.write(table)
    return 0


def _add_dataset_opts(p):
    p.add_argument("--input", required=True, help="dataset file")
    p.add_argument("--format", choices=("csv", "libsvm"), default="csv")
    p.add_argument("--label-col", dest="label_col", default="last",
                   help="last, none, or a 0-based column index (csv only)")
    p.add_argument("--standardize", action="store_true",
                   help="scale columns to zero mean, unit variance first")


def _add_method_opts(p):
    p.add_argument("--method", required=True,
                   help="one of: %s" % ", ".join(registry.method_names()))
    p.add_argument("--params", default="",
                   help="comma-separated key=value method parameters")
    p.add_argument("--seed", type=int, default=0)


def _add_eval_opts(p):
    p.add_argument("--grid", required=True,
                   help="comma-separated subset sizes, ascending")
    p.add_argument("--folds", type=int, required=True)
    p.add_argument("--classifier", default="knn:3",
                   help="knn:<k> or svm:<C>")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="featsel",
        description="Feature ranking, selection, and benchmark runner.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("rank", help="rank all features of a dataset")
    _add_dataset_opts(p)
    _add_method_opts(p)
    p.add_argument("--output", required=True)
    p.set_defaults(func=_cmd_rank)

    p = sub.add_parser("select", help="take the top m of a saved ranking")
    p.add_argument("--ranking", required=True, help="ranking document path")
    p.add_argument("--top", type=int, required=True)
    p.add_argument("--output", required=True)
    p.set_defaults(func=_cmd_select)

    p = sub.add_parser("eval", help="cross-validated accuracy curve")
    _add_dataset_opts(p)
    _add_method_opts(p)
    _add_eval_opts(p)
    p.add_argument("--output", required=True)
    p.set_defaults(func=_cmd_eval)

    p = sub.add_parser("bench", help="evaluate several methods side by side")
    _add_dataset_opts(p)
    p.add_argument("--methods", required=True,
                   help="comma-separated method names, or all")
    p.add_argument("--seed", type=int, default=0)
    _add_eval_opts(p)
    p.add_argument("--output", required=True,
                   help="directory for per-method reports and summary.txt")
    p.set_defaults(func=_cmd_bench)

    return parser


def dispatch(argv):
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as e:
        return 0 if e.code in (None, 0) else 2
    try:
        return ns.func(ns)
    except UsageError as e:
        print("error: %s" % e, file=sys.stderr)
        return 2
    except DataError as e:
        print("error: %s" % e, file=sys.stderr)
        return 3
    except NumericalError as e:
        print("error: %s" % e, file=sys.stderr)
        return 4


def main():
    sys.exit(dispatch(sys.argv[1:]))
