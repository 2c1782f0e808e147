"""Dataset loading (CSV, LIBSVM) and canonical document I/O.

Output documents are JSON rendered by a small canonical emitter: fixed key
order (insertion order of the document dict), floats at 17 significant
digits, no whitespace variation.  Identical values always produce
byte-identical files, which makes outputs diffable and cacheable.
"""

import json
import os
import tempfile
from dataclasses import dataclass

import numpy as np

from .core import (
    DataError,
    DataMatrix,
    Direction,
    FeatureRanking,
    FeatureScores,
    FeatureSubset,
    LabelVector,
    MethodDescriptor,
    UsageError,
    format_float,
    ranking_document,
)


@dataclass(frozen=True)
class LabelSpec:
    """Where labels live in a table: a fixed column, the last column, or nowhere."""

    kind: str
    column: int | None = None

    def __post_init__(self):
        if self.kind not in ("column", "last", "none"):
            raise UsageError("label spec kind must be 'column', 'last' or 'none'")
        if (self.kind == "column") != (self.column is not None):
            raise UsageError("column index required exactly when kind='column'")

    @classmethod
    def column_index(cls, k):
        return cls("column", int(k))

    @classmethod
    def last_column(cls):
        return cls("last")

    @classmethod
    def no_labels(cls):
        return cls("none")


def remap_labels(raw):
    """Map raw label values to contiguous ids 0..C-1 by first appearance."""
    ids = {}
    out = np.empty(len(raw), dtype=np.int64)
    for i, v in enumerate(raw):
        if v not in ids:
            ids[v] = len(ids)
        out[i] = ids[v]
    return LabelVector(out)


def _parse_cell(token, row, col):
    try:
        return float(token)
    except ValueError:
        raise DataError("non-numeric cell %r at row %d, column %d"
                        % (token.strip(), row, col)) from None


def load_csv(path, label_spec, has_header=False):
    """Load a comma-separated numeric table.

    Returns (DataMatrix, LabelVector or None).  The label column named by
    ``label_spec`` is removed from the matrix; its raw values are remapped
    to contiguous class ids in order of first appearance.
    """
    try:
        with open(path, "r", encoding="utf-8") as f:
            lines = f.read().splitlines()
    except OSError as e:
        raise DataError("cannot read %s: %s" % (path, e.strerror)) from None
    while lines and lines[-1].strip() == "":
        lines.pop()
    if not lines:
        raise DataError("empty file: %s" % path)

    names = None
    if has_header:
        names = [s.strip() for s in lines[0].split(",")]
        lines = lines[1:]
        if not lines:
            raise DataError("no data rows after header: %s" % path)

    rows = [line.split(",") for line in lines]
    width = len(rows[0])
    for r, row in enumerate(rows):
        if len(row) != width:
            raise DataError("ragged row %d: %d cells, expected %d" % (r, len(row), width))
    if names is not None and len(names) != width:
        raise DataError("header has %d names for %d columns" % (len(names), width))

    if label_spec.kind == "none":
        label_col = None
    elif label_spec.kind == "last":
        label_col = width - 1
    else:
        label_col = label_spec.column
        if not 0 <= label_col < width:
            raise UsageError("label column %d outside [0, %d)" % (label_col, width))

    table = np.empty((len(rows), width), dtype=np.float64)
    for r, row in enumerate(rows):
        for c, cell in enumerate(row):
            table[r, c] = _parse_cell(cell, r, c)

    if label_col is None:
        return DataMatrix(table, feature_names=tuple(names) if names else None), None
    labels = remap_labels(table[:, label_col])
    feats = np.delete(table, label_col, axis=1)
    if names is not None:
        names = tuple(names[:label_col] + names[label_col + 1:])
    return DataMatrix(feats, feature_names=names), labels


def load_libsvm(path):
    """Load a sparse "label idx:val ..." file into a dense matrix.

    Indices are 1-based and must be strictly increasing within a line;
    unspecified entries are 0; n is the largest index in the file.  Empty
    lines are skipped.  Labels are remapped by first appearance.
    """
    try:
        with open(path, "r", encoding="utf-8") as f:
            lines = f.read().splitlines()
    except OSError as e:
        raise DataError("cannot read %s: %s" % (path, e.strerror)) from None

    raw_labels = []
    rows = []
    n = 0
    for lineno, line in enumerate(lines):
        tokens = line.split()
        if not tokens:
            continue
        raw_labels.append(_parse_cell(tokens[0], lineno, 0))
        entries = []
        prev = 0
        for tok in tokens[1:]:
            idx_s, sep, val_s = tok.partition(":")
            if not sep:
                raise DataError("unparsable token %r on line %d" % (tok, lineno))
            try:
                idx = int(idx_s)
            except ValueError:
                raise DataError("unparsable token %r on line %d" % (tok, lineno)) from None
            if idx <= prev:
                raise DataError("indices must be 1-based strictly increasing; "
                                "got %d after %d on line %d" % (idx, prev, lineno))
            entries.append((idx, _parse_cell(val_s, lineno, idx)))
            prev = idx
        rows.append(entries)
        n = max(n, prev)
    if not rows:
        raise DataError("empty file: %s" % path)
    if n == 0:
        raise DataError("no feature entries in %s" % path)

    table = np.zeros((len(rows), n), dtype=np.float64)
    for r, entries in enumerate(rows):
        for idx, val in entries:
            table[r, idx - 1] = val
    return DataMatrix(table), remap_labels(raw_labels)


def canonical_json(doc):
    """Render a document dict as canonical JSON text.

    Keys keep insertion order; floats print at 17 significant digits;
    separators are fixed.  Same document, same bytes.
    """
    return _render(doc)


def _render(v):
    if v is None:
        return "null"
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    if isinstance(v, (float, np.floating)):
        return format_float(v)
    if isinstance(v, str):
        return json.dumps(v)
    if isinstance(v, dict):
        return "{" + ",".join(json.dumps(str(k)) + ":" + _render(u) for k, u in v.items()) + "}"
    if isinstance(v, (list, tuple, np.ndarray)):
        return "[" + ",".join(_render(u) for u in v) + "]"
    raise UsageError("cannot serialize %r" % type(v).__name__)


def write_text(text, path):
    """Atomically write text to a file (temp file + rename)."""
    directory = os.path.dirname(os.path.abspath(path))
    try:
        fd, tmp = tempfile.mkstemp(dir=directory, suffix=".tmp")
        try:
            with os.fdopen(fd, "w", encoding="utf-8") as f:
                f.write(text)
            os.replace(tmp, path)
        except BaseException:
            os.unlink(tmp)
            raise
    except OSError as e:
        raise DataError("cannot write %s: %s" % (path, e.strerror)) from None


def write_document(doc, path):
    """Atomically write a document as canonical JSON (temp file + rename)."""
    write_text(canonical_json(doc) + "\n", path)


def read_document(path):
    try:
        with open(path, "r", encoding="utf-8") as f:
            return json.load(f)
    except OSError as e:
        raise DataError("cannot read %s: %s" % (path, e.strerror)) from None
    except json.JSONDecodeError as e:
        raise DataError("malformed document %s: %s" % (path, e)) from None


def write_ranking(ranking, path):
    write_document(ranking_document(ranking), path)


def read_ranking(path):
    """Rebuild a FeatureRanking from a ranking document.

    The method descriptor carries only what the document stores (name,
    tags, params); complexity metadata is not serialized.
    """
    doc = read_document(path)
    try:
        method = MethodDescriptor(name=doc["method"], fs_type=doc["fs_type"],
                                  fs_class=doc["fs_class"], complexity="",
                                  params=dict(doc["params"]))
        scores = FeatureScores(np.asarray(doc["scores"], dtype=np.float64),
                               Direction(doc["direction"]))
        seed = doc["seed"]
        return FeatureRanking(order=np.asarray(doc["order"], dtype=np.int64),
                              scores=scores, method=method,
                              seed=None if seed is None else int(seed))
    except (KeyError, ValueError, TypeError) as e:
        raise DataError("malformed ranking document %s: %s" % (path, e)) from None


def subset_document(subset):
    return {"m": len(subset), "indices": [int(i) for i in subset.indices]}


def write_subset(subset, path):
    write_document(subset_document(subset), path)


def read_subset(path):
    doc = read_document(path)
    try:
        return FeatureSubset(np.asarray(doc["indices"], dtype=np.int64))
    except (KeyError, ValueError, TypeError) as e:
        raise DataError("malformed subset document %s: %s" % (path, e)) from None
