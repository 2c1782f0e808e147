"""CSV/LIBSVM loaders and canonical document round-trips."""

import numpy as np
import pytest

from featsel.core import (
    DataError,
    Direction,
    FeatureRanking,
    FeatureScores,
    FeatureSubset,
    MethodDescriptor,
    UsageError,
    format_float,
)
from featsel.dataset_io import (
    LabelSpec,
    canonical_json,
    load_csv,
    load_libsvm,
    read_ranking,
    read_subset,
    remap_labels,
    write_ranking,
    write_subset,
)


class TestLoadCsv:
    def test_last_column_labels(self, tmp_path):
        p = tmp_path / "toy.csv"
        p.write_text("1,2,0\n3,4,1")
        data, labels = load_csv(p, LabelSpec.last_column())
        assert data.values.tolist() == [[1.0, 2.0], [3.0, 4.0]]
        assert labels.labels.tolist() == [0, 1]

    def test_no_labels(self, tmp_path):
        p = tmp_path / "toy.csv"
        p.write_text("1,2,0\n3,4,1")
        data, labels = load_csv(p, LabelSpec.no_labels())
        assert data.values.shape == (2, 3)
        assert labels is None

    def test_ragged_rows(self, tmp_path):
        p = tmp_path / "bad.csv"
        p.write_text("1,2\n3")
        with pytest.raises(DataError, match="ragged"):
            load_csv(p, LabelSpec.no_labels())

    def test_non_numeric_cell_positioned(self, tmp_path):
        p = tmp_path / "bad.csv"
        p.write_text("1,2\n3,x")
        with pytest.raises(DataError, match="row 1, column 1"):
            load_csv(p, LabelSpec.no_labels())

    def test_empty_file(self, tmp_path):
        p = tmp_path / "empty.csv"
        p.write_text("")
        with pytest.raises(DataError, match="empty"):
            load_csv(p, LabelSpec.no_labels())

    def test_missing_file(self, tmp_path):
        with pytest.raises(DataError, match="nope.csv"):
            load_csv(tmp_path / "nope.csv", LabelSpec.no_labels())

    def test_header_names(self, tmp_path):
        p = tmp_path / "named.csv"
        p.write_text("a,b,y\n1,2,0\n3,4,1\n")
        data, labels = load_csv(p, LabelSpec.last_column(), has_header=True)
        assert data.feature_names == ("a", "b")
        assert data.values.shape == (2, 2)
        assert labels.labels.tolist() == [0, 1]

    def test_column_index_spec(self, tmp_path):
        p = tmp_path / "first.csv"
        p.write_text("0,1,2\n1,3,4")
        data, labels = load_csv(p, LabelSpec.column_index(0))
        assert data.values.tolist() == [[1.0, 2.0], [3.0, 4.0]]
        assert labels.labels.tolist() == [0, 1]

    def test_column_index_out_of_range(self, tmp_path):
        p = tmp_path / "toy.csv"
        p.write_text("1,2\n3,4")
        with pytest.raises(UsageError):
            load_csv(p, LabelSpec.column_index(2))

    def test_first_appearance_remap(self, tmp_path):
        p = tmp_path / "pm.csv"
        p.write_text("0,1\n0,-1\n0,1")
        _, labels = load_csv(p, LabelSpec.last_column())
        assert labels.labels.tolist() == [0, 1, 0]

    def test_roundtrip_17_digits(self, tmp_path):
        rng = np.random.default_rng(11)
        table = rng.normal(size=(6, 4)) * 10.0 ** rng.integers(-8, 8, size=(6, 4))
        p = tmp_path / "rt.csv"
        p.write_text("\n".join(",".join(format_float(v) for v in row) for row in table))
        data, _ = load_csv(p, LabelSpec.no_labels())
        assert np.array_equal(data.values, table)


class TestLoadLibsvm:
    def test_dense_expansion(self, tmp_path):
        p = tmp_path / "toy.libsvm"
        p.write_text("+1 1:0.5 3:2\n-1 2:1")
        data, labels = load_libsvm(p)
        assert data.values.tolist() == [[0.5, 0.0, 2.0], [0.0, 1.0, 0.0]]
        assert labels.labels.tolist() == [0, 1]

    def test_empty_lines_skipped(self, tmp_path):
        p = tmp_path / "gaps.libsvm"
        p.write_text("\n+1 1:1\n\n-1 1:2\n\n")
        data, labels = load_libsvm(p)
        assert data.n_samples == 2

    def test_non_increasing_indices(self, tmp_path):
        p = tmp_path / "bad.libsvm"
        p.write_text("1 2:1 1:1\n2 1:1")
        with pytest.raises(DataError, match="increasing"):
            load_libsvm(p)

    def test_zero_index_rejected(self, tmp_path):
        p = tmp_path / "bad.libsvm"
        p.write_text("1 0:1\n2 1:1")
        with pytest.raises(DataError, match="1-based"):
            load_libsvm(p)

    def test_unparsable_token(self, tmp_path):
        p = tmp_path / "bad.libsvm"
        p.write_text("1 foo\n2 1:1")
        with pytest.raises(DataError, match="unparsable"):
            load_libsvm(p)

    def test_label_only_line_is_zero_row(self, tmp_path):
        p = tmp_path / "zr.libsvm"
        p.write_text("1 1:3\n2\n")
        data, labels = load_libsvm(p)
        assert data.values.tolist() == [[3.0], [0.0]]
        assert labels.labels.tolist() == [0, 1]


def test_remap_labels_first_appearance():
    assert remap_labels([1.0, -1.0, 1.0]).labels.tolist() == [0, 1, 0]
    assert remap_labels([5, 5, 2, 7, 2]).labels.tolist() == [0, 0, 1, 2, 1]


def make_ranking():
    method = MethodDescriptor("Fisher", "f", "s", "O(Tn)", params={"alpha": 0.5})
    scores = FeatureScores(np.array([0.25, 4.0, 1.0 / 3.0]), Direction.HIGHER_BETTER)
    return FeatureRanking(order=np.array([1, 2, 0]), scores=scores,
                          method=method, seed=0)


class TestDocuments:
    def test_ranking_roundtrip_exact(self, tmp_path):
        r = make_ranking()
        p = tmp_path / "r.out"
        write_ranking(r, p)
        back = read_ranking(p)
        assert back.order.tolist() == r.order.tolist()
        assert np.array_equal(back.scores.scores, r.scores.scores)
        assert back.scores.direction is r.scores.direction
        assert back.method.name == "Fisher"
        assert back.method.fs_type == "f" and back.method.fs_class == "s"
        assert back.method.params == {"alpha": "0.5"}
        assert back.seed == 0

    def test_two_writes_byte_identical(self, tmp_path):
        r = make_ranking()
        a, b = tmp_path / "a.out", tmp_path / "b.out"
        write_ranking(r, a)
        write_ranking(r, b)
        assert a.read_bytes() == b.read_bytes()

    def test_unwritable_path_mentions_path(self, tmp_path):
        with pytest.raises(DataError, match="no/such/dir"):
            write_ranking(make_ranking(), tmp_path / "no" / "such" / "dir" / "r.out")

    def test_canonical_json_frozen_form(self):
        doc = {"m": 2, "indices": [0, 3], "w": 0.5, "note": None}
        assert canonical_json(doc) == '{"m":2,"indices":[0,3],"w":0.5,"note":null}'

    def test_float_17_digits(self):
        assert canonical_json({"v": 1.0 / 3.0}) == '{"v":0.33333333333333331}'

    def test_subset_roundtrip(self, tmp_path):
        s = FeatureSubset(np.array([0, 2, 5]))
        p = tmp_path / "s.out"
        write_subset(s, p)
        assert read_subset(p).indices.tolist() == [0, 2, 5]
        assert p.read_text() == '{"m":3,"indices":[0,2,5]}\n'

    def test_malformed_ranking_document(self, tmp_path):
        p = tmp_path / "bad.out"
        p.write_text('{"method":"x"}')
        with pytest.raises(DataError, match="malformed ranking"):
            read_ranking(p)

    def test_seed_null_roundtrip(self, tmp_path):
        method = MethodDescriptor("MutInf", "f", "s", "O(Tn)")
        scores = FeatureScores(np.array([1.0, 2.0]), Direction.HIGHER_BETTER)
        r = FeatureRanking(np.array([1, 0]), scores, method, seed=None)
        p = tmp_path / "r.out"
        write_ranking(r, p)
        assert read_ranking(p).seed is None
        assert '"seed":null' in p.read_text()
