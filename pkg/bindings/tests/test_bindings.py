import json

import numpy as np
import pytest

import featsel_bindings as fb
from featsel import registry
from featsel.cli import dispatch
from featsel.core import UsageError
from featsel.dataset_io import format_float

# One params map per method, mixing defaults-omitted and explicit values so
# the serialized parameter maps are exercised, not just empty.
METHOD_PARAMS = {
    "svmrfe": {"C": 0.5},
    "inffs": {"alpha": 0.3},
    "relieff": {"k": 3},
    "fsv": {"lambda": 0.4},
    "mutinf": {"bins": 4},
    "mrmr": {"bins": 4},
    "fisher": {},
    "laplacian": {"k_neighbors": 4},
    "mcfs": {"k_neighbors": 4, "n_eigvecs": 2},
    "l0": {"C": 2.0},
    "ecfs": {"alpha": 0.7, "bins": 4},
}


@pytest.fixture(scope="module")
def shared_data():
    rng = np.random.default_rng(42)
    y = np.repeat([0, 1], 10)
    x = rng.standard_normal((20, 6))
    x[:, 0] += y * 2.0
    x[:, 3] += y * 1.2
    return x, y


@pytest.fixture(scope="module")
def shared_csv(shared_data, tmp_path_factory):
    x, y = shared_data
    path = tmp_path_factory.mktemp("data") / "shared.csv"
    with open(path, "w") as fh:
        for row, lab in zip(x, y):
            cells = [format_float(float(v)) for v in row]
            fh.write(",".join(cells + [str(int(lab))]) + "\n")
    return path


class TestCliParity:
    @pytest.mark.parametrize("method", sorted(METHOD_PARAMS))
    def test_matches_cli_document_field_for_field(self, method, shared_data,
                                                  shared_csv, tmp_path):
        x, y = shared_data
        params = METHOD_PARAMS[method]
        out = tmp_path / ("%s.json" % method)
        args = ["rank", "--input", str(shared_csv), "--method", method,
                "--seed", "7", "--output", str(out)]
        if params:
            args += ["--params",
                     ",".join("%s=%s" % (k, v) for k, v in params.items())]
        assert dispatch(args) == 0
        doc = json.loads(out.read_text())

        bound = fb.rank(x, y, method, params=params, seed=7)
        assert bound.method == doc["method"]
        assert bound.order.tolist() == doc["order"]
        assert bound.params == doc["params"]
        got = [format_float(float(s)) for s in bound.scores]
        want = [format_float(float(s)) for s in doc["scores"]]
        assert got == want

    def test_all_eleven_methods_covered(self):
        assert sorted(METHOD_PARAMS) == sorted(registry.method_names())
        assert len(fb.list_methods()) == 11


class TestRank:
    def test_unknown_method(self, shared_data):
        x, y = shared_data
        with pytest.raises(UsageError, match="unknown method"):
            fb.rank(x, y, "nope")

    def test_supervised_without_labels(self, shared_data):
        x, _ = shared_data
        with pytest.raises(UsageError, match="requires labels"):
            fb.rank(x, None, "fisher")

    def test_unsupervised_without_labels(self, shared_data):
        x, _ = shared_data
        bound = fb.rank(x, None, "inffs")
        assert sorted(bound.order.tolist()) == list(range(6))

    def test_record_types(self, shared_data):
        x, y = shared_data
        bound = fb.rank(x, y, "fisher")
        assert bound.order.dtype == np.int64
        assert bound.scores.dtype == np.float64
        assert bound.method == "Fisher"
        assert bound.params == {}
        assert bound.n_features == 6


class TestSelectTop:
    def test_sorted_subset(self):
        bound = fb.BoundRanking([1, 0, 2], [3.0, 2.0, 1.0], "x", {})
        assert fb.select_top(bound, 2).tolist() == [0, 1]

    def test_full_width(self):
        bound = fb.BoundRanking([2, 0, 1], [3.0, 2.0, 1.0], "x", {})
        assert fb.select_top(bound, 3).tolist() == [0, 1, 2]

    def test_zero_rejected(self):
        bound = fb.BoundRanking([1, 0, 2], [3.0, 2.0, 1.0], "x", {})
        with pytest.raises(UsageError, match=r"m must be in \[1, 3\]"):
            fb.select_top(bound, 0)


class TestListMethods:
    def test_names_in_registry_order(self):
        names = [d.name for d in fb.list_methods()]
        assert names == ["SVM-RFE", "Inf-FS", "Relief-F", "FSV", "MutInf",
                         "mRMR", "Fisher", "LaplacianScore", "MCFS", "L0",
                         "EC-FS"]
