import numpy as np
import pytest

from featsel.core import (
    DataMatrix,
    Direction,
    LabelVector,
    UsageError,
    standardize,
)
from featsel.embedded import (
    FsvParams,
    RfeParams,
    fsv_iterates,
    fsv_rank,
    l0_fs,
    svm_rfe,
)
from featsel.numerics import train_linear_svm


def make_signal_noise(seed=0, t=40, noise_cols=4):
    """Two informative columns followed by pure-noise columns."""
    rng = np.random.default_rng(seed)
    y = np.repeat([0, 1], t // 2)
    s = y * 2.0 - 1.0
    x = np.empty((t, 2 + noise_cols))
    x[:, 0] = 2.0 * s + 0.05 * rng.standard_normal(t)
    x[:, 1] = 1.5 * s + 0.05 * rng.standard_normal(t)
    x[:, 2:] = rng.standard_normal((t, noise_cols))
    return DataMatrix(x), LabelVector(y)


def swap_classes(labels):
    return LabelVector(1 - labels.labels)


class TestSvmRfe:
    def test_single_round_matches_weight_order(self):
        data, labels = make_signal_noise(seed=3)
        ranking = svm_rfe(data, labels, RfeParams(elim_fraction=1.0))
        model = train_linear_svm(standardize(data), labels, 1.0)
        expected = np.argsort(-(model.w ** 2), kind="stable")
        assert ranking.method.iterations == 1
        assert list(ranking.order) == list(expected)
        assert ranking.scores.direction is Direction.LOWER_BETTER

    def test_single_feature(self):
        data = DataMatrix(np.array([[0.0], [1.0], [2.0], [3.0]]))
        labels = LabelVector(np.array([0, 0, 1, 1]))
        ranking = svm_rfe(data, labels)
        assert list(ranking.order) == [0]
        assert ranking.method.iterations == 1

    def test_informative_features_survive_longest(self):
        data, labels = make_signal_noise(seed=7)
        ranking = svm_rfe(data, labels)
        assert set(ranking.order[:2]) == {0, 1}
        # auto batching drops one per round for small n
        assert ranking.method.iterations == data.n_features

    def test_fraction_round_count(self):
        data, labels = make_signal_noise(seed=1, noise_cols=6)  # n = 8
        ranking = svm_rfe(data, labels, RfeParams(elim_fraction=0.5))
        # 8 -> 4 -> 2 -> 1 -> 0
        assert ranking.method.iterations == 4

    def test_class_swap_same_ranking(self):
        data, labels = make_signal_noise(seed=11)
        a = svm_rfe(data, labels)
        b = svm_rfe(data, swap_classes(labels))
        assert list(a.order) == list(b.order)
        np.testing.assert_array_equal(a.scores.scores, b.scores.scores)

    def test_deterministic(self):
        data, labels = make_signal_noise(seed=5)
        a = svm_rfe(data, labels)
        b = svm_rfe(data, labels)
        np.testing.assert_array_equal(a.scores.scores, b.scores.scores)
        assert list(a.order) == list(b.order)

    def test_param_validation(self):
        with pytest.raises(UsageError):
            RfeParams(c_reg=0.0)
        with pytest.raises(UsageError):
            RfeParams(elim_fraction=0.0)
        with pytest.raises(UsageError):
            RfeParams(elim_fraction=1.5)

    def test_multiclass_rejected(self):
        data = DataMatrix(np.arange(12.0).reshape(6, 2))
        labels = LabelVector(np.array([0, 0, 1, 1, 2, 2]))
        with pytest.raises(UsageError):
            svm_rfe(data, labels)


class TestL0:
    def test_constant_column_scores_zero(self):
        data, labels = make_signal_noise(seed=2, noise_cols=1)
        x = data.values.copy()
        x[:, 2] = 7.5
        ranking = l0_fs(DataMatrix(x), labels)
        assert ranking.scores.scores[2] == 0.0
        assert ranking.scores.scores[0] > 0.0
        assert ranking.scores.direction is Direction.HIGHER_BETTER
        assert list(ranking.order)[-1] == 2 or ranking.scores.scores[2] == 0.0

    def test_duplicate_columns_equal_scores(self):
        rng = np.random.default_rng(9)
        y = np.repeat([0, 1], 10)
        base = (y * 2.0 - 1.0) + 0.3 * rng.standard_normal(20)
        x = np.column_stack([base, base, rng.standard_normal(20)])
        ranking = l0_fs(DataMatrix(x), LabelVector(y))
        assert ranking.scores.scores[0] == ranking.scores.scores[1]

    def test_noise_shrinks_below_signal(self):
        data, labels = make_signal_noise(seed=4)
        ranking = l0_fs(data, labels)
        vals = ranking.scores.scores
        assert min(vals[0], vals[1]) > max(vals[2:])
        assert set(ranking.order[:2]) == {0, 1}

    def test_class_swap_same_scores(self):
        data, labels = make_signal_noise(seed=6)
        a = l0_fs(data, labels)
        b = l0_fs(data, swap_classes(labels))
        np.testing.assert_array_equal(a.scores.scores, b.scores.scores)

    def test_param_validation(self):
        data, labels = make_signal_noise(seed=0)
        with pytest.raises(UsageError):
            l0_fs(data, labels, c_reg=0.0)
        with pytest.raises(UsageError):
            l0_fs(data, labels, max_iter=0)

    def test_iterations_recorded(self):
        data, labels = make_signal_noise(seed=8)
        ranking = l0_fs(data, labels, max_iter=5)
        assert 1 <= ranking.method.iterations <= 5


class TestFsv:
    def test_separable_1d_fixture(self):
        data = DataMatrix(np.array([[-1.0], [-1.0], [1.0], [1.0]]))
        labels = LabelVector(np.array([0, 0, 1, 1]))
        v, objectives, iterations = fsv_iterates(data, labels)
        assert v == pytest.approx([1.0], abs=1e-9)
        # (1 - lam) * 0 + lam * (1 - exp(-alpha)) at lam=0.5, alpha=5
        assert objectives[-1] == pytest.approx(0.4966310265004573, abs=1e-9)
        assert len(objectives) == iterations

    def test_rank_on_fixture(self):
        data = DataMatrix(np.array([[-2.0, 0.1], [-1.0, -0.1],
                                    [1.0, 0.1], [2.0, -0.1]]))
        labels = LabelVector(np.array([0, 0, 1, 1]))
        ranking = fsv_rank(data, labels)
        assert list(ranking.order) == [0, 1]
        assert ranking.scores.scores[0] == pytest.approx(1.0, abs=1e-6)
        assert ranking.scores.scores[1] == pytest.approx(0.0, abs=1e-6)
        assert ranking.scores.direction is Direction.HIGHER_BETTER

    def test_class_swap_same_widths(self):
        data = DataMatrix(np.array([[-2.0, 0.1], [-1.0, -0.1],
                                    [1.0, 0.1], [2.0, -0.1]]))
        labels = LabelVector(np.array([0, 0, 1, 1]))
        a = fsv_rank(data, labels)
        b = fsv_rank(data, swap_classes(labels))
        np.testing.assert_allclose(a.scores.scores, b.scores.scores, atol=1e-8)
        assert list(a.order) == list(b.order)

    def test_objective_monotone_on_overlapping_data(self):
        rng = np.random.default_rng(21)
        t = 16
        y = np.repeat([0, 1], t // 2)
        x = rng.standard_normal((t, 4))
        x[:, 0] += (y * 2.0 - 1.0) * 0.8  # weak signal, classes overlap
        _, objectives, _ = fsv_iterates(DataMatrix(x), LabelVector(y))
        for prev, cur in zip(objectives, objectives[1:]):
            assert cur <= prev + 1e-9

    def test_noise_width_collapses(self):
        rng = np.random.default_rng(33)
        t = 20
        y = np.repeat([0, 1], t // 2)
        x = np.column_stack([(y * 2.0 - 1.0) * 2.0
                             + 0.1 * rng.standard_normal(t),
                             rng.standard_normal(t)])
        ranking = fsv_rank(DataMatrix(x), LabelVector(y))
        vals = ranking.scores.scores
        assert vals[0] > 10.0 * max(vals[1], 1e-12)
        assert ranking.order[0] == 0

    def test_param_validation(self):
        with pytest.raises(UsageError):
            FsvParams(lam=0.0)
        with pytest.raises(UsageError):
            FsvParams(lam=1.0)
        with pytest.raises(UsageError):
            FsvParams(alpha_cc=0.0)
        with pytest.raises(UsageError):
            FsvParams(max_iter=0)

    def test_multiclass_rejected(self):
        data = DataMatrix(np.arange(12.0).reshape(6, 2))
        labels = LabelVector(np.array([0, 0, 1, 1, 2, 2]))
        with pytest.raises(UsageError):
            fsv_rank(data, labels)

    def test_deterministic(self):
        rng = np.random.default_rng(40)
        y = np.repeat([0, 1], 8)
        x = rng.standard_normal((16, 3))
        x[:, 1] += y * 1.5
        data, labels = DataMatrix(x), LabelVector(y)
        a = fsv_rank(data, labels)
        b = fsv_rank(data, labels)
        np.testing.assert_array_equal(a.scores.scores, b.scores.scores)
