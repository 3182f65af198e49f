import numpy as np
import pytest

from emvc import baselines
from emvc.data import MultiViewDataset, synthetic_two_view
from emvc.exceptions import ConfigError
from emvc.graph import kernel_width, similarity_matrix
from emvc.kmeans import KMeansConfig, kmeans


def informative_plus_noise(rng, n=60):
    labels = np.repeat([0, 1], n // 2)
    good = rng.normal(size=(n, 2)) * 0.3 + labels[:, None] * 4.0
    noise = rng.normal(size=(n, 2))
    return MultiViewDataset([noise, good], labels)


def test_bsv_picks_informative_view(rng):
    result, chosen = baselines.best_single_view(informative_plus_noise(rng), 2)
    assert chosen == 1
    assert result.metrics.accuracy == 1.0


def test_bsv_single_view(rng):
    ds = informative_plus_noise(rng)
    _, chosen = baselines.best_single_view(MultiViewDataset([ds.views[0]], ds.labels), 2)
    assert chosen == 0


def test_bsv_requires_labels(rng):
    with pytest.raises(ConfigError):
        baselines.best_single_view(MultiViewDataset([rng.normal(size=(5, 2))]), 2)


def test_baselines_deterministic():
    ds = synthetic_two_view(40, seed=2)
    for f in (baselines.feature_concat, baselines.kernel_addition):
        a, b = f(ds, 2), f(ds, 2)
        np.testing.assert_array_equal(a.labels, b.labels)
    a, _ = baselines.best_single_view(ds, 2)
    b, _ = baselines.best_single_view(ds, 2)
    np.testing.assert_array_equal(a.labels, b.labels)


def test_concat_single_view_is_kmeans(rng):
    X = rng.normal(size=(30, 3))
    ds = MultiViewDataset([X])
    want, _ = kmeans(X, KMeansConfig(k=3))
    np.testing.assert_array_equal(baselines.feature_concat(ds, 3).labels, want)


def test_average_kernel_exact_mean(rng):
    views = [rng.normal(size=(12, 2)), rng.normal(size=(12, 5))]
    S = baselines.average_kernel(views)
    parts = [similarity_matrix(X, kernel_width(X)) for X in views]
    np.testing.assert_array_equal(S, (parts[0] + parts[1]) / 2)
    np.testing.assert_array_equal(S, S.T)
    assert np.all((S > 0) & (S <= 1))


def test_kernel_addition_single_view(rng):
    X = rng.normal(size=(30, 2))
    ds = MultiViewDataset([X])
    S = similarity_matrix(X, kernel_width(X))
    want = baselines.normalized_spectral_labels(S, 2)
    np.testing.assert_array_equal(baselines.kernel_addition(ds, 2).labels, want)
