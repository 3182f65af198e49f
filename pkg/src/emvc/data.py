"""Multi-view datasets: CSV loading, the two-view Gaussian benchmark and
error injection."""

import csv
import math
from dataclasses import dataclass, field, replace
from pathlib import Path

import numpy as np

from ._validation import check_views
from .exceptions import ParseError, SchemaError, ShapeError


@dataclass
class MultiViewDataset:
    views: list
    labels: np.ndarray = None
    names: list = field(default_factory=list)

    def __post_init__(self):
        try:
            self.views = check_views(self.views)
        except ShapeError as exc:
            raise SchemaError(str(exc)) from exc
        if not self.names:
            self.names = [f"view{k}" for k in range(len(self.views))]
        if len(self.names) != len(self.views):
            raise SchemaError("one name per view is required")
        if self.labels is not None:
            self.labels = np.asarray(self.labels).ravel()
            if self.labels.size != self.n_samples:
                raise SchemaError(
                    f"{self.labels.size} labels for {self.n_samples} samples")

    @property
    def n_samples(self):
        return self.views[0].shape[0]

    @property
    def n_views(self):
        return len(self.views)

    def with_views(self, views):
        return replace(self, views=views)


def _is_number(cell):
    try:
        float(cell)
    except ValueError:
        return False
    return True


def read_matrix(path):
    """Read a numeric CSV file; a non-numeric first line is a header."""
    path = Path(path)
    with open(path, newline="") as fh:
        rows = [r for r in csv.reader(fh) if r and any(c.strip() for c in r)]
    if rows and not all(_is_number(c) for c in rows[0]):
        rows = rows[1:]
    if not rows:
        raise SchemaError(f"{path}: no data rows")
    width = len(rows[0])
    out = np.empty((len(rows), width))
    for i, row in enumerate(rows):
        if len(row) != width:
            raise SchemaError(
                f"{path}: row {i} has {len(row)} columns, expected {width}")
        for j, cell in enumerate(row):
            try:
                out[i, j] = float(cell)
            except ValueError:
                raise ParseError(f"{path}: non-numeric cell {cell!r} at row "
                                 f"{i}, column {j}", row=i, col=j,
                                 path=str(path)) from None
    return out


def write_matrix(path, X):
    # repr round-trips doubles exactly
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        for row in np.atleast_2d(X):
            writer.writerow([repr(float(v)) for v in row])


def read_labels(path):
    lab = read_matrix(path)
    if lab.shape[1] != 1:
        raise SchemaError(f"{path}: label file must have a single column")
    lab = lab[:, 0]
    if np.all(lab == np.round(lab)):
        return lab.astype(int)
    return lab


def load_views(paths, label_path=None):
    """Load one CSV file per view (rows are samples) and optional labels."""
    views = [read_matrix(p) for p in paths]
    n = views[0].shape[0]
    for p, v in zip(paths, views):
        if v.shape[0] != n:
            raise SchemaError(
                f"{p} has {v.shape[0]} rows, {paths[0]} has {n}")
    labels = read_labels(label_path) if label_path is not None else None
    return MultiViewDataset(views, labels, [Path(p).stem for p in paths])


def save_views(ds, directory):
    """Write ``<name>.csv`` per view (and ``labels.csv``); return the paths."""
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    paths = []
    for name, X in zip(ds.names, ds.views):
        p = directory / f"{name}.csv"
        write_matrix(p, X)
        paths.append(p)
    label_path = None
    if ds.labels is not None:
        label_path = directory / "labels.csv"
        write_matrix(label_path, ds.labels[:, None])
    return paths, label_path


MEANS = {
    0: [np.array([1.0, 1.0]), np.array([2.0, 2.0])],
    1: [np.array([2.0, 2.0]), np.array([1.0, 1.0])],
}
COV_A = np.array([[1.0, 0.5], [0.5, 1.5]])
COV_B = np.array([[0.3, 0.0], [0.0, 0.6]])
COVS = {0: [COV_A, COV_B], 1: [COV_B, COV_A]}


def synthetic_two_view(n_per_cluster=500, seed=0):
    """Two overlapping bivariate Gaussian clusters observed in two views.

    A cluster is drawn for every sample first and both views are then
    sampled from that cluster's component. View 0 has means (1, 1) and
    (2, 2), view 1 the reverse; the tilted covariance belongs to cluster 0
    in view 0 and cluster 1 in view 1, the axis-aligned one to the others.
    """
    if n_per_cluster < 1:
        raise ValueError("n_per_cluster must be >= 1")
    rng = np.random.default_rng(seed)
    labels = np.repeat([0, 1], n_per_cluster)
    rng.shuffle(labels)
    views = []
    for v in (0, 1):
        X = np.empty((labels.size, 2))
        for c in (0, 1):
            idx = np.flatnonzero(labels == c)
            X[idx] = rng.multivariate_normal(MEANS[v][c], COVS[v][c],
                                             size=idx.size)
        views.append(X)
    return MultiViewDataset(views, labels, ["view1", "view2"])


def inject_gaussian_noise(ds, snr, seed=0):
    """Add white Gaussian noise with power ``mean(X**2) / snr`` to each view.

    ``snr`` is a linear power ratio.
    """
    if not snr > 0:
        raise ValueError("snr must be positive")
    rng = np.random.default_rng(seed)
    noisy = []
    for X in ds.views:
        power = float(np.mean(X ** 2))
        noisy.append(X + rng.normal(0.0, math.sqrt(power / snr), X.shape))
    return ds.with_views(noisy)


def inject_sample_corruption(ds, fraction, seed=0):
    """Overwrite every feature of a random subset of samples in all views.

    ``ceil(fraction * N)`` samples are chosen without replacement; their
    values are drawn uniformly within each feature's observed range.

    Returns
    -------
    dataset : MultiViewDataset
    corrupted : ndarray of int
        Sorted indices of the corrupted samples.
    """
    if not 0 < fraction < 1:
        raise ValueError("fraction must lie in (0, 1)")
    n = ds.n_samples
    rng = np.random.default_rng(seed)
    # round before ceil so 2/N * N does not become 3
    count = min(n, math.ceil(round(fraction * n, 9)))
    idx = np.sort(rng.choice(n, size=count, replace=False))
    views = []
    for X in ds.views:
        X = X.copy()
        lo, hi = X.min(axis=0), X.max(axis=0)
        X[idx] = rng.uniform(lo, hi, size=(count, X.shape[1]))
        views.append(X)
    return ds.with_views(views), idx
