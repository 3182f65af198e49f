"""External clustering metrics computed from the contingency table."""

from dataclasses import asdict, dataclass

import numpy as np
from scipy.optimize import linear_sum_assignment

from ._validation import check_labels
from .exceptions import ShapeError

NMI_VARIANTS = ("sqrt", "min", "max", "arithmetic")


@dataclass(frozen=True)
class MetricsReport:
    f_score: float
    precision: float
    recall: float
    nmi: float
    entropy: float
    accuracy: float
    adjusted_rand: float

    def as_dict(self):
        return asdict(self)

    def to_text(self):
        """One ``key=value`` record per line."""
        return "".join(f"{k}={v!r}\n" for k, v in self.as_dict().items())


def contingency(labels, truth):
    """Contingency table: rows are predicted clusters, columns are classes."""
    labels, truth = check_labels(labels, truth)
    _, li = np.unique(labels, return_inverse=True)
    _, ti = np.unique(truth, return_inverse=True)
    table = np.zeros((li.max() + 1 if li.size else 0,
                      ti.max() + 1 if ti.size else 0), dtype=np.int64)
    np.add.at(table, (li, ti), 1)
    return table


def _comb2(x):
    x = np.asarray(x, dtype=np.int64)
    return x * (x - 1) // 2


def pair_counts(labels, truth):
    """``(tp, fp, fn)`` over unordered pairs of samples.

    ``tp`` counts pairs sharing a cluster in both labellings, ``fp`` pairs
    together only in ``labels`` and ``fn`` pairs together only in ``truth``.
    """
    table = contingency(labels, truth)
    tp = int(_comb2(table).sum())
    pred = int(_comb2(table.sum(axis=1)).sum())
    true = int(_comb2(table.sum(axis=0)).sum())
    return tp, pred - tp, true - tp


def _ratio(a, b):
    return a / b if b else 0.0


def pairwise_prf(labels, truth):
    """Pair-counting F-score, precision and recall (0/0 is taken as 0)."""
    labels, truth = check_labels(labels, truth)
    if labels.size < 2:
        raise ShapeError("pair counting needs at least two samples")
    tp, fp, fn = pair_counts(labels, truth)
    p = _ratio(tp, tp + fp)
    r = _ratio(tp, tp + fn)
    return _ratio(2 * p * r, p + r), p, r


def _entropy(counts):
    p = counts[counts > 0] / counts.sum()
    return float(-(p * np.log(p)).sum())


def nmi(labels, truth, average="sqrt"):
    """Normalised mutual information with natural-log entropies.

    ``average`` picks the normaliser: geometric mean (``sqrt``), ``min``,
    ``max`` or ``arithmetic`` mean of the two entropies.
    """
    table = contingency(labels, truth).astype(float)
    n = table.sum()
    ha = _entropy(table.sum(axis=1))
    hb = _entropy(table.sum(axis=0))
    if ha == 0 or hb == 0:
        return 1.0 if ha == hb else 0.0
    nz = table > 0
    outer = np.outer(table.sum(axis=1), table.sum(axis=0))
    mi = float((table[nz] / n * np.log(table[nz] * n / outer[nz])).sum())
    if average == "sqrt":
        norm = np.sqrt(ha * hb)
    elif average == "min":
        norm = min(ha, hb)
    elif average == "max":
        norm = max(ha, hb)
    elif average == "arithmetic":
        norm = (ha + hb) / 2
    else:
        raise ValueError(f"average must be one of {NMI_VARIANTS}")
    return float(min(max(mi / norm, 0.0), 1.0))


def clustering_accuracy(labels, truth):
    """Fraction of samples correctly labelled under the best one-to-one
    matching of clusters to classes."""
    table = contingency(labels, truth)
    rows, cols = linear_sum_assignment(table, maximize=True)
    return float(table[rows, cols].sum() / table.sum())


def conditional_entropy(labels, truth):
    """``H(truth | labels)`` in bits."""
    table = contingency(labels, truth).astype(float)
    n = table.sum()
    h = 0.0
    for row in table:
        m = row.sum()
        p = row[row > 0] / m
        h -= m / n * float((p * np.log2(p)).sum())
    return max(float(h), 0.0)


def adjusted_rand(labels, truth):
    """Hubert-Arabie adjusted Rand index."""
    table = contingency(labels, truth)
    n = int(table.sum())
    index = float(_comb2(table).sum())
    sum_a = float(_comb2(table.sum(axis=1)).sum())
    sum_b = float(_comb2(table.sum(axis=0)).sum())
    total = float(_comb2(n))
    expected = sum_a * sum_b / total if total else 0.0
    max_index = (sum_a + sum_b) / 2
    if max_index == expected:
        # both labellings trivial in the same way; they agree perfectly
        return 1.0
    return (index - expected) / (max_index - expected)


def evaluate(labels, truth, nmi_average="sqrt"):
    """All metrics as a :class:`MetricsReport`."""
    f, p, r = pairwise_prf(labels, truth)
    return MetricsReport(
        f_score=f, precision=p, recall=r,
        nmi=nmi(labels, truth, nmi_average),
        entropy=conditional_entropy(labels, truth),
        accuracy=clustering_accuracy(labels, truth),
        adjusted_rand=adjusted_rand(labels, truth))


@dataclass
class ClusteringResult:
    """Labels from one clustering run, scored when ground truth is known."""

    labels: np.ndarray
    metrics: MetricsReport = None

    @classmethod
    def scored(cls, labels, truth=None):
        labels = np.asarray(labels)
        return cls(labels, evaluate(labels, truth) if truth is not None else None)
