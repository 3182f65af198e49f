"""Error-robust multi-view clustering through a shared Markov transition
matrix."""

from .estimator import EMVC, MarkovSpectralClustering
from .kmeans import KMeansConfig, kmeans
from .metrics import ClusteringResult, MetricsReport, evaluate
from .solver import EmvcConfig, SolverState, solve

__all__ = [
    "EMVC",
    "MarkovSpectralClustering",
    "KMeansConfig",
    "kmeans",
    "ClusteringResult",
    "MetricsReport",
    "evaluate",
    "EmvcConfig",
    "SolverState",
    "solve",
]

__version__ = "0.1.0"
