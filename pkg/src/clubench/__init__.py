"""clubench: benchmark clustering algorithms against expert reference labellings.

Quick tour::

    import clubench

    ds = clubench.load_dataset(data_root, "wut", "x2")
    res = clubench.load_results(results_root, "Genie", ds.battery, ds.dataset, ds.n_clusters)
    clubench.get_score(ds.labellings, res["Genie_G0.3"])          # best over references

    parts = clubench.fit_predict_many(
        clubench.KMeansClusterer(), ds.data, ds.n_clusters)
    clubench.get_score(ds.labellings, parts)
"""

__version__ = "0.1.0"

from . import errors
from .assignment import Permutation, solve_assignment
from .cluster import (
    AgglomerativeClusterer,
    KMeansClusterer,
    KMeansConfig,
    MergeTree,
    agglomerative,
    agglomerative_tree,
    fit_predict_many,
    kmeans,
    relabel_first_occurrence,
)
from .data import (
    BenchmarkDataset,
    ReferenceLabelling,
    list_batteries,
    list_datasets,
    load_dataset,
    save_dataset,
    validate_labelling,
)
from .kernels import BACKEND as KERNEL_BACKEND
from .metrics import (
    METRIC_IDS,
    ConfusionMatrix,
    adjusted_rand,
    confusion_matrix,
    nca,
    normalized_mutual_info,
)
from .plotting import scatter_svg
from .results import list_result_methods, load_results, save_results
from .scoring import PartitionSet, filter_noise, get_score, score_all, score_one

__all__ = [
    "AgglomerativeClusterer",
    "BenchmarkDataset",
    "ConfusionMatrix",
    "KERNEL_BACKEND",
    "KMeansClusterer",
    "KMeansConfig",
    "METRIC_IDS",
    "MergeTree",
    "PartitionSet",
    "Permutation",
    "ReferenceLabelling",
    "__version__",
    "adjusted_rand",
    "agglomerative",
    "agglomerative_tree",
    "confusion_matrix",
    "errors",
    "filter_noise",
    "fit_predict_many",
    "get_score",
    "kmeans",
    "list_batteries",
    "list_datasets",
    "list_result_methods",
    "load_dataset",
    "load_results",
    "nca",
    "normalized_mutual_info",
    "relabel_first_occurrence",
    "save_dataset",
    "save_results",
    "scatter_svg",
    "score_all",
    "score_one",
    "solve_assignment",
    "validate_labelling",
]
