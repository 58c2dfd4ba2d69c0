"""Binary symptom clustering and triage for small cardiology datasets."""

from ._backend import BACKEND
from .autocorr import (
    RiskScore,
    RiskThresholds,
    TriageCategory,
    autocorrelation,
    categorize_risk,
    risk_scores,
)
from .dataset import (
    Dataset,
    DatasetError,
    FeatureSchema,
    PatientRecord,
    builtin_table1,
    parse_dataset,
    serialize_dataset,
    validate,
)
from .kmeans import ClusterModel, ClusterState, KMeansConfig, cluster_stats, run, wcss
from .metrics import dissimilarity_matrix, euclidean, hamming
from .oracle import certify_local_optimum, enumerate_partitions, global_optimum
from .triage import TriageReport, classify, map_categories

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "ClusterModel",
    "ClusterState",
    "Dataset",
    "DatasetError",
    "FeatureSchema",
    "KMeansConfig",
    "PatientRecord",
    "RiskScore",
    "RiskThresholds",
    "TriageCategory",
    "TriageReport",
    "autocorrelation",
    "builtin_table1",
    "categorize_risk",
    "certify_local_optimum",
    "classify",
    "cluster_stats",
    "dissimilarity_matrix",
    "enumerate_partitions",
    "euclidean",
    "global_optimum",
    "hamming",
    "map_categories",
    "parse_dataset",
    "risk_scores",
    "run",
    "serialize_dataset",
    "validate",
    "wcss",
]
