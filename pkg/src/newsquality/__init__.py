"""News headline/link quality classification pipeline.

Labels records by domain-level quality scores, prunes sparse features,
balances classes per publication year, trains a benchmark of eleven
classic classifiers implemented from scratch, and evaluates them with a
shared metric suite and stratified cross-validation.  Every stochastic
step is seeded and reproducible bit-for-bit.
"""

from .evaluation import (
    CVReport,
    EvalReport,
    compute_metrics,
    cross_validate,
    evaluate_model,
    roc_auc,
)
from .features import (
    ColumnScaler,
    SparsityFilter,
    SparsityReport,
    SurfaceMeasures,
    surface_measure_matrix,
    surface_measures,
)
from .io import (
    HeadlineRecord,
    RawDataset,
    RejectionLog,
    iter_records,
    read_records,
    write_records,
)
from .labeling import (
    DEFAULT_THRESHOLD,
    DomainQualityTable,
    Threshold,
    binarize,
    compute_threshold,
    extract_domain,
    join_pc1,
    load_pc1_table,
)
from .models import (
    BaggingTreeClassifier,
    DecisionTreeClassifier,
    DummyStratifiedClassifier,
    GaussianNaiveBayes,
    HardVotingClassifier,
    HistGradientBoostingClassifier,
    MLPClassifier,
    ModelSpec,
    RandomForestClassifier,
    SGDHingeClassifier,
    benchmark_specs,
    load_model,
    save_model,
)
from .pipeline import PreparedDataset, label_dataset, prepare_dataset
from .rng import Xoshiro256StarStar, derive_seed
from .sampling import (
    FoldPlan,
    SplitPlan,
    stratified_kfold,
    stratified_split,
    undersample_by_year,
)
from .schema import CATEGORIES, FeatureColumn, FeatureSchema
from .synthetic import (
    bayes_accuracy,
    generate_synthetic,
    make_checkerboard,
    make_shifted_gaussians,
)

__version__ = "0.1.0"

__all__ = [
    "CATEGORIES",
    "FeatureColumn",
    "FeatureSchema",
    "HeadlineRecord",
    "RawDataset",
    "RejectionLog",
    "iter_records",
    "read_records",
    "write_records",
    "generate_synthetic",
    "make_checkerboard",
    "make_shifted_gaussians",
    "bayes_accuracy",
    "DEFAULT_THRESHOLD",
    "DomainQualityTable",
    "Threshold",
    "extract_domain",
    "load_pc1_table",
    "compute_threshold",
    "binarize",
    "join_pc1",
    "SurfaceMeasures",
    "surface_measures",
    "surface_measure_matrix",
    "SparsityFilter",
    "SparsityReport",
    "ColumnScaler",
    "undersample_by_year",
    "stratified_split",
    "stratified_kfold",
    "SplitPlan",
    "FoldPlan",
    "ModelSpec",
    "benchmark_specs",
    "save_model",
    "load_model",
    "DummyStratifiedClassifier",
    "GaussianNaiveBayes",
    "SGDHingeClassifier",
    "DecisionTreeClassifier",
    "RandomForestClassifier",
    "BaggingTreeClassifier",
    "HistGradientBoostingClassifier",
    "HardVotingClassifier",
    "MLPClassifier",
    "compute_metrics",
    "roc_auc",
    "evaluate_model",
    "cross_validate",
    "EvalReport",
    "CVReport",
    "label_dataset",
    "prepare_dataset",
    "PreparedDataset",
    "Xoshiro256StarStar",
    "derive_seed",
]
