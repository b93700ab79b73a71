from .bagging import BaggingTreeClassifier
from .base import BaseClassifier, ScoreUnavailableError, scores_to_labels
from .dummy import DummyStratifiedClassifier
from .forest import RandomForestClassifier
from .hist_gb import HistGradientBoostingClassifier
from .linear_sgd import SGDHingeClassifier
from .mlp import MLPClassifier
from .naive_bayes import GaussianNaiveBayes
from .registry import (
    BENCHMARK_NAMES,
    KIND_TO_CLASS,
    ModelSpec,
    benchmark_spec,
    benchmark_specs,
    class_for_kind,
)
from .serialize import (
    deterministic_digest,
    load_model,
    model_from_json,
    model_to_json,
    save_model,
)
from .tree import DecisionTreeClassifier, TreeArrays, grow_tree
from .voting import HardVotingClassifier

__all__ = [
    "BaseClassifier",
    "ScoreUnavailableError",
    "scores_to_labels",
    "DummyStratifiedClassifier",
    "GaussianNaiveBayes",
    "SGDHingeClassifier",
    "DecisionTreeClassifier",
    "RandomForestClassifier",
    "BaggingTreeClassifier",
    "HistGradientBoostingClassifier",
    "MLPClassifier",
    "HardVotingClassifier",
    "TreeArrays",
    "grow_tree",
    "ModelSpec",
    "KIND_TO_CLASS",
    "BENCHMARK_NAMES",
    "benchmark_spec",
    "benchmark_specs",
    "class_for_kind",
    "model_to_json",
    "model_from_json",
    "save_model",
    "load_model",
    "deterministic_digest",
]
