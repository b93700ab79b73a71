"""Model kinds, hyperparameter validation, and the benchmark lineup."""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .bagging import BaggingTreeClassifier
from .dummy import DummyStratifiedClassifier
from .forest import RandomForestClassifier
from .hist_gb import HistGradientBoostingClassifier
from .linear_sgd import SGDHingeClassifier
from .mlp import MLPClassifier
from .naive_bayes import GaussianNaiveBayes
from .tree import DecisionTreeClassifier
from .voting import HardVotingClassifier

KIND_TO_CLASS = {
    "dummy_stratified": DummyStratifiedClassifier,
    "gaussian_nb": GaussianNaiveBayes,
    "sgd_svm": SGDHingeClassifier,
    "decision_tree": DecisionTreeClassifier,
    "random_forest": RandomForestClassifier,
    "bagging": BaggingTreeClassifier,
    "hist_gb": HistGradientBoostingClassifier,
    "voting_hard": HardVotingClassifier,
    "mlp": MLPClassifier,
}

_SEEDLESS_KINDS = ("gaussian_nb",)


def class_for_kind(kind: str):
    try:
        return KIND_TO_CLASS[kind]
    except KeyError:
        raise ValueError(
            f"unknown model kind {kind!r}; expected one of {sorted(KIND_TO_CLASS)}"
        ) from None


@dataclass
class ModelSpec:
    """Declarative classifier configuration: kind + hyperparameters + seed."""

    kind: str
    params: dict = field(default_factory=dict)
    seed: int = 42

    def __post_init__(self):
        cls = class_for_kind(self.kind)
        valid = set(cls._param_names()) - {"seed"}
        unknown = set(self.params) - valid
        if unknown:
            raise ValueError(
                f"invalid hyperparameters for {self.kind!r}: {sorted(unknown)}; "
                f"valid: {sorted(valid)}"
            )
        self.build()  # constructor-level validation of values

    def build(self):
        cls = class_for_kind(self.kind)
        params = dict(self.params)
        if self.kind not in _SEEDLESS_KINDS:
            params["seed"] = self.seed
        model = cls(**params)
        _validate_values(model)
        return model

    def to_dict(self) -> dict:
        return {"kind": self.kind, "params": dict(self.params), "seed": self.seed}

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, raw: dict) -> "ModelSpec":
        params = {
            k: tuple(v) if isinstance(v, list) else v
            for k, v in dict(raw.get("params", {})).items()
        }
        return cls(kind=raw["kind"], params=params, seed=raw.get("seed", 42))


def _validate_values(model) -> None:
    params = model.get_params()
    n_estimators = params.get("n_estimators")
    if n_estimators is not None and n_estimators < 1:
        raise ValueError("n_estimators must be >= 1")
    for frac_name in ("max_samples", "max_features"):
        frac = params.get(frac_name)
        if frac is not None and not 0.0 < frac <= 1.0:
            raise ValueError(f"{frac_name} must be in (0, 1]")
    max_depth = params.get("max_depth")
    if max_depth is not None and max_depth < 0:
        raise ValueError("max_depth must be >= 0 or None")
    max_iter = params.get("max_iter")
    if max_iter is not None and max_iter < 1:
        raise ValueError("max_iter must be >= 1")


# Benchmark lineup: the eleven default configurations trained by the CLI.
# (name, display name, spec)
def benchmark_specs(seed: int = 42) -> list[tuple[str, str, ModelSpec]]:
    return [
        (
            "bagging",
            "Bagging Classifier",
            ModelSpec("bagging", {"n_estimators": 25, "max_samples": 0.6, "max_features": 0.6}, seed),
        ),
        (
            "random_forest_depth_30",
            "Random Forest (200 estimators, max depth 30)",
            ModelSpec("random_forest", {"n_estimators": 200, "max_depth": 30}, seed),
        ),
        (
            "mlp_large",
            "Multilayer Perceptron (large)",
            ModelSpec("mlp", {"hidden_layer_sizes": (256, 128), "max_iter": 1000}, seed),
        ),
        (
            "mlp_small",
            "Multilayer Perceptron (small)",
            ModelSpec("mlp", {"hidden_layer_sizes": (64, 32), "max_iter": 300}, seed),
        ),
        (
            "random_forest_depth_15",
            "Random Forest (200 estimators, max depth 15)",
            ModelSpec("random_forest", {"n_estimators": 200, "max_depth": 15}, seed),
        ),
        (
            "hist_gb",
            "Histogram Gradient Boosting",
            ModelSpec("hist_gb", {}, seed),
        ),
        (
            "random_forest_depth_8",
            "Random Forest (200 estimators, max depth 8)",
            ModelSpec("random_forest", {"n_estimators": 200, "max_depth": 8}, seed),
        ),
        (
            "sgd_svm",
            "SGD SVM (hinge)",
            ModelSpec("sgd_svm", {"max_iter": 1000, "tol": 1e-3}, seed),
        ),
        (
            "voting_hard",
            "Voting Classifier (hard)",
            ModelSpec("voting_hard", {}, seed),
        ),
        (
            "gaussian_nb",
            "Gaussian Naive Bayes",
            ModelSpec("gaussian_nb", {}, seed),
        ),
        (
            "dummy_stratified",
            "Dummy (stratified)",
            ModelSpec("dummy_stratified", {}, seed),
        ),
    ]


BENCHMARK_NAMES = [name for name, _, _ in benchmark_specs()]


def benchmark_spec(name: str, seed: int = 42) -> tuple[str, ModelSpec]:
    for key, display, spec in benchmark_specs(seed):
        if key == name:
            return display, spec
    raise ValueError(
        f"unknown model name {name!r}; expected one of {BENCHMARK_NAMES}"
    )
