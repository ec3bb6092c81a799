"""Registry of benchmark-ready models with their provenance tags."""

from __future__ import annotations

from dataclasses import dataclass

from .baselearners import DecisionTree, LogisticRegression, RandomForest
from .directional import DirectionalForest
from .errors import InfbenchError
from .metasynthesis import MetaSynthesisClassifier


@dataclass(frozen=True)
class ModelEntry:
    model_id: str
    generator: str  # user | system | baseline
    factory: type
    defaults: dict
    description: str

    def make(self, seed=None):
        est = self.factory()
        if seed is not None:
            est = est.fresh_clone(seed=seed)
        return est


MODELS = {
    "meta_synthesis": ModelEntry(
        model_id="meta_synthesis",
        generator="user",
        factory=MetaSynthesisClassifier,
        defaults={
            "bases": ["logistic_regression", "random_forest", "decision_tree"],
            "meta": "logistic_regression",
            "cv": 5,
            "use_probas": True,
            "use_original_features": False,
        },
        description="stacked ensemble over out-of-fold base probabilities",
    ),
    "directional_forest": ModelEntry(
        model_id="directional_forest",
        generator="system",
        factory=DirectionalForest,
        defaults={"n_estimators": 100, "max_features": "sqrt"},
        description="forest on direction-aligned features, no bootstrap",
    ),
    "random_forest": ModelEntry(
        model_id="random_forest",
        generator="baseline",
        factory=RandomForest,
        defaults={"n_estimators": 100, "max_features": "sqrt"},
        description="bootstrap-aggregated gini trees",
    ),
    "logistic_regression": ModelEntry(
        model_id="logistic_regression",
        generator="baseline",
        factory=LogisticRegression,
        defaults={"lr": 0.1, "l2": 0.0001, "max_iter": 1000, "tol": 1e-06},
        description="multinomial softmax regression, full-batch gradient descent",
    ),
    "decision_tree": ModelEntry(
        model_id="decision_tree",
        generator="baseline",
        factory=DecisionTree,
        defaults={"max_depth": None, "min_samples_split": 2},
        description="single gini decision tree",
    ),
}


def get_model(model_id: str) -> ModelEntry:
    entry = MODELS.get(model_id)
    if entry is None:
        known = ", ".join(MODELS)
        raise InfbenchError(f"unknown model id {model_id!r}; known: {known}")
    return entry


def select_models(selection: str) -> list:
    """Resolve a CLI selection ('all' or comma-separated ids) to entries."""
    if selection.strip() == "all":
        return list(MODELS.values())
    ids = [s.strip() for s in selection.split(",") if s.strip()]
    if not ids:
        raise InfbenchError("empty model selection")
    return [get_model(i) for i in ids]
