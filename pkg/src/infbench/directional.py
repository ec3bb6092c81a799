"""Forest over direction-aligned features, without bootstrap resampling.

Each feature gets a direction in {-1, 0, +1}: the sign of the summed
deviations of the per-class feature means from the global feature mean,
computed on the raw training features.  Inputs are multiplied element-wise by
the direction vector before any tree sees them, so features whose class means
sit exactly at the global mean are zeroed out entirely.

Every tree trains on all rows; ensemble diversity comes only from per-node
feature subsampling.  Prediction is a plurality vote over the trees' predicted
class indices, ties resolved to the lowest class index.  There is deliberately
no predict_proba: the ensemble is defined by its votes, and downstream
consumers must take the vote path.
"""

from __future__ import annotations

import numpy as np

from .core import Estimator, check_fit_inputs, derive_seed, resolve_seed, rng_from
from .errors import MissingClass
from .baselearners.forest import plurality_vote
from .baselearners.tree import grow_tree


def feature_directions(X, y_idx, n_classes: int) -> np.ndarray:
    """Per-feature sign of the total class-mean deviation from the global mean.

    d_j = sign(sum_c (mu_{c,j} - mu_j)) with sign(0) = 0, shape (f,), float64.
    The sign comparison is exact: no epsilon band around zero.
    """
    X = np.asarray(X, dtype=np.float64)
    y_idx = np.asarray(y_idx, dtype=np.int64)
    global_mean = X.mean(axis=0)
    total = np.zeros(X.shape[1], dtype=np.float64)
    for c in range(n_classes):
        members = y_idx == c
        if not members.any():
            raise MissingClass(f"class index {c} has no members")
        total += X[members].mean(axis=0) - global_mean
    return np.sign(total)


class DirectionalForest(Estimator):
    """Feature-direction ensemble classifier.

    Tree i draws its per-node feature subsets from ``derive_seed(seed, i)``,
    a distinct stream per tree.  Sharing one stream across trees would make
    every tree identical here, because without bootstrap the trees differ only
    through feature sampling.
    """

    kind = "directional_forest"

    def __init__(self, n_estimators: int = 100, max_depth: int | None = None,
                 min_samples_split: int = 2, min_samples_leaf: int = 1,
                 max_features="sqrt", seed: int | None = None):
        self.n_estimators = n_estimators
        self.max_depth = max_depth
        self.min_samples_split = min_samples_split
        self.min_samples_leaf = min_samples_leaf
        self.max_features = max_features
        self.seed = seed
        self.classes_ = None

    def fresh_clone(self, seed: int | None = None) -> "DirectionalForest":
        return DirectionalForest(
            n_estimators=self.n_estimators,
            max_depth=self.max_depth,
            min_samples_split=self.min_samples_split,
            min_samples_leaf=self.min_samples_leaf,
            max_features=self.max_features,
            seed=self.seed if seed is None else seed,
        )

    def fit(self, X, y) -> "DirectionalForest":
        A, y_idx, classes = check_fit_inputs(X, y)
        self.directions_ = feature_directions(A, y_idx, classes.size)
        Xd = A * self.directions_
        base = resolve_seed(self.seed)
        self.trees_ = [
            grow_tree(
                Xd, y_idx, classes.size,
                max_depth=self.max_depth,
                min_samples_split=self.min_samples_split,
                min_samples_leaf=self.min_samples_leaf,
                max_features=self.max_features,
                feature_rng=rng_from(derive_seed(base, i)),
            )
            for i in range(self.n_estimators)
        ]
        self.n_features_ = A.shape[1]
        self.classes_ = classes
        return self

    def predict(self, X) -> np.ndarray:
        A = self._check_predict_input(X)
        Xd = A * self.directions_
        votes = np.stack([t.predict_idx(Xd) for t in self.trees_], axis=1)
        return self.classes_.decode(plurality_vote(votes))

    def get_state(self) -> dict:
        self._require_fitted()
        return {
            "hyperparams": {
                "n_estimators": self.n_estimators,
                "max_depth": self.max_depth,
                "min_samples_split": self.min_samples_split,
                "min_samples_leaf": self.min_samples_leaf,
                "max_features": self.max_features,
                "seed": self.seed,
            },
            "classes": list(self.classes_.labels),
            "directions": self.directions_.tolist(),
            "trees": [t.to_dict() for t in self.trees_],
        }

    @classmethod
    def from_state(cls, state: dict) -> "DirectionalForest":
        from .core import ClassSet
        from .baselearners.tree import TreeModel

        est = cls(**state["hyperparams"])
        est.classes_ = ClassSet(tuple(state["classes"]))
        est.directions_ = np.asarray(state["directions"], dtype=np.float64)
        est.trees_ = [TreeModel.from_dict(d) for d in state["trees"]]
        est.n_features_ = est.directions_.shape[0]
        return est
