"""Bootstrap-aggregated Gini trees with probability averaging."""

from __future__ import annotations

import numpy as np

from ..core import Estimator, check_fit_inputs, derive_seed, resolve_seed, rng_from
from .tree import grow_tree


def plurality_vote(votes: np.ndarray) -> np.ndarray:
    """Most frequent class index per row of an (n, T) vote matrix.

    Ties go to the lowest class index.
    """
    votes = np.asarray(votes, dtype=np.int64)
    out = np.empty(votes.shape[0], dtype=np.int64)
    for i, row in enumerate(votes):
        out[i] = np.argmax(np.bincount(row))
    return out


class RandomForest(Estimator):
    """Random forest: bootstrap rows per tree, sqrt feature sampling per node.

    Tree i draws its bootstrap sample from the stream ``derive_seed(seed, i)``
    and its per-node feature subsets from a child stream of that, so the
    ensemble is reproducible tree by tree and invariant to fitting order.
    """

    kind = "random_forest"

    def __init__(self, n_estimators: int = 100, max_depth: int | None = None,
                 min_samples_split: int = 2, min_samples_leaf: int = 1,
                 max_features="sqrt", bootstrap: bool = True,
                 seed: int | None = None):
        self.n_estimators = n_estimators
        self.max_depth = max_depth
        self.min_samples_split = min_samples_split
        self.min_samples_leaf = min_samples_leaf
        self.max_features = max_features
        self.bootstrap = bootstrap
        self.seed = seed
        self.classes_ = None

    def fresh_clone(self, seed: int | None = None) -> "RandomForest":
        return RandomForest(
            n_estimators=self.n_estimators,
            max_depth=self.max_depth,
            min_samples_split=self.min_samples_split,
            min_samples_leaf=self.min_samples_leaf,
            max_features=self.max_features,
            bootstrap=self.bootstrap,
            seed=self.seed if seed is None else seed,
        )

    def fit(self, X, y) -> "RandomForest":
        A, y_idx, classes = check_fit_inputs(X, y)
        base = resolve_seed(self.seed)
        n = A.shape[0]
        self.trees_ = []
        for i in range(self.n_estimators):
            tree_seed = derive_seed(base, i)
            if self.bootstrap:
                rows = rng_from(tree_seed).integers(0, n, size=n)
            else:
                rows = np.arange(n)
            feature_rng = rng_from(derive_seed(tree_seed, 1))
            self.trees_.append(
                grow_tree(
                    A[rows], y_idx[rows], classes.size,
                    max_depth=self.max_depth,
                    min_samples_split=self.min_samples_split,
                    min_samples_leaf=self.min_samples_leaf,
                    max_features=self.max_features,
                    feature_rng=feature_rng,
                )
            )
        self.n_features_ = A.shape[1]
        self.classes_ = classes
        return self

    def predict_proba(self, X) -> np.ndarray:
        A = self._check_predict_input(X)
        total = np.zeros((A.shape[0], self.classes_.size), dtype=np.float64)
        for tree in self.trees_:
            total += tree.distribution(A)
        return total / len(self.trees_)

    def predict(self, X) -> np.ndarray:
        proba = self.predict_proba(X)
        return self.classes_.decode(np.argmax(proba, axis=1).astype(np.int64))

    def get_state(self) -> dict:
        self._require_fitted()
        return {
            "hyperparams": {
                "n_estimators": self.n_estimators,
                "max_depth": self.max_depth,
                "min_samples_split": self.min_samples_split,
                "min_samples_leaf": self.min_samples_leaf,
                "max_features": self.max_features,
                "bootstrap": self.bootstrap,
                "seed": self.seed,
            },
            "classes": list(self.classes_.labels),
            "trees": [t.to_dict() for t in self.trees_],
        }

    @classmethod
    def from_state(cls, state: dict) -> "RandomForest":
        from ..core import ClassSet
        from .tree import TreeModel

        est = cls(**state["hyperparams"])
        est.trees_ = [TreeModel.from_dict(d) for d in state["trees"]]
        est.classes_ = ClassSet(tuple(state["classes"]))
        est.n_features_ = est.trees_[0].n_features
        return est
