"""Stacked generalization with out-of-fold meta-features.

Base learners produce per-row meta-features through cross-validation: the
features for the rows of fold k come from clones trained with fold k held
out, so no base model ever describes a row it was trained on.  A
meta-estimator is then trained on those features, and the bases are refit on
the full data for inference.

Seed layout (m bases, cv folds, base seed B): folds use stream 0, the
out-of-fold clone for (fold k, base j) uses stream 1 + k*m + j, the full-data
refit of base j uses stream 1 + cv*m + j, and the meta-estimator uses stream
1 + cv*m + m.  Cell streams are independent, so the fit grid can run in any
order or in parallel without changing the result.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .core import (
    Estimator,
    check_fit_inputs,
    derive_seed,
    resolve_seed,
    supports_proba,
)
from .errors import InfbenchError, InsufficientClassMembers, MetaNoProba
from .baselearners import DecisionTree, LogisticRegression, RandomForest


def default_bases() -> list:
    return [
        LogisticRegression(max_iter=1000),
        RandomForest(n_estimators=100),
        DecisionTree(),
    ]


@dataclass
class StackingConfig:
    base_estimators: list = field(default_factory=default_bases)
    meta_estimator: Estimator = field(default_factory=lambda: LogisticRegression(max_iter=1000))
    cv: int = 5
    use_probas: bool = True
    use_original_features: bool = False
    seed: int | None = None

    def __post_init__(self):
        if self.cv < 2:
            raise InfbenchError(f"cv must be >= 2, got {self.cv}")
        if not self.base_estimators:
            raise InfbenchError("at least one base estimator is required")


def stratified_folds(y_idx: np.ndarray, cv: int, seed: int) -> np.ndarray:
    """Assign each row a fold index in [0, cv), stratified by class.

    Members of each class are shuffled with a per-class derived stream and
    dealt round-robin, so per-class fold sizes differ by at most one and the
    assignment is a pure function of (y, cv, seed).
    """
    y_idx = np.asarray(y_idx, dtype=np.int64)
    if cv < 2:
        raise InfbenchError(f"cv must be >= 2, got {cv}")
    fold_of = np.empty(y_idx.shape[0], dtype=np.int64)
    for c in range(int(y_idx.max()) + 1):
        members = np.flatnonzero(y_idx == c)
        if members.size < cv:
            raise InsufficientClassMembers(c, int(members.size), cv)
        rng = np.random.default_rng(derive_seed(seed, c))
        members = members[rng.permutation(members.size)]
        fold_of[members] = np.arange(members.size) % cv
    return fold_of


def _block_width(prototype, n_classes: int, use_probas: bool) -> int:
    if use_probas and supports_proba(prototype):
        return n_classes
    return 1


def _base_block(fitted, X: np.ndarray, classes, use_probas: bool) -> np.ndarray:
    """One base's meta-feature block: class probabilities, or a single column
    of predicted class indices when probabilities are unavailable."""
    if use_probas and supports_proba(fitted):
        return np.asarray(fitted.predict_proba(X), dtype=np.float64)
    idx = classes.encode(fitted.predict(X))
    return idx.astype(np.float64).reshape(-1, 1)


class MetaSynthesisClassifier(Estimator):
    """Two-level stacked classifier over the estimator contract.

    Base prototypes are never fitted in place; every fit happens on a fresh
    clone reseeded from this estimator's own seed streams, so a prototype's
    own seed only matters if the stacker's seed is None.
    """

    kind = "meta_synthesis"

    def __init__(self, base_estimators=None, meta_estimator=None, cv: int = 5,
                 use_probas: bool = True, use_original_features: bool = False,
                 seed: int | None = None):
        self.config = StackingConfig(
            base_estimators=list(base_estimators) if base_estimators is not None else default_bases(),
            meta_estimator=meta_estimator if meta_estimator is not None else LogisticRegression(max_iter=1000),
            cv=cv,
            use_probas=use_probas,
            use_original_features=use_original_features,
            seed=seed,
        )
        self.classes_ = None

    @property
    def seed(self):
        return self.config.seed

    def fresh_clone(self, seed: int | None = None) -> "MetaSynthesisClassifier":
        cfg = self.config
        return MetaSynthesisClassifier(
            base_estimators=[b.fresh_clone() for b in cfg.base_estimators],
            meta_estimator=cfg.meta_estimator.fresh_clone(),
            cv=cfg.cv,
            use_probas=cfg.use_probas,
            use_original_features=cfg.use_original_features,
            seed=cfg.seed if seed is None else seed,
        )

    def oof_meta_features(self, X, y):
        """Out-of-fold meta-feature matrix for (X, y), plus the fold map.

        Returns ``(meta, fold_of)`` where meta has one column block per base
        in config order, prefixed by the original features when configured.
        """
        A, y_idx, classes = check_fit_inputs(X, y)
        cfg = self.config
        base = resolve_seed(cfg.seed)
        fold_of = stratified_folds(y_idx, cfg.cv, derive_seed(base, 0))
        m = len(cfg.base_estimators)
        widths = [_block_width(p, classes.size, cfg.use_probas) for p in cfg.base_estimators]
        meta = np.zeros((A.shape[0], sum(widths)), dtype=np.float64)
        raw = np.asarray(y, dtype=object)
        for k in range(cfg.cv):
            test = fold_of == k
            train = ~test
            col = 0
            for j, proto in enumerate(cfg.base_estimators):
                clone = proto.fresh_clone(seed=derive_seed(base, 1 + k * m + j))
                clone.fit(A[train], raw[train])
                meta[test, col:col + widths[j]] = _base_block(
                    clone, A[test], classes, cfg.use_probas
                )
                col += widths[j]
        if cfg.use_original_features:
            meta = np.hstack([A, meta])
        return meta, fold_of

    def fit(self, X, y) -> "MetaSynthesisClassifier":
        A, y_idx, classes = check_fit_inputs(X, y)
        cfg = self.config
        base = resolve_seed(cfg.seed)
        m = len(cfg.base_estimators)

        meta, _ = self.oof_meta_features(A, y)
        raw = np.asarray(y, dtype=object)
        self.base_models_ = []
        for j, proto in enumerate(cfg.base_estimators):
            clone = proto.fresh_clone(seed=derive_seed(base, 1 + cfg.cv * m + j))
            self.base_models_.append(clone.fit(A, raw))
        self.meta_model_ = cfg.meta_estimator.fresh_clone(
            seed=derive_seed(base, 1 + cfg.cv * m + m)
        ).fit(meta, raw)

        self.meta_width_ = meta.shape[1]
        self.n_features_ = A.shape[1]
        self.classes_ = classes
        return self

    def _inference_meta(self, X) -> np.ndarray:
        A = self._check_predict_input(X)
        cfg = self.config
        blocks = [
            _base_block(fitted, A, self.classes_, cfg.use_probas)
            for fitted in self.base_models_
        ]
        meta = np.hstack(blocks)
        if cfg.use_original_features:
            meta = np.hstack([A, meta])
        return meta

    def predict(self, X) -> np.ndarray:
        self._require_fitted()
        return self.meta_model_.predict(self._inference_meta(X))

    def predict_proba(self, X) -> np.ndarray:
        self._require_fitted()
        if not supports_proba(self.config.meta_estimator):
            raise MetaNoProba(type(self.config.meta_estimator).__name__)
        return self.meta_model_.predict_proba(self._inference_meta(X))

    def get_state(self) -> dict:
        from .serialize import estimator_state

        self._require_fitted()
        cfg = self.config
        return {
            "hyperparams": {
                "cv": cfg.cv,
                "use_probas": cfg.use_probas,
                "use_original_features": cfg.use_original_features,
                "seed": cfg.seed,
            },
            "classes": list(self.classes_.labels),
            "meta_width": self.meta_width_,
            "n_features": self.n_features_,
            "base_models": [estimator_state(b) for b in self.base_models_],
            "meta_model": estimator_state(self.meta_model_),
        }

    @classmethod
    def from_state(cls, state: dict) -> "MetaSynthesisClassifier":
        from .core import ClassSet
        from .serialize import estimator_from_state

        bases = [estimator_from_state(s) for s in state["base_models"]]
        meta = estimator_from_state(state["meta_model"])
        est = cls(
            base_estimators=[b.fresh_clone() for b in bases],
            meta_estimator=meta.fresh_clone(),
            **state["hyperparams"],
        )
        est.base_models_ = bases
        est.meta_model_ = meta
        est.classes_ = ClassSet(tuple(state["classes"]))
        est.meta_width_ = int(state["meta_width"])
        est.n_features_ = int(state["n_features"])
        return est
