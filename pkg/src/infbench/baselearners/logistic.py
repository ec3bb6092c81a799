"""Multinomial logistic regression trained by full-batch gradient descent.

The loss is the mean cross-entropy of the softmax probabilities plus an L2
penalty on the weight matrix (the bias row is not penalized).  Features are
standardized internally to zero mean and unit scale before optimization;
constant columns keep scale 1 so they pass through as zeros.  With zero
initialization the objective is convex and the whole procedure is
deterministic, no seed involved.
"""

from __future__ import annotations

import numpy as np

from ..core import Estimator, check_fit_inputs


def softmax(scores: np.ndarray) -> np.ndarray:
    """Row-wise softmax, shifted by the row max for overflow safety."""
    shifted = scores - scores.max(axis=1, keepdims=True)
    e = np.exp(shifted)
    return e / e.sum(axis=1, keepdims=True)


def loss_and_gradient(W: np.ndarray, b: np.ndarray, X: np.ndarray,
                      y_idx: np.ndarray, l2: float):
    """Mean cross-entropy with L2 on W, and its gradients w.r.t. W and b.

    W has shape (d, C), b shape (C,), X shape (n, d), y_idx integer classes.
    """
    n = X.shape[0]
    P = softmax(X @ W + b)
    correct = P[np.arange(n), y_idx]
    # clip keeps log finite; at float64 P only underflows for margins ~>700
    loss = -np.mean(np.log(np.clip(correct, 1e-300, None)))
    loss += 0.5 * l2 * float(np.sum(W * W))
    G = P.copy()
    G[np.arange(n), y_idx] -= 1.0
    grad_W = X.T @ G / n + l2 * W
    grad_b = G.sum(axis=0) / n
    return loss, grad_W, grad_b


class LogisticRegression(Estimator):
    """Softmax regression over the estimator contract."""

    kind = "logistic_regression"

    def __init__(self, lr: float = 0.1, l2: float = 1e-4,
                 max_iter: int = 1000, tol: float = 1e-6):
        self.lr = lr
        self.l2 = l2
        self.max_iter = max_iter
        self.tol = tol
        self.classes_ = None

    def fresh_clone(self, seed: int | None = None) -> "LogisticRegression":
        # Training is deterministic; the seed argument is accepted for
        # interface uniformity and ignored.
        return LogisticRegression(
            lr=self.lr, l2=self.l2, max_iter=self.max_iter, tol=self.tol
        )

    def fit(self, X, y) -> "LogisticRegression":
        A, y_idx, classes = check_fit_inputs(X, y)
        self.mean_ = A.mean(axis=0)
        scale = A.std(axis=0)
        scale[scale == 0.0] = 1.0
        self.scale_ = scale
        Z = (A - self.mean_) / self.scale_

        d, C = A.shape[1], classes.size
        W = np.zeros((d, C), dtype=np.float64)
        b = np.zeros(C, dtype=np.float64)
        n_iter = 0
        for n_iter in range(1, self.max_iter + 1):
            _, grad_W, grad_b = loss_and_gradient(W, b, Z, y_idx, self.l2)
            gmax = max(np.abs(grad_W).max(), np.abs(grad_b).max())
            if gmax < self.tol:
                n_iter -= 1
                break
            W -= self.lr * grad_W
            b -= self.lr * grad_b
        self.coef_ = W
        self.intercept_ = b
        self.n_iter_ = n_iter
        self.n_features_ = d
        self.classes_ = classes
        return self

    def decision_scores(self, X) -> np.ndarray:
        A = self._check_predict_input(X)
        Z = (A - self.mean_) / self.scale_
        return Z @ self.coef_ + self.intercept_

    def predict_proba(self, X) -> np.ndarray:
        return softmax(self.decision_scores(X))

    def predict(self, X) -> np.ndarray:
        scores = self.decision_scores(X)
        return self.classes_.decode(np.argmax(scores, axis=1).astype(np.int64))

    def get_state(self) -> dict:
        self._require_fitted()
        return {
            "hyperparams": {
                "lr": self.lr, "l2": self.l2,
                "max_iter": self.max_iter, "tol": self.tol,
            },
            "classes": list(self.classes_.labels),
            "mean": self.mean_.tolist(),
            "scale": self.scale_.tolist(),
            "coef": self.coef_.tolist(),
            "intercept": self.intercept_.tolist(),
            "n_iter": self.n_iter_,
        }

    @classmethod
    def from_state(cls, state: dict) -> "LogisticRegression":
        from ..core import ClassSet

        est = cls(**state["hyperparams"])
        est.classes_ = ClassSet(tuple(state["classes"]))
        est.mean_ = np.asarray(state["mean"], dtype=np.float64)
        est.scale_ = np.asarray(state["scale"], dtype=np.float64)
        est.coef_ = np.asarray(state["coef"], dtype=np.float64)
        est.intercept_ = np.asarray(state["intercept"], dtype=np.float64)
        est.n_iter_ = int(state["n_iter"])
        est.n_features_ = est.coef_.shape[0]
        return est
