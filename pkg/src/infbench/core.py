"""Data model, label encoding, deterministic seeding, and the estimator contract.

Conventions used throughout the package:

* a feature matrix is a dense 2-D ``float64`` ndarray, rows = samples;
* a label vector is a 1-D ``int64`` ndarray of class indices into a
  :class:`ClassSet`;
* all randomness flows from explicit integer seeds through
  :func:`derive_seed`, never from a shared mutable generator.
"""

from __future__ import annotations

import logging
import secrets
from dataclasses import dataclass, field

import numpy as np

from .errors import (
    DegenerateTarget,
    DimensionMismatch,
    EmptyMatrix,
    NonFiniteValue,
    NotFitted,
)

logger = logging.getLogger(__name__)

_MASK64 = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15

# Drawn lazily the first time an absent seed is resolved, then reused for the
# rest of the process so a run remains reproducible once its seed is known.
_process_seed: int | None = None


def derive_seed(base: int, stream_id: int) -> int:
    """Derive an independent 64-bit seed for one consumer stream.

    Splitmix-style finalizer over ``base XOR (stream_id * odd constant)``.
    The multiply spreads small consecutive stream ids across the word before
    mixing; the finalizer is a bijection, so distinct stream ids under one
    base can never collide.
    """
    z = (int(base) ^ ((int(stream_id) * _GOLDEN) & _MASK64)) & _MASK64
    z = (z + _GOLDEN) & _MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return z ^ (z >> 31)


def resolve_seed(seed: int | None) -> int:
    """Resolve an optional base seed to a concrete 64-bit integer.

    ``None`` means "draw from system entropy once per process": the first
    resolution draws and logs the value, later resolutions reuse it, so an
    unseeded run is still internally deterministic and can be reproduced by
    re-running with the logged seed.
    """
    global _process_seed
    if seed is not None:
        return int(seed) & _MASK64
    if _process_seed is None:
        _process_seed = secrets.randbits(64)
        logger.info("no base seed given; drew process seed %d", _process_seed)
    return _process_seed


def rng_from(seed: int) -> np.random.Generator:
    """PCG64 generator for a derived seed (platform-stable sequences)."""
    return np.random.default_rng(int(seed) & _MASK64)


@dataclass(frozen=True)
class ClassSet:
    """Ordered set of distinct class labels.

    Order is lexicographic on the canonical text form ``str(label)``, so the
    class-column order of probability outputs is deterministic regardless of
    row order.  Labels whose text forms collide are treated as one class (the
    first occurrence's object is kept).
    """

    labels: tuple
    _index_of: dict = field(repr=False, hash=False, compare=False, default=None)

    def __post_init__(self):
        object.__setattr__(
            self, "_index_of", {str(lab): i for i, lab in enumerate(self.labels)}
        )

    @property
    def size(self) -> int:
        return len(self.labels)

    def index_of(self, label) -> int:
        return self._index_of[str(label)]

    def encode(self, labels) -> np.ndarray:
        """Map raw labels to class indices (labels must be known)."""
        return np.fromiter(
            (self._index_of[str(lab)] for lab in labels), dtype=np.int64, count=len(labels)
        )

    def decode(self, indices: np.ndarray) -> np.ndarray:
        """Map class indices back to the original label objects."""
        out = np.empty(len(indices), dtype=object)
        for i, idx in enumerate(indices):
            out[i] = self.labels[int(idx)]
        return out


def encode_labels(raw_labels) -> tuple[ClassSet, np.ndarray]:
    """Encode raw labels into a sorted ClassSet and an index vector.

    Raises DegenerateTarget when fewer than two distinct labels are present.
    Round trip: ``classes.decode(indices)`` reproduces the input element-wise
    (up to text-form canonicalization of duplicate-text labels).
    """
    raw = list(raw_labels)
    if not raw:
        raise DegenerateTarget("empty label list")
    by_text: dict[str, object] = {}
    for lab in raw:
        by_text.setdefault(str(lab), lab)
    if len(by_text) < 2:
        raise DegenerateTarget(
            f"need at least 2 distinct labels, got {len(by_text)}"
        )
    ordered = tuple(by_text[t] for t in sorted(by_text))
    classes = ClassSet(ordered)
    return classes, classes.encode(raw)


def as_matrix(X) -> np.ndarray:
    """Coerce input to a dense 2-D float64 matrix (no validation)."""
    A = np.asarray(X, dtype=np.float64)
    if A.ndim != 2:
        raise DimensionMismatch(f"expected a 2-D feature matrix, got ndim={A.ndim}")
    return A


def validate_matrix(X: np.ndarray) -> np.ndarray:
    """Check nonzero dimensions and finiteness; returns the validated matrix.

    Raises EmptyMatrix, or NonFiniteValue naming the first offending cell in
    row-major order.
    """
    A = as_matrix(X)
    if A.shape[0] == 0 or A.shape[1] == 0:
        raise EmptyMatrix(f"matrix of shape {A.shape} has an empty dimension")
    finite = np.isfinite(A)
    if not finite.all():
        flat = int(np.argmin(finite.ravel()))
        raise NonFiniteValue(flat // A.shape[1], flat % A.shape[1])
    return A


def as_label_array(y) -> np.ndarray:
    """1-D object array of labels; keeps original label objects intact."""
    arr = np.empty(len(y), dtype=object)
    for i, lab in enumerate(y):
        arr[i] = lab
    return arr


def check_fit_inputs(X, y) -> tuple[np.ndarray, np.ndarray, ClassSet]:
    """Validate and encode training inputs shared by every estimator's fit."""
    A = validate_matrix(X)
    labels = as_label_array(y)
    if len(labels) != A.shape[0]:
        raise DimensionMismatch(
            f"{A.shape[0]} rows but {len(labels)} labels"
        )
    classes, y_idx = encode_labels(labels)
    return A, y_idx, classes


class Estimator:
    """Behavioral contract every model in the package implements.

    ``fit(X, y)`` takes a feature matrix and raw labels and returns self;
    ``predict(X)`` returns original labels; probabilistic models additionally
    expose ``predict_proba(X)`` with columns aligned to ``classes_.labels``.
    ``fresh_clone()`` returns an unfitted copy with identical hyperparameters
    (optionally reseeded).  Fitted state lives in trailing-underscore
    attributes; refitting with the same data and seed reproduces predictions
    exactly.
    """

    kind: str = "abstract"

    def fit(self, X, y) -> "Estimator":
        raise NotImplementedError

    def predict(self, X) -> np.ndarray:
        raise NotImplementedError

    def fresh_clone(self, seed: int | None = None) -> "Estimator":
        raise NotImplementedError

    # -- shared plumbing -------------------------------------------------

    def _require_fitted(self):
        if getattr(self, "classes_", None) is None:
            raise NotFitted(f"{type(self).__name__} used before fit")

    def _check_predict_input(self, X) -> np.ndarray:
        self._require_fitted()
        A = validate_matrix(X)
        expected = getattr(self, "n_features_", None)
        if expected is not None and A.shape[1] != expected:
            raise DimensionMismatch(
                f"model was fit on {expected} features, got {A.shape[1]}"
            )
        return A


def supports_proba(est) -> bool:
    """Whether an estimator exposes class probabilities."""
    return hasattr(est, "predict_proba")


def stable_text_hash(text: str) -> int:
    """Process-independent 64-bit hash of a string (FNV-1a)."""
    h = 0xCBF29CE484222325
    for b in text.encode("utf-8"):
        h = ((h ^ b) * 0x100000001B3) & _MASK64
    return h
