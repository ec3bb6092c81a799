import numpy as np
import pytest


def make_blobs(n_per_class=20, centers=((0.0, 0.0), (4.0, 4.0)), spread=0.8,
               seed=0, labels=None):
    """Gaussian blobs with string labels, shuffled deterministically."""
    rng = np.random.default_rng(seed)
    centers = np.asarray(centers, dtype=np.float64)
    k, f = centers.shape
    X = np.vstack([
        rng.normal(0.0, spread, (n_per_class, f)) + centers[i]
        for i in range(k)
    ])
    if labels is None:
        labels = [f"c{i}" for i in range(k)]
    y = np.asarray(
        [labels[i] for i in range(k) for _ in range(n_per_class)], dtype=object
    )
    perm = rng.permutation(X.shape[0])
    return X[perm], y[perm]


@pytest.fixture
def blobs2():
    return make_blobs(seed=11)


@pytest.fixture
def blobs3():
    return make_blobs(
        n_per_class=15,
        centers=((0.0, 0.0, 0.0), (4.0, 4.0, 0.0), (-4.0, 4.0, 2.0)),
        seed=12,
    )
