"""One contract, five models: the shared estimator behavior, parametrized."""

import numpy as np
import pytest

from infbench.baselearners import DecisionTree, LogisticRegression, RandomForest
from infbench.core import supports_proba
from infbench.directional import DirectionalForest
from infbench.errors import DimensionMismatch, NotFitted
from infbench.metasynthesis import MetaSynthesisClassifier
from infbench.serialize import estimator_from_state, estimator_state

from conftest import make_blobs

# small prototypes keep the parametrized grid fast
PROTOTYPES = [
    pytest.param(lambda: DecisionTree(seed=3), id="decision_tree"),
    pytest.param(lambda: RandomForest(n_estimators=8, seed=3), id="random_forest"),
    # no seed: gradient descent from zeros is fully deterministic
    pytest.param(lambda: LogisticRegression(max_iter=150), id="logistic"),
    pytest.param(
        lambda: DirectionalForest(n_estimators=8, seed=3), id="directional"
    ),
    pytest.param(
        lambda: MetaSynthesisClassifier(
            base_estimators=[
                LogisticRegression(max_iter=60),
                DecisionTree(max_depth=4),
            ],
            cv=3,
            seed=3,
        ),
        id="meta_synthesis",
    ),
]


@pytest.fixture(scope="module")
def data():
    return make_blobs(
        n_per_class=15,
        centers=((0.0, 0.0), (5.0, 0.0), (0.0, 5.0)),
        spread=0.8,
        seed=77,
        labels=("ant", "bee", "cat"),
    )


@pytest.mark.parametrize("proto", PROTOTYPES)
def test_not_fitted_guard(proto, data):
    X, _ = data
    est = proto()
    with pytest.raises(NotFitted):
        est.predict(X)
    if supports_proba(est):
        with pytest.raises(NotFitted):
            est.predict_proba(X)


@pytest.mark.parametrize("proto", PROTOTYPES)
def test_fit_returns_self_and_predicts_known_labels(proto, data):
    X, y = data
    est = proto()
    assert est.fit(X, y) is est
    pred = est.predict(X)
    assert len(pred) == len(y)
    assert set(pred) <= set(y)
    assert tuple(est.classes_.labels) == ("ant", "bee", "cat")


@pytest.mark.parametrize("proto", PROTOTYPES)
def test_width_mismatch_rejected(proto, data):
    X, y = data
    est = proto().fit(X, y)
    with pytest.raises(DimensionMismatch):
        est.predict(X[:, :1])


@pytest.mark.parametrize("proto", PROTOTYPES)
def test_same_seed_same_predictions(proto, data):
    X, y = data
    a = proto().fit(X, y).predict(X)
    b = proto().fit(X, y).predict(X)
    assert a.tolist() == b.tolist()


@pytest.mark.parametrize("proto", PROTOTYPES)
def test_fresh_clone_is_unfitted_and_refittable(proto, data):
    X, y = data
    est = proto().fit(X, y)
    clone = est.fresh_clone(seed=9)
    with pytest.raises(NotFitted):
        clone.predict(X)
    clone.fit(X, y)
    assert len(clone.predict(X)) == len(y)
    # cloning with the original seed reproduces the original model
    twin = est.fresh_clone(seed=3).fit(X, y)
    assert twin.predict(X).tolist() == est.predict(X).tolist()


@pytest.mark.parametrize("proto", PROTOTYPES)
def test_probability_contract(proto, data):
    X, y = data
    est = proto().fit(X, y)
    if not supports_proba(est):
        pytest.skip("model does not expose probabilities")
    proba = est.predict_proba(X)
    assert proba.shape == (len(y), 3)
    assert np.all(proba >= 0.0)
    assert np.allclose(proba.sum(axis=1), 1.0, atol=1e-9)


@pytest.mark.parametrize("proto", PROTOTYPES)
def test_serialized_state_round_trips(proto, data):
    X, y = data
    est = proto().fit(X, y)
    clone = estimator_from_state(estimator_state(est))
    assert type(clone) is type(est)
    assert clone.predict(X).tolist() == est.predict(X).tolist()
    if supports_proba(est):
        assert np.array_equal(clone.predict_proba(X), est.predict_proba(X))


def test_directional_has_no_probability_surface():
    assert not supports_proba(DirectionalForest())
