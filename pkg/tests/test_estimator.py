import doctest

import numpy as np
import pytest
from sklearn.base import clone
from sklearn.exceptions import NotFittedError

from conftest import points
from homeuler import estimator
from homeuler.estimator import HomogeneousFlow


def test_docstring_example():
    assert doctest.testmod(estimator).failed == 0


def test_fit_transform_predict_score():
    X = points()[:30]
    flow = HomogeneousFlow(alpha=4.0, C1=-1.0, C2=0.0).fit()
    T = flow.transform(X)
    assert T.shape == (30, 4)
    assert np.array_equal(T[:, :3], flow.predict(X))
    assert np.array_equal(T[:, 3], flow.field_.pressure(X))
    assert -1e-8 < flow.score(X) <= 0
    assert flow.residual_certificate_ < 1e-8 and flow.n_features_in_ == 3


def test_planar_mode():
    flow = HomogeneousFlow(mode="planar25d", alpha=4.0, C1=-0.5, C2=0.0, lobes=4).fit()
    assert flow.profile_.domain == "arc" and flow.profile_.zero_count == 3
    assert flow.score(points()[:20]) > -1e-8


def test_params_and_clone():
    flow = HomogeneousFlow(alpha=-3.0, C1=-1.0, C2=1.0)
    assert flow.get_params()["alpha"] == -3.0
    c = clone(flow).set_params(alpha=5.0)
    assert c.alpha == 5.0 and flow.alpha == -3.0


def test_not_fitted_and_bad_input():
    with pytest.raises(NotFittedError):
        HomogeneousFlow().predict([[1.0, 0.0, 0.0]])
    flow = HomogeneousFlow().fit()
    with pytest.raises(ValueError):
        flow.predict([[1.0, 0.0, 0.0, 2.0]])
    with pytest.raises(ValueError):
        HomogeneousFlow(mode="spherical").fit()
