"""scikit-learn style wrapper: fit solves the profile and builds the field,
transform/predict evaluate it at points."""
import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_array, check_is_fitted

from . import bvp, fields, verify
from .params import ParamSet


class HomogeneousFlow(TransformerMixin, BaseEstimator):
    """(-alpha)-homogeneous Euler flow with Clebsch constants (C1, C2).

    mode "axisymmetric" solves the profile ODE on (-1, 1); mode "planar25d"
    solves the autonomous problem with ``lobes`` arches on (0, pi).

    >>> flow = HomogeneousFlow(alpha=4.0, C2=1.0).fit()
    >>> flow.transform([[1.0, 0.5, 0.2]]).shape
    (1, 4)
    """

    def __init__(self, mode="axisymmetric", alpha=4.0, C1=0.0, C2=1.0, lobes=1,
                 branch="default", tol=1e-8):
        self.mode = mode
        self.alpha = alpha
        self.C1 = C1
        self.C2 = C2
        self.lobes = lobes
        self.branch = branch
        self.tol = tol

    def fit(self, X=None, y=None):
        """Solve for the profile; X and y are ignored (the problem has no data)."""
        if self.mode == fields.AXISYMMETRIC:
            p = ParamSet.axisymmetric(self.alpha, self.C1, self.C2)
            w = bvp.solve_nonautonomous(p, tol=self.tol, branch=self.branch)
            self.field_ = fields.build_axisymmetric(w, p)
        elif self.mode == fields.PLANAR25D:
            p = ParamSet.planar(self.alpha, self.C1, self.C2)
            w = bvp.solve_autonomous(p.beta, p.c, lobes=self.lobes, tol=self.tol)
            self.field_ = fields.build_25d(w, w.params)
            p = w.params
        else:
            raise ValueError(f"unknown mode {self.mode!r}")
        self.params_ = p
        self.profile_ = w
        self.residual_certificate_ = w.residual_certificate
        self.n_features_in_ = 3
        return self

    def _points(self, X):
        check_is_fitted(self, "field_")
        X = check_array(X, dtype=float, ensure_min_features=3)
        if X.shape[1] != 3:
            raise ValueError(f"expected points with 3 coordinates, got {X.shape[1]}")
        return X

    def transform(self, X):
        """Columns u1, u2, u3, p at each point."""
        X = self._points(X)
        return np.c_[self.field_.velocity(X), self.field_.pressure(X)]

    def predict(self, X):
        """Velocity at each point."""
        X = self._points(X)
        return self.field_.velocity(X)

    def score(self, X, y=None):
        """Negative largest relative Euler residual (0 is a perfect field)."""
        X = self._points(X)
        return -verify.euler_residual(self.field_, X).max_rel
