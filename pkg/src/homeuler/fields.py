"""Homogeneous velocity/pressure fields built from a profile or a formula.

Every field exposes the same evaluators on point arrays of shape (n, 3)
(a single point gives unbatched results): velocity, pressure, jacobian
(J[i, j] = du_i/dx_j, analytic), grad_pressure, plus the Clebsch data psi,
Gamma and Pi where they exist.
"""
import json

import numpy as np

from . import special
from ._reps import SineRep
from ._validation import as_points
from .bvp import linear_profile, _certify
from .errors import ContractError, DomainError, ParameterError
from .params import AXI, PLANAR, ParamSet
from .profile import ARC, INTERVAL

AXISYMMETRIC = "axisymmetric"
PLANAR25D = "planar25d"
CATALOG = "explicit-catalog"

_ROT = np.array([[0.0, -1.0, 0.0], [1.0, 0.0, 0.0], [0.0, 0.0, 0.0]])
_EZ = np.array([0.0, 0.0, 1.0])


def _apow(v, e):
    """|v|^e with 0 at v = 0 (the limits used here all vanish)."""
    with np.errstate(divide="ignore", invalid="ignore"):
        out = np.abs(v) ** e
    return np.where(v == 0.0, 0.0, out)


class HomogeneousField:
    mode = None

    def __init__(self, alpha, profile=None, params=None, tag=None):
        self.alpha = float(alpha)
        self.profile = profile
        self.params = params
        self.tag = tag

    # subclasses implement _core(X) -> dict with u, J, p, gp (and optional extras)
    def _core(self, X):
        raise NotImplementedError

    def _points(self, X):
        X = np.asarray(X, dtype=float)
        single = X.ndim == 1
        if single:
            X = X[None, :]
        if X.shape[1] == 2:
            X = np.c_[X, np.zeros(len(X))]
        return as_points(X, 3), single

    def _origin(self, X):
        return np.all(X == 0.0, axis=1)

    def _get(self, X, key):
        X, single = self._points(X)
        org = self._origin(X)
        if np.any(org) and (self.alpha > 0 or key in ("J",)):
            raise DomainError("the field is singular or not differentiable at the origin")
        out = None
        if np.any(~org):
            core = self._core(X[~org])
            if key not in core:
                raise ContractError(f"{key} is not defined for this field")
            val = core[key]
            out = np.zeros((len(X),) + val.shape[1:])
            out[~org] = val
        else:
            out = np.zeros((len(X),) + self._shape(key))
        return out[0] if single else out

    @staticmethod
    def _shape(key):
        return {"u": (3,), "J": (3, 3), "gp": (3,), "gPi": (3,), "gGamma": (3,)}.get(key, ())

    def velocity(self, X):
        return self._get(X, "u")

    def pressure(self, X):
        return self._get(X, "p")

    def jacobian(self, X):
        return self._get(X, "J")

    def grad_pressure(self, X):
        return self._get(X, "gp")

    def psi(self, X):
        return self._get(X, "psi")

    def gamma(self, X):
        return self._get(X, "Gamma")

    def grad_gamma(self, X):
        return self._get(X, "gGamma")

    def bernoulli(self, X):
        return self._get(X, "Pi")

    def grad_bernoulli(self, X):
        return self._get(X, "gPi")

    def curl(self, X):
        J = self.jacobian(X)
        return np.stack([J[..., 2, 1] - J[..., 1, 2], J[..., 0, 2] - J[..., 2, 0],
                         J[..., 1, 0] - J[..., 0, 1]], axis=-1)

    def divergence(self, X):
        return np.trace(self.jacobian(X), axis1=-2, axis2=-1)

    def evaluate(self, point):
        return self.velocity(point), float(self.pressure(point))

    def meta(self):
        d = {"mode": self.mode, "alpha": self.alpha, "tag": self.tag}
        if self.params is not None:
            d["params"] = self.params.to_dict()
        return d


# ------------------------------------------------------------ axisymmetric

class AxisymmetricField(HomogeneousField):
    """psi = w(z/rho) rho^-beta, Gamma = C2 psi|psi|^(1/beta), Pi = C1|psi|^(2+4/beta)."""
    mode = AXISYMMETRIC

    def __init__(self, profile, params, tag=None):
        super().__init__(params.alpha, profile, params, tag)
        self.beta = params.beta

    def _core(self, X):
        b = self.beta
        C1, C2 = self.params.C1, self.params.C2
        rho = np.linalg.norm(X, axis=1)
        r = np.hypot(X[:, 0], X[:, 1])
        t = np.clip(X[:, 2] / rho, -1.0, 1.0)
        w, w1, w2 = self.profile.derivs(t)
        chi, chit = self.profile.chi(t)
        off = r > 0
        X0 = X * np.array([1.0, 1.0, 0.0])
        Xp = X0 @ _ROT.T                       # (-y, x, 0)
        gt = (_EZ[None, :] - (t / rho)[:, None] * X) / rho[:, None]
        a3 = rho ** (-b - 3.0)
        a2 = rho ** (-b - 2.0)
        Q = b * t * chi - w1
        R = -(b * w + t * w1)
        Qp = b * chi + b * t * chit - w2
        Rp = -((b + 1.0) * w1 + t * w2)
        X_r2 = X / (rho ** 2)[:, None]
        u = (a3 * Q)[:, None] * X0 + (a2 * R)[:, None] * _EZ[None, :]
        J = (a3[:, None, None] * (X0[:, :, None] * (Qp[:, None] * gt - (b + 3.0) * Q[:, None] * X_r2)[:, None, :]
                                  + Q[:, None, None] * np.diag([1.0, 1.0, 0.0])[None]))
        J += _EZ[None, :, None] * (a2[:, None] * (Rp[:, None] * gt - (b + 2.0) * R[:, None] * X_r2))[:, None, :]
        ewb = _apow(w, 1.0 / b)
        psi = w * rho ** (-b)
        Gamma = C2 * w * ewb * rho ** (-b - 1.0)
        gGamma = np.zeros_like(X)
        if C2:
            S = np.zeros_like(rho)
            gS = np.zeros_like(X)
            m = off & (w != 0.0)
            with np.errstate(divide="ignore", invalid="ignore"):
                S[m] = C2 * chi[m] * ewb[m] * a3[m]
                inv = (rho[m] / r[m]) ** 2
                gS[m] = (C2 * ewb[m])[:, None] * (((chit[m] + w1[m] * inv / b) * a3[m])[:, None] * gt[m]
                                                 - ((b + 3.0) * chi[m] * a3[m])[:, None] * X_r2[m])
            u += S[:, None] * Xp
            J += Xp[:, :, None] * gS[:, None, :] + S[:, None, None] * _ROT[None]
            gGamma = (C2 * (1.0 + 1.0 / b) * ewb)[:, None] * (
                (w1 * rho ** (-b - 1.0))[:, None] * gt - (b * w * rho ** (-b - 1.0))[:, None] * X_r2)
        Pi = np.zeros_like(rho)
        gPi = np.zeros_like(X)
        if C1:
            Pi = C1 * _apow(w, 2.0 + 4.0 / b) * rho ** (-2.0 * b - 4.0)
            gPi = (C1 * (2.0 + 4.0 / b) * np.sign(w) * _apow(w, 1.0 + 4.0 / b) * w1
                   * rho ** (-2.0 * b - 4.0))[:, None] * gt - ((2.0 * b + 4.0) * Pi)[:, None] * X_r2
        p = Pi - 0.5 * np.sum(u * u, axis=1)
        gp = gPi - np.einsum("nij,ni->nj", J, u)
        return {"u": u, "J": J, "p": p, "gp": gp, "psi": psi, "Gamma": Gamma,
                "gGamma": gGamma, "Pi": Pi, "gPi": gPi}

    def zeta(self, X):
        """Toroidal vorticity over r, (curl u . e_phi)/r, written through the
        profile as -rho^(-beta-4)(w'' + beta(beta+1) chi); this avoids the
        cancellation of the Cartesian curl near the poles."""
        X, single = self._points(X)
        b = self.beta
        rho = np.linalg.norm(X, axis=1)
        t = np.clip(X[:, 2] / rho, -1.0, 1.0)
        w2 = self.profile.derivs(t)[2]
        chi = self.profile.chi(t)[0]
        z = -rho ** (-b - 4.0) * (w2 + b * (b + 1.0) * chi)
        return z[0] if single else z

    def zeta_scale(self, X):
        """Gradient magnitude of the separate terms of zeta (cancellation floor)."""
        X, single = self._points(X)
        b = self.beta
        rho = np.linalg.norm(X, axis=1)
        t = np.clip(X[:, 2] / rho, -1.0, 1.0)
        w2 = self.profile.derivs(t)[2]
        chi = self.profile.chi(t)[0]
        z = rho ** (-b - 5.0) * (np.abs(w2) + np.abs(b * (b + 1.0) * chi))
        return z[0] if single else z

    def grad_zeta(self, X, rel_step=1e-3):
        """Fourth-order central differences of zeta."""
        X, single = self._points(X)
        rho = np.linalg.norm(X, axis=1)
        G = np.zeros_like(X)
        for j in range(3):
            h = rel_step * rho
            e = np.zeros(3)
            e[j] = 1.0
            f = lambda k: self.zeta(X + (k * h)[:, None] * e[None, :])
            G[:, j] = (-f(2) + 8 * f(1) - 8 * f(-1) + f(-2)) / (12.0 * h)
        return G[0] if single else G


# ------------------------------------------------------------ 2.5D

class Planar25DField(HomogeneousField):
    """r^(beta+1) u = w' e_r + beta w e_phi + C2 w|w|^(1/beta) e_z, w odd in phi."""
    mode = PLANAR25D

    def __init__(self, profile, params, tag=None):
        super().__init__(params.alpha, profile, params, tag)
        self.beta = params.beta

    def _core(self, X):
        b = self.beta
        C1, C2 = self.params.C1, self.params.C2
        r = np.hypot(X[:, 0], X[:, 1])
        if np.any(r == 0.0):
            raise DomainError("2.5D fields are evaluated off the x3-axis")
        ph = np.arctan2(X[:, 1], X[:, 0])
        w, w1, w2 = self.profile.derivs(ph)
        c, s = np.cos(ph), np.sin(ph)
        ewb = _apow(w, 1.0 / b)
        F = np.stack([w1 * c - b * w * s, w1 * s + b * w * c, C2 * w * ewb], axis=1)
        Fp = np.stack([w2 * c - (b + 1.0) * w1 * s - b * w * c,
                       w2 * s + (b + 1.0) * w1 * c - b * w * s,
                       C2 * (1.0 + 1.0 / b) * ewb * w1], axis=1)
        k = -b - 1.0
        er = np.stack([c, s, np.zeros_like(c)], axis=1)
        ep = np.stack([-s, c, np.zeros_like(c)], axis=1)
        u = (r ** k)[:, None] * F
        J = (r ** (k - 1.0))[:, None, None] * (k * F[:, :, None] * er[:, None, :]
                                             + Fp[:, :, None] * ep[:, None, :])
        Pi = np.zeros_like(r)
        gPi = np.zeros_like(X)
        if C1:
            aw = _apow(w, 2.0 + 2.0 / b)
            Pi = C1 * aw * r ** (-2.0 * b - 2.0)
            gPi = (r ** (-2.0 * b - 3.0))[:, None] * (
                (-(2.0 * b + 2.0) * C1 * aw)[:, None] * er
                + (C1 * (2.0 + 2.0 / b) * _apow(w, 2.0 / b) * w * w1)[:, None] * ep)
        p = Pi - 0.5 * np.sum(u * u, axis=1)
        gp = gPi - np.einsum("nij,ni->nj", J, u)
        return {"u": u, "J": J, "p": p, "gp": gp, "psi": w * r ** (-b),
                "Gamma": u[:, 2], "gGamma": J[:, 2, :], "Pi": Pi, "gPi": gPi}


# ------------------------------------------------------------ catalog

class _IrrotationalMixin:
    def _finish(self, u, J, extra=None):
        p = -0.5 * np.sum(u * u, axis=1)
        gp = -np.einsum("nij,ni->nj", J, u)
        n = len(u)
        out = {"u": u, "J": J, "p": p, "gp": gp, "Pi": np.zeros(n), "gPi": np.zeros((n, 3)),
               "Gamma": np.zeros(n), "gGamma": np.zeros((n, 3))}
        out.update(extra or {})
        return out


class RadialField(_IrrotationalMixin, HomogeneousField):
    """x/|x|^3 in 3D (alpha = 2) or (x1, x2, 0)/r^2 in 2D (alpha = 1)."""
    mode = CATALOG

    def __init__(self, planar=False):
        super().__init__(1.0 if planar else 2.0, tag="radial-2d" if planar else "radial")
        self.planar = planar

    def _core(self, X):
        Y = X * np.array([1.0, 1.0, 0.0]) if self.planar else X
        d = 2 if self.planar else 3
        n2 = np.sum(Y * Y, axis=1)
        if np.any(n2 == 0.0):
            raise DomainError("the radial field is singular at its center")
        u = Y / (n2 ** (d / 2.0))[:, None]
        I = np.diag([1.0, 1.0, 0.0 if self.planar else 1.0])
        J = I[None] / (n2 ** (d / 2.0))[:, None, None] - d * Y[:, :, None] * Y[:, None, :] / (
            n2 ** (d / 2.0 + 1.0))[:, None, None]
        return self._finish(u, J)


class Irrotational2DField(_IrrotationalMixin, HomogeneousField):
    """u = (d2 psi, -d1 psi, 0), psi = sin(n phi)/r^n (module special)."""
    mode = CATALOG

    def __init__(self, n):
        super().__init__(n + 1.0, tag=f"irrotational-2d:{n}")
        self.n = int(n)

    def _core(self, X):
        u = np.zeros_like(X)
        J = np.zeros((len(X), 3, 3))
        for i, x in enumerate(X):
            u[i, :2] = special.irrotational_2d(self.n, x[:2])
            J[i, :2, :2] = special.irrotational_2d_jacobian(self.n, x[:2])
        return self._finish(u, J)


class GeodesicField(HomogeneousField):
    """Constant-pressure geodesic flow (p = 0)."""
    mode = CATALOG

    def __init__(self, a, b, alpha):
        special._geodesic_check(a, b, alpha)
        super().__init__(alpha, tag="geodesic")
        self.a, self.b = float(a), float(b)

    def support(self, X):
        X, _ = self._points(X)
        return self.a ** 2 * (X[:, 0] ** 2 + X[:, 1] ** 2) - self.b ** 2 * X[:, 2] ** 2 > 0

    def _core(self, X):
        u = np.array([special.geodesic_flow(x, self.a, self.b, self.alpha) for x in X])
        J = np.array([special.geodesic_jacobian(x, self.a, self.b, self.alpha) for x in X])
        n = len(X)
        return {"u": u, "J": J, "p": np.zeros(n), "gp": np.zeros((n, 3)),
                "Pi": np.zeros(n), "gPi": np.zeros((n, 3))}


class CircularField(HomogeneousField):
    """u = a r^(-alpha-1)(-x2, x1, 0), p = -(a^2/(2 alpha)) r^(-2 alpha)."""
    mode = CATALOG

    def __init__(self, a, alpha):
        if float(alpha) == 0.0:
            raise ParameterError("circular flow pressure is singular for alpha = 0")
        super().__init__(alpha, tag="circular")
        self.a = float(a)

    def _core(self, X):
        a, al = self.a, self.alpha
        r2 = X[:, 0] ** 2 + X[:, 1] ** 2
        if np.any(r2 == 0.0):
            raise DomainError("circular flow is evaluated off the axis")
        f = a * r2 ** (-(al + 1.0) / 2.0)
        fr = -(al + 1.0) * a * r2 ** (-(al + 3.0) / 2.0)   # (1/r) df/dr
        X0 = X * np.array([1.0, 1.0, 0.0])
        Xp = X0 @ _ROT.T
        u = f[:, None] * Xp
        J = Xp[:, :, None] * (fr[:, None] * X0)[:, None, :] + f[:, None, None] * _ROT[None]
        p = -(a * a / (2.0 * al)) * r2 ** (-al)
        gp = (a * a * r2 ** (-al - 1.0))[:, None] * X0
        return {"u": u, "J": J, "p": p, "gp": gp}


# ------------------------------------------------------------ builders

def _require_certified(w):
    if not w.certified:
        raise ContractError("the profile carries no passing residual certificate")


def build_axisymmetric(w, params, tag=None):
    if not isinstance(params, ParamSet) or params.mode != AXI:
        raise ParameterError("build_axisymmetric needs axisymmetric parameters")
    if w.domain != INTERVAL:
        raise ContractError("axisymmetric fields need a profile on (-1, 1)")
    if abs(w.beta - params.beta) > 1e-12:
        raise ContractError("profile and parameters disagree on beta")
    _require_certified(w)
    return AxisymmetricField(w, params, tag)


def build_25d(w, params, tag=None):
    if not isinstance(params, ParamSet) or params.mode != PLANAR:
        raise ParameterError("build_25d needs 2.5D parameters")
    if w.domain != ARC:
        raise ContractError("2.5D fields need a profile on (0, pi)")
    if abs(w.beta - params.beta) > 1e-12:
        raise ContractError("profile and parameters disagree on beta")
    _require_certified(w)
    return Planar25DField(w, params, tag)


def beltrami_factor(field, point):
    """C2 (1 + 1/beta)|psi|^(1/beta): curl u = factor * u for C1 = 0."""
    p = field.params
    if p is None or field.mode not in (AXISYMMETRIC, PLANAR25D):
        raise ContractError("the proportionality factor needs a Clebsch field")
    if p.C1 != 0.0:
        raise ContractError("C1 != 0: the flow is not Beltrami")
    psi = field.psi(point)
    return p.C2 * (1.0 + 1.0 / p.beta) * _apow(np.asarray(psi, dtype=float), 1.0 / p.beta)


def evaluate(field, point):
    """(u, p) at one point; the zero limit at the origin when alpha < 0."""
    return field.evaluate(point)


def catalog_profile(beta, domain=INTERVAL):
    """Certified explicit profile for the c1 = c2 = 0 branch."""
    if domain == INTERVAL:
        return _certify(linear_profile(beta), INTERVAL, beta, ParamSet.linear(beta), 1e-10,
                        method="explicit")
    n = int(round(beta))
    if abs(beta - n) > 1e-12:
        raise ParameterError("explicit arc profiles need integer beta")
    return _certify(SineRep(n), ARC, beta, ParamSet.linear(beta, PLANAR), 1e-10, method="explicit")


def irrotational_axisymmetric_field(n):
    """Irrotational axisymmetric field of homogeneity -(n+2)."""
    n = int(n)
    if n == 0:
        return RadialField()
    if special.profile_index(n) is None:
        raise ParameterError("n = -1 (alpha = 1) admits no axisymmetric irrotational field")
    w = catalog_profile(float(n))
    return AxisymmetricField(w, ParamSet.linear(float(n)), tag=f"irrotational-axi:{n}")


def irrotational_2d_field(n):
    n = int(n)
    if n == 0:
        return RadialField(planar=True)
    return Irrotational2DField(n)


def geodesic_field(a, b, alpha):
    return GeodesicField(a, b, alpha)


def circular_field(a, alpha):
    return CircularField(a, alpha)


def export_samples(field, points, csv_path, meta_path=None):
    """CSV x,y,z,u1,u2,u3,p (17 significant digits) plus JSON metadata."""
    X, _ = field._points(points)
    U = field.velocity(X)
    P = field.pressure(X)
    with open(csv_path, "w") as fh:
        fh.write("x,y,z,u1,u2,u3,p\n")
        for x, u, p in zip(X, U, P):
            fh.write(",".join(f"{v:.17g}" for v in (*x, *u, p)) + "\n")
    if meta_path:
        with open(meta_path, "w") as fh:
            json.dump(field.meta(), fh, indent=2, sort_keys=True)
