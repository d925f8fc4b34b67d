"""Residual suites for constructed fields.

All checks are evaluated with analytic derivatives (only grad zeta uses
finite differences) and normalized pointwise, so tolerances do not depend
on how fast a field grows or decays at the origin.
"""
from dataclasses import dataclass, field as dfield

import numpy as np
from numpy.polynomial.legendre import Legendre, leggauss
from scipy.stats import qmc

from .bvp import residual_values
from .errors import ContractError, ParameterError
from .fields import AXISYMMETRIC, PLANAR25D
from .params import AXI

FLOOR = 1e-300
DEFAULT_TOL = 1e-6


@dataclass
class ResidualReport:
    name: str
    samples: int
    max_abs: float
    max_rel: float
    scale: float
    tol: float = DEFAULT_TOL
    components: dict = dfield(default_factory=dict)

    @property
    def passed(self):
        return bool(self.max_rel < self.tol)

    def to_dict(self):
        return {"name": self.name, "samples": self.samples, "max_abs": self.max_abs,
                "max_rel": self.max_rel, "scale": self.scale, "tol": self.tol,
                "passed": self.passed, "components": dict(self.components)}


def _report(name, res, scale, tol, components=None):
    res = np.abs(np.asarray(res, dtype=float))
    scale = np.asarray(scale, dtype=float)
    rel = res / (scale + FLOOR)
    return ResidualReport(name, int(res.size), float(res.max(initial=0.0)),
                          float(rel.max(initial=0.0)), float(scale.max(initial=0.0)),
                          tol, components or {})


def sample_points(n=100, seed=0, rho_min=0.1, rho_max=10.0, axis_tube=1e-3):
    """Scrambled Halton points in the annulus rho_min <= |x| <= rho_max,
    log-uniform in rho, uniform in direction, at distance >= axis_tube
    from the x3-axis."""
    eng = qmc.Halton(d=3, scramble=True, seed=seed)
    out = []
    while len(out) < n:
        h = eng.random(2 * n)
        rho = rho_min * (rho_max / rho_min) ** h[:, 0]
        ct = 2.0 * h[:, 1] - 1.0
        st = np.sqrt(1.0 - ct * ct)
        ph = 2.0 * np.pi * h[:, 2]
        X = rho[:, None] * np.c_[st * np.cos(ph), st * np.sin(ph), ct]
        X = X[np.hypot(X[:, 0], X[:, 1]) >= axis_tube]
        out.extend(X)
    return np.array(out[:n])


def _cyl_frames(X):
    r = np.hypot(X[:, 0], X[:, 1])
    c, s = X[:, 0] / r, X[:, 1] / r
    z = np.zeros_like(r)
    return np.c_[c, s, z], np.c_[-s, c, z], np.tile([0.0, 0.0, 1.0], (len(X), 1))


# ------------------------------------------------------------ Euler

def euler_residual(field, points, tol=DEFAULT_TOL):
    """|u.grad u + grad p| and |div u|, split into cylindrical components.

    The e_phi component is the swirl transport u^P.grad u^phi + u^r u^phi / r.
    """
    X = np.atleast_2d(np.asarray(points, dtype=float))
    u = field.velocity(X)
    J = field.jacobian(X)
    gp = field.grad_pressure(X)
    R = np.einsum("nij,nj->ni", J, u) + gp
    nJ = np.linalg.norm(J, axis=(1, 2))
    scale = np.linalg.norm(u, axis=1) * nJ + np.linalg.norm(gp, axis=1)
    div = np.trace(J, axis1=1, axis2=2)
    comps = {}
    off = np.hypot(X[:, 0], X[:, 1]) > 0
    if np.any(off):
        er, ep, ez = _cyl_frames(X[off])
        for key, e in (("r", er), ("phi", ep), ("z", ez)):
            comps[key] = float(np.max(np.abs(np.sum(R[off] * e, axis=1)) / (scale[off] + FLOOR)))
    comps["divergence"] = float(np.max(np.abs(div) / (nJ + FLOOR)))
    rep = _report("euler", np.linalg.norm(R, axis=1), scale, tol, comps)
    rep.max_rel = max(rep.max_rel, comps["divergence"])
    return rep


# ------------------------------------------------------------ Grad-Shafranov

def _gs_terms(w, params, Z, R):
    b, C1, C2 = params.beta, params.C1, params.C2
    rho = np.hypot(Z, R)
    t = Z / rho
    w0, w1, w2 = w.derivs(t)
    g = rho ** (-b)
    gd = -b * rho ** (-b - 2.0)                   # g_z = gd z, g_r = gd r
    gdd = b * (b + 2.0) * rho ** (-b - 4.0)       # g_zz = gd + gdd z^2
    r3, r5 = rho ** 3, rho ** 5
    tz, tr = R * R / r3, -Z * R / r3
    tzz = -3.0 * R * R * Z / r5
    trr = -Z / r3 + 3.0 * Z * R * R / r5
    psi_zz = w2 * tz * tz * g + w1 * tzz * g + 2.0 * w1 * tz * gd * Z + w0 * (gd + gdd * Z * Z)
    psi_rr = w2 * tr * tr * g + w1 * trr * g + 2.0 * w1 * tr * gd * R + w0 * (gd + gdd * R * R)
    psi_r = w1 * tr * g + w0 * gd * R
    L = psi_zz + psi_rr - psi_r / R
    psi = w0 * g
    a = np.abs(psi)
    with np.errstate(divide="ignore", invalid="ignore"):
        dPi = np.where(psi == 0.0, 0.0, C1 * (2.0 + 4.0 / b) * np.sign(psi) * a ** (1.0 + 4.0 / b))
        GG = np.where(psi == 0.0, 0.0, C2 * C2 * (1.0 + 1.0 / b) * psi * a ** (2.0 / b))
    terms = (-L / R ** 2, dPi, -GG / R ** 2)
    mag = (np.abs(psi_zz) + np.abs(psi_rr) + np.abs(psi_r / R)) / R ** 2 + np.abs(dPi) + np.abs(GG) / R ** 2
    return terms, mag, rho, t


def grad_shafranov_residual(w, params, points, tol=DEFAULT_TOL):
    """-(1/r^2) L psi + Pi'(psi) - (1/r^2) Gamma'(psi) Gamma(psi) at (z, r)
    half-plane points, L = d_zz + d_rr - (1/r) d_r.  ``components`` holds
    the largest mismatch against -rho^(-beta-4) times the profile ODE residual."""
    if params.mode != AXI:
        raise ContractError("the Grad-Shafranov check needs axisymmetric parameters")
    P = np.atleast_2d(np.asarray(points, dtype=float))
    Z, R = P[:, 0], P[:, 1]
    if np.any(R <= 0):
        raise ContractError("Grad-Shafranov points need r > 0")
    terms, scale, rho, t = _gs_terms(w, params, Z, R)
    res = sum(terms)
    ode = residual_values(w, t, params)
    link = np.abs(res + rho ** (-params.beta - 4.0) * ode) / (scale + FLOOR)
    return _report("grad_shafranov", res, scale, tol, {"ode_link": float(link.max())})


# ------------------------------------------------------------ sphere system

@dataclass
class SphereProfile:
    """u = rho^-alpha (a e_theta + b e_phi + f e_rho) restricted to the unit
    sphere (axisymmetric), with pressure p and all theta-derivatives."""
    theta: np.ndarray
    a: np.ndarray
    da: np.ndarray
    b: np.ndarray
    db: np.ndarray
    f: np.ndarray
    df: np.ndarray
    p: np.ndarray
    dp: np.ndarray

    @staticmethod
    def default_grid(n=201, margin=0.05):
        return np.linspace(margin, np.pi - margin, n)

    @classmethod
    def from_field(cls, fld, theta=None):
        """Read (a, b, f, p) off the field on the meridian x2 = 0."""
        th = cls.default_grid() if theta is None else np.asarray(theta, dtype=float)
        s, c = np.sin(th), np.cos(th)
        z0 = np.zeros_like(th)
        X = np.c_[s, z0, c]
        e_rho, e_th, e_ph = X, np.c_[c, z0, -s], np.tile([0.0, 1.0, 0.0], (len(th), 1))
        u = fld.velocity(X)
        J = fld.jacobian(X)
        du = np.einsum("nij,nj->ni", J, e_th)   # d/dtheta along the sphere
        a, b, f = (np.sum(u * e, axis=1) for e in (e_th, e_ph, e_rho))
        da = np.sum(du * e_th, axis=1) - f
        db = np.sum(du * e_ph, axis=1)
        df = np.sum(du * e_rho, axis=1) + a
        p = fld.pressure(X)
        dp = np.sum(fld.grad_pressure(X) * e_th, axis=1)
        return cls(th, a, da, b, db, f, df, p, dp)

    @classmethod
    def from_zonal_harmonic(cls, alpha, theta=None):
        """Irrotational data v = grad f/(1 - alpha), f = P_n(cos theta) with
        n(n+1) = (alpha-2)(alpha-1), p = -(|v|^2 + f^2)/2."""
        alpha = float(alpha)
        if alpha != int(alpha) or alpha == 1.0:
            raise ParameterError("zonal data need an integer alpha != 1")
        n = int(alpha - 2) if alpha >= 2 else int(1 - alpha)
        th = cls.default_grid() if theta is None else np.asarray(theta, dtype=float)
        s, c = np.sin(th), np.cos(th)
        P = Legendre.basis(n)
        P1, P2 = P.deriv(), P.deriv(2)
        f = P(c)
        df = -s * P1(c)
        d2f = s * s * P2(c) - c * P1(c)
        k = 1.0 / (1.0 - alpha)
        a, da = k * df, k * d2f
        z = np.zeros_like(th)
        p = -0.5 * (a * a + f * f)
        dp = -(a * da + f * df)
        return cls(th, a, da, z, z.copy(), f, df, p, dp)


def sphere_equations_residual(sp, alpha, tol=DEFAULT_TOL):
    """Residuals of the reduced momentum (theta, phi), radial and mass
    equations on the sphere plus v.grad Pi = 2 alpha f Pi (axisymmetric data)."""
    al = float(alpha)
    s, c = np.sin(sp.theta), np.cos(sp.theta)
    a, b, f, p = sp.a, sp.b, sp.f, sp.p
    eqs = {
        "momentum_theta": ((1 - al) * f * a, -sp.db * b, -b * b * c / s, sp.dp, a * sp.da, b * sp.db),
        "momentum_phi": ((1 - al) * f * b, sp.db * a, a * b * c / s),
        "radial": (a * sp.df, -(a * a + b * b), -al * f * f, -2 * al * p),
        "mass": ((2 - al) * f, sp.da, a * c / s),
        # v.grad Pi = 2 alpha f Pi with Pi = p + |v|^2/2 + f^2/2, expanded
        "bernoulli": (a * sp.dp, a * a * sp.da, a * b * sp.db, a * f * sp.df, -2 * al * f * p,
                      -al * f * a * a, -al * f * b * b, -al * f ** 3),
    }
    comps, worst_abs, worst_rel, worst_scale = {}, 0.0, 0.0, 0.0
    for key, parts in eqs.items():
        res = np.abs(sum(parts))
        sc = sum(np.abs(x) for x in parts)
        rel = res / (sc + FLOOR)
        comps[key] = float(rel.max(initial=0.0))
        worst_abs = max(worst_abs, float(res.max(initial=0.0)))
        worst_rel = max(worst_rel, comps[key])
        worst_scale = max(worst_scale, float(sc.max(initial=0.0)))
    return ResidualReport("sphere", len(sp.theta), worst_abs, worst_rel, worst_scale, tol, comps)


# ------------------------------------------------------------ scaling, integrals

def homogeneity_check(field, samples, lambdas=(0.5, 2.0), tol=1e-10):
    """max |lam^alpha u(lam x) - u(x)| and |lam^(2 alpha) p(lam x) - p(x)|, relative."""
    X = np.atleast_2d(np.asarray(samples, dtype=float))
    al = field.alpha
    u0 = field.velocity(X)
    p0 = field.pressure(X)
    nu = np.linalg.norm(u0, axis=1)
    res, sc, comps = [], [], {}
    for lam in lambdas:
        du = np.linalg.norm(lam ** al * field.velocity(lam * X) - u0, axis=1)
        dp = np.abs(lam ** (2 * al) * field.pressure(lam * X) - p0)
        res += [du, dp]
        sc += [nu, np.abs(p0) + nu * nu]
        comps[f"lambda={lam:g}"] = float(max(np.max(du / (nu + FLOOR)),
                                            np.max(dp / (np.abs(p0) + nu * nu + FLOOR))))
    return _report("homogeneity", np.concatenate(res), np.concatenate(sc), tol, comps)


def first_integral_check(field, points, tol=DEFAULT_TOL):
    """u.grad Pi, u.grad Gamma and, for swirl-free axisymmetric fields,
    u.grad zeta, each relative to |u||grad .| (for zeta the gradient scale
    also counts its separate terms, which cancel where zeta is tiny)."""
    if field.mode not in (AXISYMMETRIC, PLANAR25D):
        raise ContractError("first integrals are defined for Clebsch-built fields")
    X = np.atleast_2d(np.asarray(points, dtype=float))
    u = field.velocity(X)
    nu = np.linalg.norm(u, axis=1)
    res, sc, comps = [], [], {}
    pairs = [("Pi", field.grad_bernoulli(X), 0.0), ("Gamma", field.grad_gamma(X), 0.0)]
    if field.mode == AXISYMMETRIC and field.params.C2 == 0.0:
        pairs.append(("zeta", field.grad_zeta(X), field.zeta_scale(X)))
    for key, G, floor in pairs:
        r = np.abs(np.sum(u * G, axis=1))
        s = nu * (np.linalg.norm(G, axis=1) + floor)
        res.append(r)
        sc.append(s)
        comps[key] = float(np.max(r / (s + FLOOR)))
    return _report("first_integrals", np.concatenate(res), np.concatenate(sc), tol, comps)


def curl_phi_check(field, theta=None, tol=DEFAULT_TOL):
    """Swirl-free axisymmetric fields: curl u . e_phi against
    rho^(-alpha-1)((1-alpha) a - f') with (a, f) read off the sphere."""
    sp = SphereProfile.from_field(field, theta)
    s, c = np.sin(sp.theta), np.cos(sp.theta)
    X = np.c_[s, np.zeros_like(s), c]
    om = field.curl(X)[:, 1]
    pred = (1.0 - field.alpha) * sp.a - sp.df
    return _report("curl_phi", om - pred, np.abs(om) + np.abs((1.0 - field.alpha) * sp.a)
                   + np.abs(sp.df), tol)


# ------------------------------------------------------------ weak form across the axis

def _bump(X, c, R):
    """Smooth compactly supported scalar exp(-1/(1-q)) with q = |x-c|^2/R^2,
    and its gradient."""
    d = X - c
    q = np.sum(d * d, axis=1) / R ** 2
    inside = q < 1.0
    g = np.zeros(len(X))
    G = np.zeros_like(X)
    qi = q[inside]
    e = np.exp(-1.0 / (1.0 - qi))
    g[inside] = e
    G[inside] = (-e / (1.0 - qi) ** 2 * 2.0 / R ** 2)[:, None] * d[inside]
    return g, G


def _ball_rule(zc, R, n_s=32, n_t=32, n_phi=8):
    """Quadrature on the ball |x - (0,0,zc)| <= R in meridian polar
    coordinates z = zc + s cos(t), r = s sin(t); t is graded toward the
    axis (t = 0, pi), where homogeneous fields are least regular."""
    gs, ws = leggauss(n_s)
    gt, wt = leggauss(n_t)
    s = 0.5 * R * (gs + 1.0)
    ys = 0.5 * (gt + 1.0)
    t = np.pi * (ys - np.sin(2 * np.pi * ys) / (2 * np.pi))
    dt = np.pi * (1.0 - np.cos(2 * np.pi * ys)) * 0.5 * wt
    ph = 2.0 * np.pi * (np.arange(n_phi) + 0.5) / n_phi
    S, T, P = np.meshgrid(s, t, ph, indexing="ij")
    Rr = S * np.sin(T)
    W = (0.5 * R * ws)[:, None, None] * dt[None, :, None] * S * Rr * (2.0 * np.pi / n_phi)
    X = np.c_[(Rr * np.cos(P)).ravel(), (Rr * np.sin(P)).ravel(), (zc + S * np.cos(T)).ravel()]
    return X, W.ravel()


def weak_form_check(field, n_tests=20, seed=0, tol=DEFAULT_TOL):
    """Weak Euler and mass equations against compactly supported test
    fields whose supports straddle the x3-axis:
        int (u_i u_j d_j phi_i + p div phi) dx = 0,  int u . grad g dx = 0.
    Each test field is phi = g e_k for a bump g centred on the axis."""
    rng = np.random.default_rng(seed)
    out, sc = [], []
    for m in range(n_tests):
        zc = rng.uniform(-2.0, 2.0)
        if abs(zc) < 0.6:
            zc = 0.6 * np.sign(zc or 1.0) + zc
        R = min(0.5 * abs(zc), rng.uniform(0.2, 0.5))
        c = np.array([0.0, 0.0, zc])
        X, W = _ball_rule(zc, R)
        u = field.velocity(X)
        p = field.pressure(X)
        g, G = _bump(X, c, R)
        k = m % 3
        mom = np.sum(W * (u[:, k] * np.sum(u * G, axis=1) + p * G[:, k]))
        mass = np.sum(W * np.sum(u * G, axis=1))
        smom = np.sum(W * (np.abs(u[:, k]) * np.linalg.norm(u, axis=1) + np.abs(p))
                      * np.linalg.norm(G, axis=1))
        smass = np.sum(W * np.linalg.norm(u, axis=1) * np.linalg.norm(G, axis=1))
        out += [mom, mass]
        sc += [smom, smass]
    return _report("weak_form", out, sc, tol, {"tests": n_tests})
