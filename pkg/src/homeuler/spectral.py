"""Spectral analysis of -L_beta = -(d^2/dt^2 + beta(beta+1)/(1-t^2)) on (-1,1)
with Dirichlet conditions, the Chandrasekhar transform chi = w/sin^2(theta),
and the bilinear form B.

The eigenproblem is discretized by a nodal Galerkin method on the
Chebyshev-Gauss-Lobatto Lagrange basis (endpoint functions dropped) with
Gauss-Legendre quadrature that integrates every matrix entry exactly.
The resulting pencil (K - beta(beta+1) P, Ms) is symmetric-definite.
"""
from dataclasses import dataclass, field

import numpy as np
import scipy.linalg as sla
from numpy.polynomial.legendre import leggauss

from ._cheb import bary_matrix, cgl_weights_bary, cheb_diff
from ._reps import ChebRep, ComboRep
from .errors import ContractError, ParameterError
from .profile import INTERVAL, ARC, ProfileW

SPLIT_TOL = 1e-10
N_PANELS = 16
PANEL_ORDER = 64


@dataclass(frozen=True, eq=False)
class EigenSystem:
    beta: float
    M: int
    grid: np.ndarray            # interior CGL nodes, ascending
    eigenvalues: np.ndarray     # ascending
    eigenfunctions: np.ndarray  # columns: node values, L2-orthonormal
    split_index: int
    domain: str = INTERVAL
    multiplicities: tuple = ()
    _quad: tuple = field(default=None, repr=False)

    def profile(self, k):
        """Eigenfunction e_{k+1} (0-based k) as a ProfileW."""
        v = self.eigenfunctions[:, k]
        lo, hi = (-1.0, 1.0) if self.domain == INTERVAL else (0.0, np.pi)
        vals = np.r_[0.0, v, 0.0][::-1]  # CGL order: descending abscissa
        return ProfileW.from_rep(ChebRep(vals, lo, hi), self.domain, self.beta)

    def inner(self, f_at_quad, k):
        """(f, e_{k+1}) with the assembly quadrature; f given at its nodes."""
        E, gw, _ = self._quad
        return float(np.sum(gw * f_at_quad * (E @ self.eigenfunctions[:, k])))

    @property
    def quad_nodes(self):
        return self._quad[2]


def _galerkin(M):
    D, x = cheb_diff(M)
    g, gw = leggauss(M + 2)
    E = bary_matrix(x, cgl_weights_bary(M), g)
    Ed = (E @ D)[:, 1:-1]
    E = E[:, 1:-1]
    K = Ed.T @ (gw[:, None] * Ed)
    Ms = E.T @ (gw[:, None] * E)
    P = E.T @ ((gw / (1.0 - g * g))[:, None] * E)
    return x[1:-1], K, Ms, P, E, g, gw


def _multiplicities(mu, rtol=1e-8):
    groups, count = [], 1
    for a, b in zip(mu[:-1], mu[1:]):
        if abs(b - a) <= rtol * max(1.0, abs(a)):
            count += 1
        else:
            groups.append(count)
            count = 1
    groups.append(count)
    return tuple(groups)


def _finish(beta, M, x, mu, V, E, g, gw, domain):
    # orient: positive just inside the left end (x is descending here)
    V = V[::-1, :]
    E = E[:, ::-1]
    for k in range(V.shape[1]):
        if V[0, k] < 0:
            V[:, k] = -V[:, k]
    split = int(np.sum(mu <= SPLIT_TOL))
    return EigenSystem(float(beta), int(M), x[::-1].copy(), mu, V, split, domain,
                       _multiplicities(mu), (E, gw, g))


def assemble_eigensystem(beta, M=128):
    """Eigenpairs of -L_beta on (-1,1), eigenvalues ascending."""
    beta = float(beta)
    if -2.0 <= beta <= 0.0:
        raise ParameterError("assemble_eigensystem needs beta outside [-2, 0]")
    if int(M) < 32:
        raise ParameterError("M must be at least 32")
    M = int(M)
    x, K, Ms, P, E, g, gw = _galerkin(M)
    mu, V = sla.eigh(K - beta * (beta + 1.0) * P, Ms)
    return _finish(beta, M, x, mu, V, E, g, gw, INTERVAL)


def assemble_autonomous(beta, M=128):
    """Eigenpairs of -d^2/dphi^2 - beta^2 on (0, pi) by the same Galerkin
    machinery (affine map of (-1,1)); exact values are n^2 - beta^2."""
    beta = float(beta)
    M = int(M)
    x, K, Ms, P, E, g, gw = _galerkin(M)
    s = 0.5 * np.pi
    mu, V = sla.eigh(K / s ** 2 - beta * beta * Ms, Ms)
    V = V / np.sqrt(s)
    xs = s * (x + 1.0)
    return _finish(beta, M, xs, mu, V, E, s * (g + 1.0), s * gw, ARC)


# ---------------------------------------------------------------- chi / S^4

@dataclass(frozen=True, eq=False)
class ChiProfile:
    theta: np.ndarray
    values: np.ndarray
    derivative: np.ndarray
    source: ProfileW = field(default=None, repr=False)

    def __call__(self, theta):
        """chi and d chi/d theta at arbitrary angles."""
        th = np.atleast_1d(np.asarray(theta, dtype=float))
        c, ct = self.source.chi(np.cos(th))
        return c, -np.sin(th) * ct


def _check_dirichlet(w, tol=1e-10):
    ends = w.derivs(np.array([-1.0, 1.0]))[0]
    if np.max(np.abs(ends)) > tol:
        raise ContractError("profile does not vanish at t = +-1")


def chandrasekhar(w, n_theta=257):
    """chi(theta) = w(cos theta)/sin^2 theta on a uniform theta grid."""
    if w.domain != INTERVAL:
        raise ContractError("the transform applies to profiles on (-1, 1)")
    _check_dirichlet(w)
    th = np.linspace(0.0, np.pi, n_theta)
    c, ct = w.chi(np.cos(th))
    return ChiProfile(th, c, -np.sin(th) * ct, w)


def _theta_rule():
    g, gw = leggauss(PANEL_ORDER)
    edges = np.linspace(0.0, np.pi, N_PANELS + 1)
    h = 0.5 * np.diff(edges)
    mid = 0.5 * (edges[1:] + edges[:-1])
    th = (mid[:, None] + h[:, None] * g[None, :]).ravel()
    wt = (h[:, None] * gw[None, :]).ravel()
    return th, wt * np.sin(th) ** 3


def _t_rule(*profiles):
    """Composite Gauss on (-1,1), panels split at the profiles' zeros."""
    cuts = set(np.linspace(-1.0, 1.0, N_PANELS + 1))
    for p in profiles:
        cuts.update(float(z) for z in p.zeros())
    edges = np.array(sorted(cuts))
    edges = edges[np.r_[True, np.diff(edges) > 1e-13]]
    g, gw = leggauss(PANEL_ORDER)
    h = 0.5 * np.diff(edges)
    mid = 0.5 * (edges[1:] + edges[:-1])
    return (mid[:, None] + h[:, None] * g[None, :]).ravel(), (h[:, None] * gw[None, :]).ravel()


def isometry_check(w, eta):
    """Both sides of the two transform identities:
    int w'eta' dt = int_0^pi (chi' xi' + 2 chi xi) sin^3 dtheta and
    int w eta/(1-t^2) dt = int_0^pi chi xi sin^3 dtheta.
    Returns ((lhs1, rhs1), (lhs2, rhs2))."""
    _check_dirichlet(w)
    _check_dirichlet(eta)
    t, wt = _t_rule(w, eta)
    w0, w1, _ = w.derivs(t)
    e0, e1, _ = eta.derivs(t)
    lhs1 = float(np.sum(wt * w1 * e1))
    lhs2 = float(np.sum(wt * w0 * e0 / (1.0 - t * t)))
    th, wth = _theta_rule()
    cw, dcw = ChiProfile(None, None, None, w)(th)
    ce, dce = ChiProfile(None, None, None, eta)(th)
    rhs1 = float(np.sum(wth * (dcw * dce + 2.0 * cw * ce)))
    rhs2 = float(np.sum(wth * cw * ce))
    return (lhs1, rhs1), (lhs2, rhs2)


def rayleigh_quotient(chi, beta):
    """[int (|chi'|^2 + (2+beta)(1-beta) chi^2) dH] / [int sin^2 chi^2 dH]."""
    th, wth = _theta_rule()
    c, dc = chi(th)
    den = float(np.sum(wth * np.sin(th) ** 2 * c * c))
    if den <= 0.0:
        raise ContractError("chi vanishes identically")
    num = float(np.sum(wth * (dc * dc + (2.0 + beta) * (1.0 - beta) * c * c)))
    return num / den


def bilinear_B(w, eta, beta):
    """B(w, eta) = int (w'eta' - beta(beta+1) w eta/(1-t^2)) dt."""
    t, wt = _t_rule(w, eta)
    w0, w1, _ = w.derivs(t)
    e0, e1, _ = eta.derivs(t)
    return float(np.sum(wt * (w1 * e1 - beta * (beta + 1.0) * w0 * e0 / (1.0 - t * t))))


def l2_inner(w, eta):
    t, wt = _t_rule(w, eta)
    return float(np.sum(wt * w(t) * eta(t)))


def h10_norm2(w):
    t, wt = _t_rule(w)
    return float(np.sum(wt * w.derivs(t)[1] ** 2))


def decompose(w, sys):
    """w = y + z with y in span(e_1..e_N) and z orthogonal to it."""
    if w.domain != sys.domain:
        raise ContractError("profile and eigensystem live on different domains")
    N = sys.split_index
    if N == 0:
        zero = ProfileW.from_rep(ComboRep([w.rep], [0.0]), w.domain, sys.beta)
        return zero, w
    g = sys.quad_nodes
    wg = w(g)
    coef = np.array([sys.inner(wg, k) for k in range(N)])
    vals = sys.eigenfunctions[:, :N] @ coef
    lo, hi = w.bounds
    yrep = ChebRep(np.r_[0.0, vals, 0.0][::-1], lo, hi)
    y = ProfileW.from_rep(yrep, w.domain, sys.beta)
    z = ProfileW.from_rep(ComboRep([w.rep, yrep], [1.0, -1.0]), w.domain, sys.beta)
    return y, z


def hardy_sides(w):
    """(int w^2/(1-t)^2 dt, 4 int w'^2 dt); Hardy's inequality says lhs <= rhs."""
    _check_dirichlet(w)
    t, wt = _t_rule(w)
    w0, w1, _ = w.derivs(t)
    return float(np.sum(wt * (w0 / (1.0 - t)) ** 2)), 4.0 * float(np.sum(wt * w1 * w1))


def cross_estimate(w, eta):
    """(|int w eta/(1-t^2) dt|, 2 ||w'|| ||eta||), the first bounded by the second."""
    t, wt = _t_rule(w, eta)
    w0, w1, _ = w.derivs(t)
    e0 = eta.derivs(t)[0]
    lhs = abs(float(np.sum(wt * w0 * e0 / (1.0 - t * t))))
    return lhs, 2.0 * np.sqrt(np.sum(wt * w1 * w1) * np.sum(wt * e0 * e0))
