"""Chebyshev grids, differentiation matrices, coefficient transforms and
quadrature weights used by the spectral and collocation code."""
import numpy as np
from numpy.polynomial import chebyshev as C
from scipy.fft import dct


def cgl(M):
    """Chebyshev-Gauss-Lobatto nodes cos(pi j/M), j=0..M (descending)."""
    return np.cos(np.pi * np.arange(M + 1) / M)


def cheb_diff(M):
    """Trefethen's differentiation matrix on the CGL nodes."""
    x = cgl(M)
    c = np.ones(M + 1)
    c[0] = c[-1] = 2.0
    c *= (-1.0) ** np.arange(M + 1)
    dX = x[:, None] - x[None, :]
    D = np.outer(c, 1.0 / c) / (dX + np.eye(M + 1))
    D -= np.diag(D.sum(axis=1))
    return D, x


def cgl_weights_bary(M):
    w = (-1.0) ** np.arange(M + 1)
    w[0] *= 0.5
    w[-1] *= 0.5
    return w


def bary_matrix(x, wb, xe):
    """Barycentric interpolation matrix from nodes x (weights wb) to points xe."""
    xe = np.asarray(xe, dtype=float)
    d = xe[:, None] - x[None, :]
    hit = d == 0.0
    d[hit] = 1.0
    Cm = wb[None, :] / d
    Cm /= Cm.sum(axis=1, keepdims=True)
    rows = np.nonzero(hit.any(axis=1))[0]
    for i in rows:
        Cm[i] = hit[i].astype(float)
    return Cm


def clenshaw_curtis(M):
    """Clenshaw-Curtis weights on the CGL nodes (exact for degree <= M)."""
    th = np.pi * np.arange(M + 1) / M
    j = np.arange(1, M // 2 + 1)
    bj = np.where(2 * j == M, 1.0, 2.0)
    s = (bj / (4.0 * j * j - 1.0))[None, :] * np.cos(2.0 * np.outer(th, j))
    ck = np.full(M + 1, 2.0)
    ck[0] = ck[-1] = 1.0
    return ck / M * (1.0 - s.sum(axis=1))


def cgl_coeffs(values):
    """Chebyshev coefficients of the interpolant through CGL values."""
    f = np.asarray(values, dtype=float)
    M = f.size - 1
    c = dct(f, type=1) / M
    c[0] *= 0.5
    c[-1] *= 0.5
    return c


def gauss_cheb_nodes(n):
    """First-kind Chebyshev (Gauss) nodes on (-1,1), ascending; no endpoints."""
    return -np.cos((2 * np.arange(n) + 1) * np.pi / (2 * n))


def gauss_coeffs(values):
    """Chebyshev coefficients from values at ascending first-kind nodes."""
    g = np.asarray(values, dtype=float)[::-1]
    n = g.size
    c = dct(g, type=2) / n
    c[0] *= 0.5
    return c


def cheb_eval(c, x, der=0):
    if der:
        c = C.chebder(c, der)
    return C.chebval(x, c)
