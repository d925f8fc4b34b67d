"""Legendre functions and the closed-form solution catalog.

The polynomial stream profiles w_{n+1}(t) = -int_{-1}^t P_n(s) ds are
kept with exact rational coefficients; the explicit velocity fields are
written out directly and never go through the profile machinery.
"""
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from ._validation import as_vector, check_int, check_real
from .errors import DomainError, ParameterError


@dataclass(frozen=True)
class PolyProfile:
    degree: int
    coefficients: tuple  # exact Fractions, ascending powers of t

    def __call__(self, t):
        t = np.asarray(t, dtype=float)
        return np.polynomial.polynomial.polyval(t, [float(c) for c in self.coefficients])


def legendre_p(n, t):
    """P_n(t) by the Bonnet recurrence (k+1)P_{k+1} = (2k+1)tP_k - kP_{k-1}."""
    n = check_int("n", n)
    if n < 0:
        raise DomainError("Legendre degree must be nonnegative")
    t = np.asarray(t, dtype=float)
    if np.any(np.abs(t) > 1.0):
        raise DomainError("legendre_p is defined on [-1, 1]")
    p0, p1 = np.ones_like(t), t.copy()
    if n == 0:
        return p0 if p0.ndim else float(p0)
    for k in range(1, n):
        p0, p1 = p1, ((2 * k + 1) * t * p1 - k * p0) / (k + 1)
    return p1 if p1.ndim else float(p1)


@lru_cache(maxsize=None)
def legendre_coeffs(n):
    """Exact monomial coefficients of P_n (ascending), same recurrence."""
    if n < 0:
        raise DomainError("Legendre degree must be nonnegative")
    p0, p1 = [Fraction(1)], [Fraction(0), Fraction(1)]
    if n == 0:
        return tuple(p0)
    for k in range(1, n):
        nxt = [Fraction(0)] * (k + 2)
        for i, c in enumerate(p1):
            nxt[i + 1] += Fraction(2 * k + 1, k + 1) * c
        for i, c in enumerate(p0):
            nxt[i] -= Fraction(k, k + 1) * c
        p0, p1 = p1, nxt
    return tuple(p1)


@lru_cache(maxsize=None)
def w_poly_profile(n):
    """PolyProfile for w_{n+1}, n >= 1, by termwise integration of P_n."""
    n = check_int("n", n)
    if n == 0:
        raise DomainError("n = 0 (alpha = 2) has no polynomial stream profile")
    if n < 0:
        raise DomainError("w_{n+1} needs n >= 1")
    p = legendre_coeffs(n)
    integ = [Fraction(0)] + [c / (k + 1) for k, c in enumerate(p)]
    at_m1 = sum(c * (-1) ** k for k, c in enumerate(integ))
    integ[0] -= at_m1
    return PolyProfile(n + 1, tuple(-c for c in integ))


def w_poly(n, t):
    """w_{n+1}(t) = -int_{-1}^t P_n(s) ds."""
    prof = w_poly_profile(n)
    t = np.asarray(t, dtype=float)
    if np.any(np.abs(t) > 1.0):
        raise DomainError("w_poly is defined on [-1, 1]")
    v = prof(t)
    return v if v.ndim else float(v)


def profile_index(n):
    """Polynomial index m with m(m+1) = n(n+1), m >= 1, or None."""
    if n >= 1:
        return n
    if n <= -2:
        return -n - 1
    return None


def _axi_stream_parts(n, z, r):
    """psi, d psi/dz, d psi/dr for psi = w_{m+1}(z/rho) rho^{-n}."""
    m = profile_index(n)
    c = np.array([float(v) for v in w_poly_profile(m).coefficients])
    dc = np.polynomial.polynomial.polyder(c)
    rho = np.hypot(z, r)
    t = z / rho
    w = np.polynomial.polynomial.polyval(t, c)
    dw = np.polynomial.polynomial.polyval(t, dc)
    # dt/dz = r^2/rho^3, dt/dr = -z r/rho^3, d rho/dz = z/rho, d rho/dr = r/rho
    rn = rho ** (-n)
    psi_z = dw * r * r / rho ** 3 * rn - n * w * rho ** (-n - 2) * z
    psi_r = -dw * z * r / rho ** 3 * rn - n * w * rho ** (-n - 2) * r
    return w * rn, psi_z, psi_r


def irrotational_axisymmetric(n, point):
    """Irrotational axisymmetric (-(n+2))-homogeneous field and pressure.

    n = 0 is the radial field x/rho^3; otherwise u = curl(psi grad phi) with
    psi = w_{m+1}(cos theta)/rho^n, m(m+1) = n(n+1).  Pressure -|u|^2/2.
    """
    n = check_int("n", n)
    x = as_vector(point, 3)
    rho = float(np.linalg.norm(x))
    if rho == 0.0:
        raise DomainError("the catalog fields are singular or undefined at the origin")
    if n == 0:
        u = x / rho ** 3
        return u, -0.5 * float(u @ u)
    if profile_index(n) is None:
        raise ParameterError("n = -1 (alpha = 1) admits no axisymmetric irrotational field")
    r = float(np.hypot(x[0], x[1]))
    z = x[2]
    if r == 0.0:
        # on the axis only u^z survives: u^z = lim (1/r) d psi/dr
        m = profile_index(n)
        c = [float(v) for v in w_poly_profile(m).coefficients]
        dc = np.polynomial.polynomial.polyder(c)
        s = np.sign(z)
        dw = np.polynomial.polynomial.polyval(s, dc)
        uz = -s * dw * abs(z) ** (-n - 2)
        u = np.array([0.0, 0.0, uz])
        return u, -0.5 * uz * uz
    _, psi_z, psi_r = _axi_stream_parts(n, z, r)
    ur = -psi_z / r
    uz = psi_r / r
    u = np.array([ur * x[0] / r, ur * x[1] / r, uz])
    return u, -0.5 * float(u @ u)


def irrotational_2d(n, point):
    """Planar field with stream function sin(n phi)/r^n, u = (d2 psi, -d1 psi).

    n = 0 is the sentinel for the radial field x/r^2 (alpha = 1).
    Written via u1 - i u2 = n z^{-n-1}, z = x1 + i x2.
    """
    n = check_int("n", n)
    x = as_vector(point, 2)
    if x[0] == 0.0 and x[1] == 0.0:
        raise DomainError("irrotational_2d is undefined at the origin")
    if n == 0:
        return x / float(x @ x)
    g = n * complex(x[0], x[1]) ** (-n - 1)
    return np.array([g.real, -g.imag])


def irrotational_2d_jacobian(n, point):
    x = as_vector(point, 2)
    if n == 0:
        r2 = float(x @ x)
        return np.eye(2) / r2 - 2.0 * np.outer(x, x) / r2 ** 2
    D = n * (-n - 1) * complex(x[0], x[1]) ** (-n - 2)
    Di = 1j * D
    return np.array([[D.real, Di.real], [-D.imag, -Di.imag]])


def _geodesic(x, a, b, alpha):
    """Complex-step safe formula; caller guarantees K > 0 (or b = 0)."""
    x1, x2, x3 = x
    r2 = x1 * x1 + x2 * x2
    K = a * a * r2 - b * b * x3 * x3
    out = [0.0 * x1, 0.0 * x1, a * a * K ** (-alpha / 2.0)]
    if b != 0.0:
        f1 = b * b * x3 / r2 * K ** (-alpha / 2.0)
        f2 = -b / r2 * K ** ((1.0 - alpha) / 2.0)
        out[0] = f1 * x1 - f2 * x2
        out[1] = f1 * x2 + f2 * x1
    return out


def _geodesic_check(a, b, alpha):
    a, b, alpha = check_real("a", a), check_real("b", b), check_real("alpha", alpha)
    if abs(a * a + b * b - 1.0) > 1e-12:
        raise ParameterError("geodesic flow needs a^2 + b^2 = 1")
    if alpha > 0:
        raise ParameterError("geodesic flow needs alpha <= 0")
    return a, b, alpha


def geodesic_flow(point, a, b, alpha):
    """Axisymmetric geodesic flow with constant (zero) pressure, supported
    where K = a^2 r^2 - b^2 z^2 > 0; zero elsewhere."""
    a, b, alpha = _geodesic_check(a, b, alpha)
    x = as_vector(point, 3)
    r2 = x[0] ** 2 + x[1] ** 2
    if r2 == 0.0 and b != 0.0:
        raise DomainError("geodesic flow with swirl is undefined on the axis")
    K = a * a * r2 - b * b * x[2] ** 2
    if K <= 0.0:
        return np.zeros(3)
    return np.array([float(v) for v in _geodesic(x, a, b, alpha)])


def geodesic_jacobian(point, a, b, alpha, h=1e-20):
    """du_i/dx_j by complex-step differentiation (exact to rounding)."""
    a, b, alpha = _geodesic_check(a, b, alpha)
    x = as_vector(point, 3)
    J = np.zeros((3, 3))
    K = a * a * (x[0] ** 2 + x[1] ** 2) - b * b * x[2] ** 2
    if K <= 0.0:
        return J
    for j in range(3):
        xc = x.astype(complex)
        xc[j] += 1j * h
        J[:, j] = [np.imag(v) / h for v in _geodesic(xc, a, b, alpha)]
    return J


def circular_flow(point, a, alpha):
    """Circular flow u = a r^{-alpha-1}(-x2, x1, 0), p = -(a^2/(2 alpha)) r^{-2 alpha}."""
    a, alpha = check_real("a", a), check_real("alpha", alpha)
    if alpha == 0.0:
        raise ParameterError("circular flow pressure is singular for alpha = 0")
    x = as_vector(point, 2)
    r = float(np.hypot(x[0], x[1]))
    if r == 0.0:
        raise DomainError("circular flow is evaluated off the origin")
    u = a / r ** (alpha + 1.0) * np.array([-x[1], x[0], 0.0])
    p = -(a * a / (2.0 * alpha)) / r ** (2.0 * alpha)
    return u, p
