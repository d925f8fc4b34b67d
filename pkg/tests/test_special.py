import math
from fractions import Fraction as F

import numpy as np
import pytest
from numpy.polynomial import legendre as npleg

from homeuler import special
from homeuler.errors import DomainError, ParameterError


@pytest.mark.parametrize("n", range(0, 12))
def test_legendre_matches_numpy(n):
    t = np.linspace(-1, 1, 101)
    ref = npleg.legval(t, [0] * n + [1])
    assert np.max(np.abs(special.legendre_p(n, t) - ref)) < 1e-13


@pytest.mark.parametrize("n", range(0, 10))
def test_exact_coeffs_match_numpy(n):
    ref = npleg.leg2poly([0] * n + [1])
    got = np.array([float(c) for c in special.legendre_coeffs(n)])
    assert np.allclose(got, ref, atol=1e-15, rtol=1e-14)


def _rodrigues(n):
    # P_n = (1/(2^n n!)) d^n/dt^n (t^2 - 1)^n, in exact arithmetic
    c = [F(0)] * (2 * n + 1)
    for k in range(n + 1):
        c[2 * k] = F(math.comb(n, k) * (-1) ** (n - k))
    for _ in range(n):
        c = [i * c[i] for i in range(1, len(c))]
    return tuple(v / (2 ** n * math.factorial(n)) for v in c)


@pytest.mark.parametrize("n", range(0, 14))
def test_exact_coeffs_match_rodrigues(n):
    got = special.legendre_coeffs(n)
    ref = _rodrigues(n)
    assert tuple(got) + (F(0),) * (len(ref) - len(got)) == ref


def test_closed_form_profiles_exact():
    assert special.w_poly_profile(1).coefficients == (F(1, 2), F(0), F(-1, 2))
    assert special.w_poly_profile(2).coefficients == (F(0), F(1, 2), F(0), F(-1, 2))
    assert special.w_poly_profile(3).coefficients == (F(-1, 8), F(0), F(6, 8), F(0), F(-5, 8))


def test_legendre_scalar_and_domain():
    assert special.legendre_p(3, 1.0) == 1.0
    assert special.legendre_p(4, -1.0) == 1.0
    with pytest.raises(DomainError):
        special.legendre_p(2, 1.5)
    with pytest.raises(DomainError):
        special.legendre_p(-1, 0.0)


def test_w_poly_zeros_inside_interval():
    for n in range(1, 7):
        c = [float(v) for v in special.w_poly_profile(n).coefficients]
        r = np.polynomial.polynomial.polyroots(c)
        assert np.allclose(r.imag, 0, atol=1e-9)
        assert np.all(np.abs(r.real) <= 1 + 1e-9)
        assert len(r) == n + 1


def test_w_poly_domain_and_index():
    with pytest.raises(DomainError):
        special.w_poly(0, 0.0)
    with pytest.raises(DomainError):
        special.w_poly(2, 1.2)
    assert special.profile_index(3) == 3
    assert special.profile_index(-4) == 3
    assert special.profile_index(-1) is None and special.profile_index(0) is None


def _fd_div(fun, x, h=1e-5):
    return sum((fun(x + h * e)[0][i] - fun(x - h * e)[0][i]) / (2 * h)
               for i, e in enumerate(np.eye(3)))


@pytest.mark.parametrize("n", [0, 1, 2, 3, -3, -4])
def test_irrotational_axisymmetric_is_divergence_and_curl_free(n):
    x = np.array([0.7, -0.4, 0.5])
    f = lambda y: special.irrotational_axisymmetric(n, y)
    h = 1e-5
    J = np.array([(f(x + h * e)[0] - f(x - h * e)[0]) / (2 * h) for e in np.eye(3)]).T
    scale = np.linalg.norm(J)
    assert abs(np.trace(J)) < 1e-7 * scale
    assert np.max(np.abs(J - J.T)) < 1e-7 * scale
    u, p = f(x)
    assert p == pytest.approx(-0.5 * u @ u)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_irrotational_axisymmetric_axis_limit(n):
    on = special.irrotational_axisymmetric(n, [0.0, 0.0, 0.8])[0]
    near = special.irrotational_axisymmetric(n, [1e-7, 0.0, 0.8])[0]
    assert np.allclose(on, near, atol=1e-5 * np.linalg.norm(on))
    # the radial part vanishes linearly in r
    far = special.irrotational_axisymmetric(n, [2e-7, 0.0, 0.8])[0]
    assert far[0] == pytest.approx(2 * near[0], rel=1e-2)


def test_irrotational_axisymmetric_errors():
    with pytest.raises(DomainError):
        special.irrotational_axisymmetric(1, [0, 0, 0])
    with pytest.raises(ParameterError):
        special.irrotational_axisymmetric(-1, [1, 0, 0])


@pytest.mark.parametrize("n", [0, 1, 2, 3, -2, -3])
def test_irrotational_2d_jacobian(n):
    x = np.array([0.3, 0.9])
    J = special.irrotational_2d_jacobian(n, x)
    h = 1e-6
    Jfd = np.array([(special.irrotational_2d(n, x + h * e) - special.irrotational_2d(n, x - h * e)) / (2 * h)
                    for e in np.eye(2)]).T
    assert np.allclose(J, Jfd, atol=1e-7 * np.abs(J).max())
    assert abs(np.trace(J)) < 1e-12 * np.abs(J).max()
    assert abs(J[0, 1] - J[1, 0]) < 1e-12 * np.abs(J).max()


def test_geodesic_anchor_by_substitution():
    # a = b = 1/sqrt(2), alpha = -2 at (1,0,0): K = 1/2, so
    # u3 = a^2 K = 1/4, u2 = -b K^{3/2} = -1/4
    s = 1 / np.sqrt(2)
    u = special.geodesic_flow([1, 0, 0], s, s, -2)
    assert np.allclose(u, [0, -0.25, 0.25], atol=1e-15)


def test_geodesic_zero_outside_support_and_errors():
    s = 1 / np.sqrt(2)
    assert np.all(special.geodesic_flow([0.1, 0, 1.0], s, s, -2) == 0)
    with pytest.raises(ParameterError):
        special.geodesic_flow([1, 0, 0], 0.5, 0.5, -2)
    with pytest.raises(ParameterError):
        special.geodesic_flow([1, 0, 0], 1.0, 0.0, 1.0)
    with pytest.raises(DomainError):
        special.geodesic_flow([0, 0, 1], s, s, -2)


def test_geodesic_jacobian_matches_fd():
    x = np.array([0.8, 0.3, 0.2])
    a, b, al = 0.6, 0.8, -1.5
    J = special.geodesic_jacobian(x, a, b, al)
    h = 1e-6
    Jfd = np.array([(special.geodesic_flow(x + h * e, a, b, al) - special.geodesic_flow(x - h * e, a, b, al)) / (2 * h)
                    for e in np.eye(3)]).T
    assert np.allclose(J, Jfd, atol=1e-7)


def test_circular_flow():
    u, p = special.circular_flow([2.0, 0.0], 1.5, 2.0)
    assert np.allclose(u, [0, 1.5 / 4, 0])
    assert p == pytest.approx(-(1.5 ** 2 / 4) / 16)
    with pytest.raises(ParameterError):
        special.circular_flow([1, 0], 1.0, 0.0)
    with pytest.raises(DomainError):
        special.circular_flow([0, 0], 1.0, 2.0)
