"""Property-based checks of the structural symmetries."""
import numpy as np
import pytest
from hypothesis import HealthCheck, given, settings, strategies as st

from conftest import autonomous, solved, solved_field
from homeuler import bvp, fields, spectral, verify
from homeuler._reps import PolyRep
from homeuler.params import ParamSet
from homeuler.profile import INTERVAL, ProfileW

FAST = settings(max_examples=25, deadline=None, suppress_health_check=[HealthCheck.too_slow])

coord = st.floats(-5.0, 5.0, allow_nan=False)
point = st.tuples(coord, coord, coord).filter(lambda x: 0.2 < np.linalg.norm(x) and np.hypot(x[0], x[1]) > 1e-2)
lam = st.floats(1e-2, 1e2)
chi_poly = st.lists(st.floats(-2.0, 2.0, allow_nan=False), min_size=1, max_size=6).filter(
    lambda c: max(abs(v) for v in c) > 1e-3)


def _poly(q, beta=1.5):
    return ProfileW.from_rep(PolyRep.from_chi(q), INTERVAL, beta)


@FAST
@given(x=point, lam=lam, k=st.sampled_from([(4.0, 0.0, 1.0), (-3.0, -1.0, 1.0), (2.5, -1.0, 0.0)]))
def test_field_homogeneity(x, lam, k):
    f = solved_field(*k)
    x = np.array(x)
    u, p = f.velocity(x), f.pressure(x)
    assert np.allclose(lam ** f.alpha * f.velocity(lam * x), u, rtol=1e-12, atol=1e-13 * np.linalg.norm(u))
    assert lam ** (2 * f.alpha) * f.pressure(lam * x) == pytest.approx(p, rel=1e-11, abs=1e-13 * (u @ u))


@FAST
@given(x=point, ang=st.floats(0, 2 * np.pi))
def test_axisymmetry_rotation(x, ang):
    f = solved_field(4.0, 0.0, 1.0)
    c, s = np.cos(ang), np.sin(ang)
    R = np.array([[c, -s, 0], [s, c, 0], [0, 0, 1.0]])
    x = np.array(x)
    assert np.allclose(f.velocity(R @ x), R @ f.velocity(x), atol=1e-12 * np.linalg.norm(f.velocity(x)))


@FAST
@given(x=point)
def test_reflected_profile_gives_reflected_field(x):
    # w(-t) solves the same equation; the field is the z-mirror image
    p, w = solved(4.0, -1.0, 0.0)
    wr = w.transformed(reflect=True).with_certificate(bvp.residual_ode(w.transformed(reflect=True), p), 1e-8)
    fr = fields.build_axisymmetric(wr, p)
    f = solved_field(4.0, -1.0, 0.0)
    x = np.array(x)
    M = np.diag([1.0, 1.0, -1.0])
    assert np.allclose(fr.velocity(M @ x), -(M @ f.velocity(x)) * np.array([1, 1, 1]),
                       atol=1e-9 * np.linalg.norm(f.velocity(x)))


@pytest.mark.parametrize("case", [(4.0, -1.0, 0.0), (-3.0, 0.0, 1.0)])
def test_sign_flip_and_reflection_keep_residual(case):
    p, w = solved(*case)
    for v in (w.transformed(scale=-1.0), w.transformed(reflect=True)):
        assert bvp.residual_ode(v, p) < 10 * w.residual_certificate + 1e-14


@FAST
@given(lam=st.floats(0.5, 2.0))
def test_scaling_covariance_of_equation(lam):
    # lam*w solves the problem with c1 lam^(-4/b), c2 lam^(-2/b)
    p, w = solved(-3.0, -1.0, 1.0)
    b = p.beta
    q = ParamSet.from_coefficients(b, p.c1 * lam ** (-4 / b), p.c2 * lam ** (-2 / b))
    v = w.transformed(scale=lam)
    assert bvp.residual_ode(v, q) < 1e-7 * max(1.0, lam)


@FAST
@given(lam=st.floats(0.5, 2.0))
def test_autonomous_scaling_covariance(lam):
    w = autonomous(3.0, 1.0, 4)
    q = ParamSet.planar_from_c(3.0, lam ** (-2 / 3.0))
    v = w.transformed(scale=lam)
    assert bvp.residual_ode(v, q) < 1e-6 * lam


@FAST
@given(a=chi_poly, b=chi_poly)
def test_isometry_identities(a, b):
    (l1, r1), (l2, r2) = spectral.isometry_check(_poly(a), _poly(b))
    assert l1 == pytest.approx(r1, rel=1e-8, abs=1e-10)
    assert l2 == pytest.approx(r2, rel=1e-8, abs=1e-10)


@FAST
@given(a=chi_poly)
def test_hardy_inequality(a):
    lhs, rhs = spectral.hardy_sides(_poly(a))
    assert lhs <= rhs * (1 + 1e-12)


@FAST
@given(a=chi_poly, b=chi_poly)
def test_cross_estimate(a, b):
    lhs, rhs = spectral.cross_estimate(_poly(a), _poly(b))
    assert lhs <= rhs * (1 + 1e-12)


@FAST
@given(seed=st.integers(0, 10_000), n=st.integers(1, 40))
def test_sample_points_constraints(seed, n):
    X = verify.sample_points(n, seed)
    rho = np.linalg.norm(X, axis=1)
    assert len(X) == n and rho.min() >= 0.1 and rho.max() <= 10.0
