import csv
import json

import numpy as np
import pytest

from conftest import autonomous, solved, solved_field
from homeuler import fields, special
from homeuler.errors import ContractError, DomainError, ParameterError
from homeuler.params import ParamSet

X0 = np.array([[0.7, -0.4, 0.5], [-1.3, 0.2, -2.1], [0.05, 0.3, 4.0], [3.0, 1.0, -0.2]])


def _fd_jac(f, X, h=1e-6):
    out = np.zeros((len(X), 3, 3))
    for j, e in enumerate(np.eye(3)):
        hs = h * np.linalg.norm(X, axis=1)[:, None]
        out[:, :, j] = (f(X + hs * e) - f(X - hs * e)) / (2 * hs)
    return out


def _fields():
    return [solved_field(4.0, 0.0, 1.0), solved_field(-3.0, -1.0, 1.0), solved_field(2.5, -1.0, 0.0),
            fields.build_25d(autonomous(3.0, 1.0, 4), autonomous(3.0, 1.0, 4).params),
            fields.irrotational_axisymmetric_field(2), fields.irrotational_2d_field(3),
            fields.circular_field(1.2, 2.0), fields.geodesic_field(0.6, 0.8, -1.0)]


@pytest.mark.parametrize("k", range(8))
def test_jacobian_matches_finite_differences(k):
    f = _fields()[k]
    J = f.jacobian(X0)
    Jfd = _fd_jac(f.velocity, X0)
    for a, b in zip(J, Jfd):
        assert np.max(np.abs(a - b)) < 1e-6 * max(np.abs(a).max(), 1e-300)


@pytest.mark.parametrize("k", range(7))
def test_grad_pressure_matches_finite_differences(k):
    f = _fields()[k]
    g = f.grad_pressure(X0)
    h = 1e-6
    for x, gx in zip(X0, g):
        s = h * np.linalg.norm(x)
        fd = np.array([(f.pressure(x + s * e) - f.pressure(x - s * e)) / (2 * s) for e in np.eye(3)])
        assert np.max(np.abs(fd - gx)) < 1e-6 * np.abs(gx).max()


@pytest.mark.parametrize("n", [1, 2, 3, -3, -4])
def test_catalog_field_two_routes(n):
    # profile machinery against the directly written closed form
    f = fields.irrotational_axisymmetric_field(n)
    for x in X0:
        u, p = special.irrotational_axisymmetric(n, x)
        assert np.allclose(f.velocity(x), u, rtol=1e-12, atol=1e-14 * np.linalg.norm(u))
        assert f.pressure(x) == pytest.approx(p, rel=1e-12)


def test_radial_field_is_catalog_n0():
    f = fields.irrotational_axisymmetric_field(0)
    x = np.array([1.0, 2.0, 2.0])
    assert np.allclose(f.velocity(x), x / 27.0)


@pytest.mark.parametrize("n", [0, 2, -2])
def test_irrotational_2d_matches_special(n):
    f = fields.irrotational_2d_field(n)
    x = np.array([0.4, 1.1, 7.0])
    assert np.allclose(f.velocity(x)[:2], special.irrotational_2d(n, x[:2]))
    assert f.velocity(x)[2] == 0.0


def test_swirl_matches_clebsch_gamma():
    f = solved_field(4.0, 0.0, 1.0)
    x = X0[0]
    r = np.hypot(x[0], x[1])
    u_phi = f.velocity(x) @ np.array([-x[1], x[0], 0.0]) / r
    assert u_phi == pytest.approx(f.gamma(x) / r, rel=1e-12)


def test_beltrami_factor_and_contract():
    f = solved_field(4.0, 0.0, 1.0)
    x = X0[1]
    lam = fields.beltrami_factor(f, x)
    assert np.allclose(f.curl(x), lam * f.velocity(x), atol=1e-9 * np.linalg.norm(f.curl(x)))
    with pytest.raises(ContractError):
        fields.beltrami_factor(solved_field(4.0, -1.0, 0.0), x)


def test_origin_behaviour():
    neg = solved_field(-3.0, -1.0, 1.0)
    u, p = fields.evaluate(neg, [0.0, 0.0, 0.0])
    assert np.all(u == 0) and p == 0
    with pytest.raises(DomainError):
        solved_field(4.0, 0.0, 1.0).velocity([0.0, 0.0, 0.0])
    with pytest.raises(DomainError):
        neg.jacobian([0.0, 0.0, 0.0])


def test_batch_and_single_shapes():
    f = solved_field(4.0, -1.0, 0.0)
    assert f.velocity(X0[0]).shape == (3,)
    assert f.velocity(X0).shape == (4, 3)
    assert f.jacobian(X0).shape == (4, 3, 3)
    assert f.velocity([0.3, 0.4]).shape == (3,)


def test_builders_check_contracts():
    p, w = solved(4.0, -1.0, 0.0)
    with pytest.raises(ParameterError):
        fields.build_axisymmetric(w, ParamSet.planar(3.0, -1.0, 0.0))
    with pytest.raises(ContractError):
        fields.build_axisymmetric(w.transformed(), p)  # certificate dropped
    with pytest.raises(ContractError):
        fields.build_25d(w, ParamSet.planar(3.0, -1.0, 0.0))
    with pytest.raises(ContractError):
        fields.build_axisymmetric(w, ParamSet.axisymmetric(5.0, -1.0, 0.0))


def test_catalog_profile_arc_is_sine():
    w = fields.catalog_profile(2.0, "arc")
    phi = np.linspace(0.1, 3.0, 7)
    assert np.allclose(w(phi), np.sin(2 * phi))
    with pytest.raises(ParameterError):
        fields.catalog_profile(1.5, "arc")


def test_geodesic_support_and_zero_pressure():
    f = fields.geodesic_field(1 / np.sqrt(2), 1 / np.sqrt(2), -2.0)
    assert f.support([1.0, 0.0, 0.5])[0] and not f.support([0.2, 0.0, 1.0])[0]
    assert np.all(f.pressure(X0) == 0)
    assert np.allclose(f.velocity([1.0, 0.0, 0.0]), [0, -0.25, 0.25])


def test_export_samples(tmp_path):
    f = solved_field(4.0, -1.0, 0.0)
    fields.export_samples(f, X0, tmp_path / "u.csv", tmp_path / "u.json")
    rows = list(csv.reader(open(tmp_path / "u.csv")))
    assert rows[0] == ["x", "y", "z", "u1", "u2", "u3", "p"]
    vals = np.array(rows[1:], dtype=float)
    assert np.array_equal(vals[:, 3:6], f.velocity(X0))  # 17 digits round-trip
    meta = json.load(open(tmp_path / "u.json"))
    assert meta["mode"] == fields.AXISYMMETRIC and meta["alpha"] == 4.0
