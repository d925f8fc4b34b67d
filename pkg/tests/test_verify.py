import numpy as np
import pytest

from conftest import solved, solved_field
from homeuler import fields, verify
from homeuler.errors import ContractError, ParameterError


class _Scaled(fields.HomogeneousField):
    """u scaled by k while p is left alone: no longer an Euler flow."""

    def __init__(self, base, k):
        super().__init__(base.alpha)
        self.base, self.k = base, k

    def _core(self, X):
        return {"u": self.k * self.base.velocity(X), "J": self.k * self.base.jacobian(X),
                "p": self.base.pressure(X), "gp": self.base.grad_pressure(X)}


def test_sample_points_region_and_determinism():
    X = verify.sample_points(200, seed=3)
    rho = np.linalg.norm(X, axis=1)
    assert X.shape == (200, 3)
    assert rho.min() >= 0.1 and rho.max() <= 10.0
    assert np.hypot(X[:, 0], X[:, 1]).min() >= 1e-3
    assert np.array_equal(X, verify.sample_points(200, seed=3))
    assert not np.array_equal(X, verify.sample_points(200, seed=4))


def test_euler_residual_passes_and_has_components(pts):
    rep = verify.euler_residual(solved_field(4.0, -1.0, 0.0), pts)
    assert rep.passed and rep.samples == len(pts)
    assert set(rep.components) == {"r", "phi", "z", "divergence"}
    d = rep.to_dict()
    assert d["passed"] and d["name"] == "euler"


def test_euler_residual_catches_wrong_field(pts):
    rep = verify.euler_residual(_Scaled(solved_field(4.0, -1.0, 0.0), 1.01), pts)
    assert not rep.passed and rep.max_rel > 1e-3


def test_grad_shafranov_and_ode_link():
    p, w = solved(4.0, -1.0, 0.0)
    Z = np.array([[0.3, 0.5], [-1.0, 2.0], [4.0, 0.1]])
    rep = verify.grad_shafranov_residual(w, p, Z)
    assert rep.passed
    assert rep.components["ode_link"] < 1e-8
    with pytest.raises(ContractError):
        verify.grad_shafranov_residual(w, p, [[0.3, 0.0]])


def test_grad_shafranov_catches_wrong_constants():
    p, w = solved(4.0, -1.0, 0.0)
    rep = verify.grad_shafranov_residual(w, type(p).axisymmetric(4.0, -1.5, 0.0), [[0.3, 0.5], [1.0, 1.0]])
    assert not rep.passed


@pytest.mark.parametrize("alpha", [3, 4, 5, -1, -2, 0])
def test_sphere_system_on_zonal_harmonics(alpha):
    sp = verify.SphereProfile.from_zonal_harmonic(alpha)
    assert verify.sphere_equations_residual(sp, alpha).max_rel < 1e-12


def test_sphere_system_rejects_wrong_alpha():
    sp = verify.SphereProfile.from_zonal_harmonic(4)
    assert not verify.sphere_equations_residual(sp, 4.5).passed
    with pytest.raises(ParameterError):
        verify.SphereProfile.from_zonal_harmonic(2.5)


def test_homogeneity_check_detects_wrong_alpha(pts):
    f = solved_field(-3.0, 0.0, 1.0)
    assert verify.homogeneity_check(f, pts[:20]).passed
    f.alpha += 0.01
    try:
        assert not verify.homogeneity_check(f, pts[:20]).passed
    finally:
        f.alpha -= 0.01


def test_first_integrals_include_zeta_without_swirl(pts):
    rep = verify.first_integral_check(solved_field(4.0, -1.0, 0.0), pts)
    assert "zeta" in rep.components and rep.passed
    rep = verify.first_integral_check(solved_field(4.0, 0.0, 1.0), pts)
    assert "zeta" not in rep.components and rep.passed
    with pytest.raises(ContractError):
        verify.first_integral_check(fields.circular_field(1.0, 2.0), pts)


def test_curl_phi_check():
    assert verify.curl_phi_check(solved_field(4.0, -1.0, 0.0)).max_rel < 1e-10
    assert verify.curl_phi_check(fields.irrotational_axisymmetric_field(2)).passed


@pytest.mark.parametrize("case", [(-3.0, 0.0, 1.0), (-3.0, -1.0, 1.0)])
def test_weak_form_across_axis(case):
    rep = verify.weak_form_check(solved_field(*case), n_tests=6)
    assert rep.passed and rep.samples == 12


def test_weak_form_catches_wrong_field():
    rep = verify.weak_form_check(_Scaled(solved_field(-3.0, -1.0, 1.0), 1.05), n_tests=6)
    assert not rep.passed
