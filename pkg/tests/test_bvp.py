import numpy as np
import pytest

from conftest import NONAUTONOMOUS, autonomous, solved
from homeuler import bvp
from homeuler.errors import NoSolutionError, ParameterError
from homeuler.params import ParamSet

# chi(0), chi(pi) from the independent chi-shooting route and the
# functional I of the collocation solution, frozen at build time
FROZEN_NA = {
    (4.0, 0.0, 1.0): (19.113825728571182, 19.113825728580768, 47.91180485777514, 2),
    (4.0, -1.0, 0.0): (6.225180034073159, 6.225180034073057, 10.600175060468315, 2),
    (2.5, -1.0, 0.0): (0.6181932570178681, 0.6181932570178669, 0.45024339182539264, 0),
    (-3.0, 0.0, 1.0): (0.026801863911584678, 0.026801863911588855, -1.667242869624389e-05, 4),
    (-3.0, -1.0, 1.0): (0.4827885258580846, 0.48278852587602095, -0.01784898529179563, 4),
}
# roots of lobes * T(s) = pi by quadrature of the time map
FROZEN_SLOPE = {(0.5, 1.0, 1): 0.8850906397782814, (3.0, 1.0, 4): 85.3465788479835,
                (-3.0, 1.0, 4): 0.2845667225424713}


@pytest.mark.parametrize("case", NONAUTONOMOUS)
def test_pole_values_match_frozen_shooting(case):
    p, w = solved(*case)
    c0, cpi, I, zc = FROZEN_NA[case]
    got = w.chi(np.array([1.0, -1.0]))[0]
    assert got[0] == pytest.approx(c0, rel=1e-7)
    assert got[1] == pytest.approx(cpi, rel=1e-7)
    assert w.zero_count == zc


@pytest.mark.parametrize("case", NONAUTONOMOUS)
def test_functional_matches_frozen(case):
    p, w = solved(*case)
    assert bvp.functional_I(w, p) == pytest.approx(FROZEN_NA[case][2], rel=1e-7, abs=1e-12)


@pytest.mark.parametrize("case", [NONAUTONOMOUS[1], NONAUTONOMOUS[2]])
def test_live_shooting_agrees(case):
    p, w = solved(*case)
    guess = w.chi(np.array([1.0, -1.0]))[0]
    c0, cpi, mismatch = bvp.shoot_chi(p, guess)
    assert c0 == pytest.approx(guess[0], rel=1e-7)
    assert cpi == pytest.approx(guess[1], rel=1e-7)


@pytest.mark.parametrize("case", NONAUTONOMOUS)
def test_certificates(case):
    p, w = solved(*case)
    assert w.certified
    assert w.residual_certificate < 1e-8
    assert w.info["refined_residual"] < 1e-6
    assert bvp.residual_ode(w, p) == pytest.approx(w.residual_certificate)


@pytest.mark.parametrize("n", range(1, 6))
def test_linear_profiles_certify(n):
    p = ParamSet.linear(n)
    w = bvp.solve_nonautonomous(p)
    assert w.certified and w.residual_certificate < 1e-12
    assert w.info["method"] == "linear"


def test_linear_profile_rejects_non_integer():
    with pytest.raises(ParameterError):
        bvp.linear_profile(1.5)
    with pytest.raises(ParameterError):
        bvp.linear_profile(-1.0)


def test_positive_branch_only_for_small_beta():
    with pytest.raises(ParameterError):
        bvp.solve_nonautonomous(ParamSet.axisymmetric(4.0, -1.0, 0.0), branch="positive")
    with pytest.raises(ParameterError):
        bvp.solve_nonautonomous(ParamSet.axisymmetric(4.0, -1.0, 0.0), branch="nope")


def test_planar_params_rejected_by_axisymmetric_solver():
    with pytest.raises(ParameterError):
        bvp.solve_nonautonomous(ParamSet.planar(3.0, -1.0, 0.0))


def test_residual_detects_wrong_profile():
    p, w = solved(4.0, -1.0, 0.0)
    assert bvp.residual_ode(w.transformed(scale=1.1), p) > 1e-3


@pytest.mark.parametrize("case", sorted(FROZEN_SLOPE))
def test_autonomous_slope_frozen(case):
    w = autonomous(*case)
    assert w.info["s_shoot"] == pytest.approx(FROZEN_SLOPE[case], rel=1e-9)
    assert w.info["s_colloc"] == pytest.approx(FROZEN_SLOPE[case], rel=1e-8)
    assert w.certified
    assert w.zero_count == case[2] - 1


@pytest.mark.parametrize("case", sorted(FROZEN_SLOPE))
def test_autonomous_energy_and_period(case):
    w = autonomous(*case)
    s = w.info["s_shoot"]
    assert w.info["energy_drift"] <= 1e-9 * max(1.0, 0.5 * s * s)
    assert w.info["half_period"] == pytest.approx(np.pi / case[2], rel=1e-10)


def test_autonomous_odd_reflection():
    w = autonomous(3.0, 1.0, 4)
    phi = np.linspace(0.05, np.pi / 4 - 0.05, 9)
    # consecutive arches are mirror images with opposite sign
    assert np.allclose(w(np.pi / 2 - phi), -w(phi), atol=1e-8 * np.abs(w(phi)).max())


def test_time_map_limits():
    lo, hi = bvp.time_map_range(2.0)
    assert lo == 0.0 and hi == pytest.approx(np.pi / 2)
    # small slopes feel only the linear part: T -> pi/|beta|
    assert bvp.time_map(1e-6, 2.0, 1.0) == pytest.approx(np.pi / 2, rel=1e-3)


def test_autonomous_no_solution_outside_range():
    with pytest.raises(NoSolutionError):
        bvp.solve_autonomous(3.0, 1.0, lobes=2)
    with pytest.raises(ParameterError):
        bvp.solve_autonomous(-1.0, 1.0)
    with pytest.raises(ParameterError):
        bvp.solve_autonomous(2.0, -1.0)


@pytest.mark.parametrize("c", [0.5, 4.0 / 3.0])
def test_large_amplitude_arch_certifies(c):
    # w'' = 0 at every zero; the end polish keeps the refined grid honest there
    w = bvp.solve_autonomous(3.0, c, 4)
    assert w.certified and w.info["refined_residual"] < 1e-6
    phi = np.pi / 4 + np.array([0.0, 1e-9, 1e-6, 1e-4])
    assert np.abs(bvp.residual_values(w, phi)).max() < 1e-6
