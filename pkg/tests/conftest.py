import functools

import numpy as np
import pytest

from homeuler import bvp, fields, verify
from homeuler.params import ParamSet

NONAUTONOMOUS = [(4.0, 0.0, 1.0), (4.0, -1.0, 0.0), (2.5, -1.0, 0.0),
                 (-3.0, 0.0, 1.0), (-3.0, -1.0, 1.0)]
AUTONOMOUS = [(0.5, 1.0, 1), (3.0, 1.0, 4), (-3.0, 1.0, 4)]


def branch_of(alpha):
    return "positive" if 0.0 < alpha - 2.0 < 1.0 else "default"


@functools.lru_cache(maxsize=None)
def solved(alpha, C1, C2):
    p = ParamSet.axisymmetric(alpha, C1, C2)
    w = bvp.solve_nonautonomous(p, branch=branch_of(alpha))
    return p, w


@functools.lru_cache(maxsize=None)
def solved_field(alpha, C1, C2):
    p, w = solved(alpha, C1, C2)
    return fields.build_axisymmetric(w, p)


@functools.lru_cache(maxsize=None)
def autonomous(beta, c, lobes):
    return bvp.solve_autonomous(beta, c, lobes)


@functools.lru_cache(maxsize=None)
def points(n=100, seed=0):
    return verify.sample_points(n, seed)


@pytest.fixture(scope="session")
def pts():
    return points()


@pytest.fixture(params=NONAUTONOMOUS, ids=lambda c: "a{}_C1{}_C2{}".format(*c))
def na_case(request):
    return request.param


@pytest.fixture(params=AUTONOMOUS, ids=lambda c: "b{}_c{}_k{}".format(*c))
def auto_case(request):
    return request.param


@pytest.fixture
def rng():
    return np.random.default_rng(12345)
