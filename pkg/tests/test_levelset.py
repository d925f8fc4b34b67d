import csv

import numpy as np
import pytest

from conftest import solved
from homeuler import fields, levelset
from homeuler.errors import DomainError, ParameterError


def _psi_on(branch, w, beta, interval=True):
    # interior samples only: closed branches end at the origin
    th, rho = branch.theta[1:-1], branch.rho[1:-1]
    t = np.cos(th) if interval else th
    return w(t) / rho ** beta


@pytest.mark.parametrize("beta", [1.0, 2.0, 3.0])
def test_closed_branches_lie_on_level(beta):
    w = fields.catalog_profile(beta)
    C = 0.05
    c = levelset.extract_level_curve(w, beta, C, n_points=50)
    assert c.branches and not c.empty
    for b in c.branches:
        assert b.closed and b.rho[0] == 0 and b.rho[-1] == 0
        assert np.allclose(_psi_on(b, w, beta), C, rtol=1e-10)


def test_negative_level_picks_other_arcs():
    w = fields.catalog_profile(2.0)
    pos = levelset.extract_level_curve(w, 2.0, 0.05)
    neg = levelset.extract_level_curve(w, 2.0, -0.05)
    # w_3 = t(1 - t^2)/2: one interior zero, one arc of each sign
    assert len(pos.branches) == len(neg.branches) == 1
    assert np.all(pos.branches[0].z[1:-1] > 0) and np.all(neg.branches[0].z[1:-1] < 0)


def test_unbounded_branches_truncated():
    w = fields.catalog_profile(-3.0)
    c = levelset.extract_level_curve(w, -3.0, 0.1, n_points=40)
    for b in c.branches:
        assert b.truncated
        assert b.rho.max() <= levelset.RHO_MAX * (1 + 1e-12)
        assert np.allclose(_psi_on(b, w, -3.0), 0.1, rtol=1e-8)


def test_level_errors():
    w = fields.catalog_profile(1.0)
    with pytest.raises(DomainError):
        levelset.extract_level_curve(w, 1.0, 0.0)
    with pytest.raises(ParameterError):
        levelset.classify(w, 0.0)


def test_line_versus_wedge():
    # alpha = 0 gives w_2 with beta = -2: psi = r^2/2, a line
    assert levelset.classify(fields.catalog_profile(-2.0), -2.0).kind == levelset.LINE
    assert levelset.classify(fields.catalog_profile(-3.0), -3.0).kind == levelset.WEDGED


def test_classification_str():
    c = levelset.classify(fields.catalog_profile(3.0), 3.0)
    assert str(c) == "Multifoil(3)" and c.pole == "Hexapole"


def test_solved_sign_changing_profile_is_multifoil():
    p, w = solved(4.0, -1.0, 0.0)
    c = levelset.classify(w, p.beta)
    assert c.kind == levelset.MULTIFOIL
    assert c.lobes == w.zero_count + 1 == 3


def test_arc_profile_curve():
    w = fields.catalog_profile(2.0, "arc")
    c = levelset.extract_level_curve(w, 2.0, 0.1)
    for b in c.branches:
        assert np.allclose(_psi_on(b, w, 2.0, interval=False), 0.1, rtol=1e-10)


def test_csv_and_svg(tmp_path):
    w = fields.catalog_profile(1.0)
    curves = [levelset.extract_level_curve(w, 1.0, C, n_points=20) for C in (0.1, 0.2)]
    levelset.curves_to_csv(curves, tmp_path / "c.csv")
    levelset.curves_to_svg(curves, tmp_path / "c.svg")
    rows = list(csv.reader(open(tmp_path / "c.csv")))
    assert rows[0] == ["level", "branch", "theta", "z", "r"]
    assert len(rows) == 41
    svg = (tmp_path / "c.svg").read_text()
    assert svg.startswith("<svg") and svg.count("<polyline") == 2
