"""Level sets {psi = C} of homogeneous stream functions, psi = w / rho^beta.

Inverting the ansatz gives each level set in closed form on the arcs
where w/C > 0: rho(theta) = (w/C)^(1/beta).  Angles run over (0, pi);
the plane is (z, r) for axisymmetric profiles (w evaluated at cos theta)
and (x1, x2) for 2.5D profiles (w evaluated at phi = theta).
"""
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import brentq

from .errors import DomainError, ParameterError
from .profile import INTERVAL

RHO_MAX = 10.0
JORDAN = "JordanCurve"
MULTIFOIL = "Multifoil"
WEDGED = "WedgedCurve"
LINE = "Line"
_POLES = {1: "Dipole", 2: "Quadrupole", 3: "Hexapole", 4: "Octupole"}


@dataclass
class Branch:
    theta: np.ndarray
    rho: np.ndarray
    closed: bool = False       # both ends at the origin
    truncated: bool = False    # cut at RHO_MAX (unbounded branch)

    @property
    def z(self):
        return self.rho * np.cos(self.theta)

    @property
    def r(self):
        return self.rho * np.sin(self.theta)


@dataclass
class Classification:
    kind: str
    lobes: int
    zero_count: int
    pole: str = None

    def __str__(self):
        return self.kind if self.kind != MULTIFOIL else f"{self.kind}({self.lobes})"


@dataclass
class LevelCurve:
    level: float
    beta: float
    branches: list = field(default_factory=list)
    classification: Classification = None

    @property
    def empty(self):
        return not any(b.theta.size for b in self.branches)


def _w_of_theta(w):
    if w.domain == INTERVAL:
        return lambda th: w(np.cos(th))
    return lambda th: w(th)


def _theta_zeros(w):
    z = np.asarray(w.zeros(), dtype=float)
    th = np.arccos(z) if w.domain == INTERVAL else z
    th = np.sort(th[(th > 0) & (th < np.pi)])
    return th


def _arcs(w):
    edges = np.r_[0.0, _theta_zeros(w), np.pi]
    return list(zip(edges[:-1], edges[1:]))


def extract_level_curve(w, beta, C, n_points=200, rho_max=RHO_MAX):
    """Branches of {psi = C}, one per arc of (0, pi) on which w/C > 0."""
    beta, C = float(beta), float(C)
    if beta == 0.0:
        raise ParameterError("beta = 0 has no homogeneous stream function")
    if C == 0.0:
        raise DomainError("C = 0 is the nodal set; use classify")
    f = _w_of_theta(w)
    out = []
    for a, b in _arcs(w):
        mid = 0.5 * (a + b)
        if f(np.array([mid]))[0] / C <= 0.0:
            continue
        if beta > 0:
            th = np.linspace(a, b, n_points)
            g = np.clip(f(th) / C, 0.0, None)
            rho = g ** (1.0 / beta)
            rho[0] = rho[-1] = 0.0
            out.append(Branch(th, rho, closed=True))
            continue
        # beta < 0: rho blows up at the arc ends; keep rho <= rho_max
        target = rho_max ** beta
        g = lambda s: f(np.array([s]))[0] / C - target
        dense = np.linspace(a, b, 2001)[1:-1]
        vals = f(dense) / C - target
        inside = vals > 0
        if not np.any(inside):
            out.append(Branch(np.empty(0), np.empty(0), truncated=True))
            continue
        i0, i1 = np.argmax(inside), len(inside) - 1 - np.argmax(inside[::-1])
        # w vanishes at the arc ends, so g < 0 there
        lo = brentq(g, dense[i0 - 1] if i0 > 0 else a, dense[i0], xtol=1e-15)
        hi = brentq(g, dense[i1], dense[i1 + 1] if i1 + 1 < len(dense) else b, xtol=1e-15)
        th = np.linspace(lo, hi, n_points)
        rho = np.clip(f(th) / C, 0.0, None) ** (1.0 / beta)
        out.append(Branch(th, np.minimum(rho, rho_max), truncated=True))
    return LevelCurve(C, beta, out, classify(w, beta))


def _is_line(w, beta):
    """psi = w/rho^beta depends on one Cartesian coordinate (r or x2) only
    when w(theta) sin(theta)^beta is constant."""
    f = _w_of_theta(w)
    th = np.linspace(0.1, np.pi - 0.1, 41)
    v = f(th) * np.sin(th) ** beta
    return bool(np.ptp(v) <= 1e-8 * np.max(np.abs(v)))


def classify(w, beta):
    beta = float(beta)
    if beta == 0.0:
        raise ParameterError("beta = 0 has no homogeneous stream function")
    k = int(w.zero_count)
    arcs = k + 1
    alpha = beta + (2.0 if w.domain == INTERVAL else 1.0)
    pole = _POLES.get(arcs) if float(alpha).is_integer() else None
    if beta < 0:
        kind = LINE if _is_line(w, beta) else WEDGED
    else:
        kind = JORDAN if k == 0 else MULTIFOIL
    return Classification(kind, arcs, k, pole)


# ------------------------------------------------------------ export

def curves_to_csv(curves, path):
    """Columns level, branch, theta, z, r (17 significant digits)."""
    with open(path, "w") as fh:
        fh.write("level,branch,theta,z,r\n")
        for c in curves:
            for i, b in enumerate(c.branches):
                for th, z, r in zip(b.theta, b.z, b.r):
                    fh.write(f"{c.level:.17g},{i},{th:.17g},{z:.17g},{r:.17g}\n")


def curves_to_svg(curves, path, size=480):
    """Half-plane plot of the branches, one colour per level."""
    pts = [np.c_[b.z, b.r] for c in curves for b in c.branches if b.theta.size]
    ext = max([np.abs(p).max() for p in pts] + [1e-12]) * 1.05
    sc = size / (2.0 * ext)
    palette = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf"]
    lines = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size // 2}" '
             f'viewBox="0 0 {size} {size // 2}">',
             f'<line x1="0" y1="{size // 2}" x2="{size}" y2="{size // 2}" stroke="#999"/>']
    for j, c in enumerate(curves):
        col = palette[j % len(palette)]
        for b in c.branches:
            if not b.theta.size:
                continue
            xy = " ".join(f"{(z + ext) * sc:.3f},{size // 2 - r * sc:.3f}" for z, r in zip(b.z, b.r))
            lines.append(f'<polyline fill="none" stroke="{col}" stroke-width="1.5" '
                         f'data-level="{c.level:g}" points="{xy}"/>')
    lines.append("</svg>")
    with open(path, "w") as fh:
        fh.write("\n".join(lines) + "\n")
