"""ProfileW: a 1D profile on (-1,1) or (0,pi) with its certificate."""
from dataclasses import dataclass, field, replace

import numpy as np

from ._cheb import cgl
from ._reps import TransformedRep

INTERVAL = "interval"
ARC = "arc"

PROFILE_NODES = 129  # odd degree: no CGL node at t = 0
# prime degree (not divisible by 2 or 3): cos(k pi/M) is irrational for 0 < k < M,
# so no arc node falls on a reflection junction j*pi/lobes
ARC_NODES = 127


def profile_nodes(domain, M=None):
    if domain == INTERVAL:
        return cgl(M or PROFILE_NODES)[::-1]
    return 0.5 * np.pi * (cgl(M or ARC_NODES)[::-1] + 1.0)


@dataclass(frozen=True, eq=False)
class ProfileW:
    domain: str
    nodes: np.ndarray
    w: np.ndarray
    dw: np.ndarray
    beta: float
    rep: object = field(repr=False)
    params: object = None
    residual_certificate: float = float("nan")
    zero_count: int = 0
    certified: bool = False
    info: dict = field(default_factory=dict, repr=False)

    @classmethod
    def from_rep(cls, rep, domain, beta, params=None, **kw):
        x = profile_nodes(domain)
        w, w1, _ = rep.derivs(x)
        w[0] = w[-1] = 0.0
        zc = kw.pop("zero_count", None)
        if zc is None:
            zc = count_zeros(rep, domain)
        return cls(domain, x, w, w1, float(beta), rep, params, zero_count=zc, **kw)

    @property
    def bounds(self):
        return (-1.0, 1.0) if self.domain == INTERVAL else (0.0, np.pi)

    def __call__(self, t):
        return self.rep.derivs(t)[0]

    def derivs(self, t):
        return self.rep.derivs(t)

    def chi(self, t):
        if self.domain != INTERVAL:
            raise TypeError("chi is defined for interval profiles only")
        return self.rep.chi(t)

    def zeros(self):
        lo, hi = self.bounds
        z = np.asarray(self.rep.zeros(), dtype=float)
        return z[(z > lo) & (z < hi)]

    def quad(self, n=None):
        t, wt = self.rep.quad() if n is None else self.rep.quad(n)
        lo, hi = self.bounds
        m = (t > lo) & (t < hi)
        return t[m], wt[m]

    def transformed(self, scale=1.0, reflect=False, params=None):
        """Profile of scale * w(+-t); the certificate is not carried over."""
        rep = TransformedRep(self.rep, scale, reflect)
        p = self.params if params is None else params
        return ProfileW.from_rep(rep, self.domain, self.beta, p,
                                 zero_count=self.zero_count)

    def with_certificate(self, res, tol):
        return replace(self, residual_certificate=float(res), certified=bool(res < tol))


def count_zeros(rep, domain):
    lo, hi = (-1.0, 1.0) if domain == INTERVAL else (0.0, np.pi)
    z = np.asarray(rep.zeros(), dtype=float)
    return int(np.sum((z > lo) & (z < hi)))
