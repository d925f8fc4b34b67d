"""Continuous representations behind a ProfileW.

Every representation answers ``derivs(t) -> (w, w', w'')`` on its domain;
interval representations also answer ``chi(t) -> (chi, chi_t)`` with
chi = w/(1-t^2) evaluated without cancellation at the endpoints.
"""
from fractions import Fraction

import numpy as np
from numpy.polynomial import chebyshev as C
from numpy.polynomial import polynomial as P
from numpy.polynomial.legendre import leggauss
from scipy.optimize import brentq
from scipy.special import betainc, betaincinv, beta as beta_fn

from ._cheb import cgl, cgl_coeffs


def _arr(t):
    return np.atleast_1d(np.asarray(t, dtype=float))


def sign_change_zeros(f, lo, hi, n=4001):
    """Interior roots of f located by sign changes on a uniform sample."""
    x = np.linspace(lo, hi, n)[1:-1]
    y = f(x)
    roots = []
    for i in np.nonzero(np.sign(y[:-1]) * np.sign(y[1:]) < 0)[0]:
        roots.append(brentq(lambda v: float(f(np.array([v]))[0]), x[i], x[i + 1], xtol=1e-15, rtol=1e-15))
    for i in np.nonzero(y == 0.0)[0]:
        roots.append(x[i])
    return np.array(sorted(roots))


class PolyRep:
    """Monomial-basis polynomial on [-1, 1], optionally with exact coefficients."""
    domain = (-1.0, 1.0)

    def __init__(self, coeffs, exact=None):
        self.exact = exact
        self.c = np.asarray([float(v) for v in coeffs])
        self.c1 = P.polyder(self.c)
        self.c2 = P.polyder(self.c, 2)
        chi, rem = P.polydiv(self.c, [1.0, 0.0, -1.0])
        if exact is not None:
            chi = _exact_div(exact)
        self.chi_c = np.asarray([float(v) for v in np.atleast_1d(chi)])
        self.chi_c1 = P.polyder(self.chi_c)

    @classmethod
    def from_chi(cls, chi_coeffs):
        """w = (1 - t^2) q for a polynomial q (exact chi = q)."""
        q = np.asarray(chi_coeffs, dtype=float)
        rep = cls(P.polymul(q, [1.0, 0.0, -1.0]))
        rep.chi_c = q
        rep.chi_c1 = P.polyder(q)
        return rep

    def derivs(self, t):
        t = _arr(t)
        return P.polyval(t, self.c), P.polyval(t, self.c1), P.polyval(t, self.c2)

    def chi(self, t):
        t = _arr(t)
        return P.polyval(t, self.chi_c), P.polyval(t, self.chi_c1)

    def zeros(self):
        # negligible top coefficients would send spurious roots to infinity
        c = P.polytrim(self.c, tol=1e-14 * np.abs(self.c).max(initial=0.0))
        r = np.roots(c[::-1]) if c.size > 1 else np.array([])
        r = np.real(r[np.abs(np.imag(r)) < 1e-10])
        return np.array(sorted(v for v in r if -1 + 1e-12 < v < 1 - 1e-12))

    def quad(self, n=200):
        return leggauss(n)

    def transformed(self, scale=1.0, reflect=False):
        c = self.c * scale
        if reflect:
            c = c * (-1.0) ** np.arange(c.size)
        out = PolyRep(c)
        out.chi_c = self.chi_c * scale * ((-1.0) ** np.arange(self.chi_c.size) if reflect else 1.0)
        out.chi_c1 = P.polyder(out.chi_c)
        return out


def _exact_div(coeffs):
    """Exact quotient by (1 - t^2) for Fraction coefficients (ascending)."""
    a = [Fraction(v) for v in coeffs]
    n = len(a) - 1
    if n < 2:
        return [Fraction(0)]
    q = [Fraction(0)] * (n - 1)
    # a = (1 - t^2) q  ->  a_k = q_k - q_{k-2}; solve from the top
    for k in range(n, 1, -1):
        q[k - 2] = -(a[k] - (q[k] if k < n - 1 else 0))
    return q


class ChebRep:
    """Global Chebyshev interpolant through CGL node values on [lo, hi]."""

    def __init__(self, values, lo=-1.0, hi=1.0):
        self.domain = (float(lo), float(hi))
        self.values = np.asarray(values, dtype=float)
        self.M = self.values.size - 1
        self.c = cgl_coeffs(self.values)
        self.d1 = C.chebder(self.c)
        self.d2 = C.chebder(self.c, 2)
        self._chi = None

    def _x(self, t):
        lo, hi = self.domain
        return (2.0 * _arr(t) - (lo + hi)) / (hi - lo), 2.0 / (hi - lo)

    def derivs(self, t):
        x, s = self._x(t)
        return C.chebval(x, self.c), s * C.chebval(x, self.d1), s * s * C.chebval(x, self.d2)

    def chi(self, t):
        if self._chi is None:
            x = cgl(self.M)
            with np.errstate(divide="ignore", invalid="ignore"):
                v = self.values / (1.0 - x * x)
            d = C.chebval(np.array([1.0, -1.0]), self.d1)
            v[0], v[-1] = -d[0] / 2.0, d[1] / 2.0
            cc = cgl_coeffs(v)
            self._chi = (cc, C.chebder(cc))
        x = _arr(t)
        return C.chebval(x, self._chi[0]), C.chebval(x, self._chi[1])

    def zeros(self):
        lo, hi = self.domain
        return sign_change_zeros(lambda s: self.derivs(s)[0], lo, hi)

    def quad(self, n=None):
        n = n or max(2 * self.M + 4, 200)
        g, gw = leggauss(n)
        lo, hi = self.domain
        return 0.5 * (hi - lo) * g + 0.5 * (hi + lo), 0.5 * (hi - lo) * gw


_NEAR_END = 2e-2


def _end_ratio(e, o, q, B):
    """phi/x_y expressed through the end-side variable e and the opposite
    one o = 1 - e; regular as e -> 0."""
    with np.errstate(divide="ignore", invalid="ignore"):
        r = np.where(e > 0, betainc(q, q, e) / e ** (q - 1), 0.0)
    return r * betainc(q, q, o) * B / o ** (q - 1)


class PiecewiseRep:
    """Zero-aligned mapped collocation profile: on each piece [a, b],
    w = (t-a)(b-t)/(b-a) * u(y) with t = a + (b-a) I_y(q, q) and u a
    Chebyshev series in s = 2y-1."""

    def __init__(self, bnds, coeffs, q, is_interval=True):
        self.bnds = np.asarray(bnds, dtype=float)
        self.coeffs = [np.asarray(c, dtype=float) for c in coeffs]
        self.q = float(q)
        self.domain = (self.bnds[0], self.bnds[-1])
        self.is_interval = is_interval
        self._B = beta_fn(self.q, self.q)
        self._der = [(C.chebder(c), C.chebder(c, 2)) for c in self.coeffs]
        self._defl = {}

    def _locate(self, t):
        k = np.searchsorted(self.bnds, t, side="right") - 1
        return np.clip(k, 0, len(self.coeffs) - 1)

    def _ymap(self, xl, xr, h):
        q = self.q
        if q == 1.0:
            y = xl / h
            return y, xr / h
        left = xl <= xr
        y = np.empty_like(xl)
        yb = np.empty_like(xl)
        y[left] = betaincinv(q, q, np.clip(xl[left] / h, 0, 1))
        yb[left] = 1.0 - y[left]
        yb[~left] = betaincinv(q, q, np.clip(xr[~left] / h, 0, 1))
        y[~left] = 1.0 - yb[~left]
        return y, yb

    def _deflated(self, k):
        """Quotients of u_y by (1+s)^(q-1) and (1-s)^(q-1); they give
        u_t = u_y/x_y without cancellation next to the piece ends."""
        if k not in self._defl:
            q = int(round(self.q))
            uy = 2.0 * self._der[k][0]
            ql = C.chebdiv(uy, C.chebpow([1.0, 1.0], q - 1))[0]
            qr = C.chebdiv(uy, C.chebpow([1.0, -1.0], q - 1))[0]
            self._defl[k] = (ql, C.chebder(ql), qr, C.chebder(qr))
        return self._defl[k]

    def _local(self, t, k):
        """u, u_t, phi*u_tt and the geometry for points t inside piece k."""
        a, b = self.bnds[k], self.bnds[k + 1]
        h = b - a
        xl, xr = t - a, b - t
        y, yb = self._ymap(xl, xr, h)
        s = y - yb
        c = self.coeffs[k]
        d1, d2 = self._der[k]
        u = C.chebval(s, c)
        uy = 2.0 * C.chebval(s, d1)
        uyy = 4.0 * C.chebval(s, d2)
        q = self.q
        phi = xl * xr / h
        with np.errstate(divide="ignore", invalid="ignore"):
            xy = h * y ** (q - 1) * yb ** (q - 1) / self._B
            ratio = (q - 1) * (1.0 / y - 1.0 / yb) if q != 1.0 else 0.0
            ut = uy / xy
            putt = phi * (uyy - ratio * uy) / (xy * xy)
            near = np.minimum(y, yb) < _NEAR_END
            if q > 1.0 and np.any(near):
                ql, dql, qr, dqr = self._deflated(k)
                K = 2.0 ** (q - 1) * self._B / h
                for left, qq, dqq in ((True, ql, dql), (False, qr, dqr)):
                    m = near & ((y <= yb) if left else (y > yb))
                    if not np.any(m):
                        continue
                    ss = s[m]
                    # e: distance-side variable, o: opposite side
                    e, o = (y[m], yb[m]) if left else (yb[m], y[m])
                    Q, dQ = C.chebval(ss, qq), 2.0 * C.chebval(ss, dqq)
                    sg = 1.0 if left else -1.0
                    ut[m] = K * Q / o ** (q - 1)
                    vy = K * (dQ / o ** (q - 1) + sg * (q - 1) * Q / o ** q)
                    putt[m] = _end_ratio(e, o, q, self._B) * vy
        return u, ut, putt, xl, xr, h

    def derivs(self, t):
        t = _arr(t)
        w = np.zeros_like(t)
        w1 = np.zeros_like(t)
        w2 = np.zeros_like(t)
        ks = self._locate(t)
        for k in np.unique(ks):
            m = ks == k
            u, ut, putt, xl, xr, h = self._local(t[m], k)
            phi = xl * xr / h
            p1 = (xr - xl) / h
            zero = phi == 0.0
            with np.errstate(invalid="ignore"):
                w[m] = phi * u
                w1[m] = p1 * u + np.where(zero, 0.0, phi * ut)
                w2[m] = -2.0 / h * u + 2.0 * p1 * ut + np.where(zero, 0.0, putt)
        return w, w1, w2

    def chi(self, t):
        t = _arr(t)
        chi = np.zeros_like(t)
        chit = np.zeros_like(t)
        ks = self._locate(t)
        last = len(self.coeffs) - 1
        for k in np.unique(ks):
            m = ks == k
            tt = t[m]
            u, ut, utt, xl, xr, h = self._local(tt, k)
            a, b = self.bnds[k], self.bnds[k + 1]
            if k == 0 and k == last:
                g = np.full_like(tt, 1.0 / h)
                gp = np.zeros_like(tt)
            elif k == 0:
                g = xr / (h * (1.0 - tt))
                gp = (b - 1.0) / (h * (1.0 - tt) ** 2)
            elif k == last:
                g = xl / (h * (1.0 + tt))
                gp = (1.0 + a) / (h * (1.0 + tt) ** 2)
            else:
                omt = 1.0 - tt * tt
                phi = xl * xr / h
                g = phi / omt
                gp = ((xr - xl) / h * omt + 2.0 * tt * phi) / omt ** 2
            chi[m] = g * u
            with np.errstate(invalid="ignore"):
                chit[m] = gp * u + np.where(g == 0.0, 0.0, g * ut)
        return chi, chit

    def zeros(self):
        z = list(self.bnds[1:-1])
        for k in range(len(self.coeffs)):
            a, b = self.bnds[k], self.bnds[k + 1]
            # sign changes of u inside a piece (normally none)
            s = np.linspace(-1, 1, 801)
            v = C.chebval(s, self.coeffs[k])
            for i in np.nonzero(np.sign(v[:-1]) * np.sign(v[1:]) < 0)[0]:
                sr = brentq(lambda x: C.chebval(x, self.coeffs[k]), s[i], s[i + 1], xtol=1e-15)
                y = (sr + 1) / 2
                z.append(a + (b - a) * betainc(self.q, self.q, y))
        return np.array(sorted(z))

    def quad(self, n=64):
        g, gw = leggauss(n)
        y = 0.5 * (g + 1.0)
        m = betainc(self.q, self.q, y)
        mp = y ** (self.q - 1) * (1 - y) ** (self.q - 1) / self._B
        ts, ws = [], []
        for k in range(len(self.coeffs)):
            a, b = self.bnds[k], self.bnds[k + 1]
            ts.append(a + (b - a) * m)
            ws.append(0.5 * gw * (b - a) * mp)
        return np.concatenate(ts), np.concatenate(ws)


class OddArcRep:
    """Profile on [-pi, pi] built from one arch on [0, T], T = pi/lobes,
    by odd reflection across each zero and odd extension to negative phi."""
    domain = (-np.pi, np.pi)

    def __init__(self, arch, lobes):
        self.arch = arch
        self.lobes = int(lobes)
        self.T = np.pi / self.lobes

    def derivs(self, t):
        t = _arr(t)
        sgn_ext = np.where(t < 0, -1.0, 1.0)
        x = np.abs(t)
        k = np.clip(np.floor(x / self.T), 0, self.lobes - 1)
        loc = np.clip(x - k * self.T, 0.0, self.T)
        s = (-1.0) ** k
        w, w1, w2 = self.arch.derivs(loc)
        return sgn_ext * s * w, s * w1, sgn_ext * s * w2

    def zeros(self):
        return self.T * np.arange(1, self.lobes)

    def quad(self, n=64):
        t, wt = self.arch.quad(n)
        ts = np.concatenate([t + k * self.T for k in range(self.lobes)])
        return ts, np.tile(wt, self.lobes)


class SineRep:
    """amp * sin(n phi) on [-pi, pi]."""
    domain = (-np.pi, np.pi)

    def __init__(self, n, amp=1.0):
        self.n = n
        self.amp = amp

    def derivs(self, t):
        t = _arr(t)
        n, a = self.n, self.amp
        return a * np.sin(n * t), a * n * np.cos(n * t), -a * n * n * np.sin(n * t)

    def zeros(self):
        n = abs(self.n)
        return np.pi * np.arange(1, n) / n

    def quad(self, n=200):
        g, gw = leggauss(n)
        return 0.5 * np.pi * (g + 1.0), 0.5 * np.pi * gw


class TransformedRep:
    """scale * base(-t if reflect else t)."""

    def __init__(self, base, scale=1.0, reflect=False):
        self.base = base
        self.scale = scale
        self.reflect = reflect
        self.domain = base.domain

    def derivs(self, t):
        t = _arr(t)
        if not self.reflect:
            w, w1, w2 = self.base.derivs(t)
            return self.scale * w, self.scale * w1, self.scale * w2
        w, w1, w2 = self.base.derivs(-t)
        return self.scale * w, -self.scale * w1, self.scale * w2

    def chi(self, t):
        t = _arr(t)
        if not self.reflect:
            c, ct = self.base.chi(t)
            return self.scale * c, self.scale * ct
        c, ct = self.base.chi(-t)
        return self.scale * c, -self.scale * ct

    def zeros(self):
        z = self.base.zeros()
        return np.sort(-z) if self.reflect else z

    def quad(self, n=None):
        t, w = self.base.quad() if n is None else self.base.quad(n)
        return (-t, w) if self.reflect else (t, w)


class ComboRep:
    """sum_k a_k * rep_k over a shared domain."""

    def __init__(self, reps, coefs):
        self.reps = list(reps)
        self.coefs = [float(c) for c in coefs]
        self.domain = self.reps[0].domain

    def derivs(self, t):
        t = _arr(t)
        out = [np.zeros_like(t) for _ in range(3)]
        for r, a in zip(self.reps, self.coefs):
            for o, v in zip(out, r.derivs(t)):
                o += a * v
        return tuple(out)

    def chi(self, t):
        t = _arr(t)
        out = [np.zeros_like(t), np.zeros_like(t)]
        for r, a in zip(self.reps, self.coefs):
            for o, v in zip(out, r.chi(t)):
                o += a * v
        return tuple(out)

    def zeros(self):
        lo, hi = self.domain
        return sign_change_zeros(lambda s: self.derivs(s)[0], lo, hi)

    def quad(self, n=None):
        return self.reps[0].quad() if n is None else self.reps[0].quad(n)


class HermiteRep:
    """Cubic Hermite interpolant through tabulated (t, w, w'), e.g. a profile
    read back from CSV.  No chi: tabulated data carry no end behaviour."""

    def __init__(self, t, w, dw):
        from scipy.interpolate import CubicHermiteSpline
        self._s = CubicHermiteSpline(t, w, dw)
        self.domain = (float(t[0]), float(t[-1]))

    def derivs(self, t):
        t = _arr(t)
        return self._s(t), self._s(t, 1), self._s(t, 2)

    def zeros(self):
        lo, hi = self.domain
        return sign_change_zeros(lambda s: self._s(s), lo, hi)

    def quad(self, n=200):
        lo, hi = self.domain
        g, gw = leggauss(n)
        return lo + 0.5 * (hi - lo) * (g + 1.0), 0.5 * (hi - lo) * gw
