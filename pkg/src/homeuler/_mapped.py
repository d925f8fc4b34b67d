"""Zero-aligned piecewise collocation for w'' + F(t, w) = 0 with w = 0 at
every breakpoint.

On a piece [a, b] write w = phi(t) u(t), phi = (t-a)(b-t)/(b-a), and
t = a + (b-a) I_y(q, q) with the regularized incomplete beta function;
the map clusters nodes like y^q at both ends, which turns the algebraic
end behaviour |t-a|^(k/q) of the nonlinearity into a smooth function of y.
Dividing by phi gives a regular equation for u collocated at first-kind
Chebyshev nodes in y.  Interior breakpoints are unknowns, closed by
continuity of w' (w and w'' vanish there automatically).
"""
import numpy as np
from scipy.special import betainc, beta as beta_fn

from ._cheb import gauss_cheb_nodes, gauss_coeffs
from ._reps import PiecewiseRep


def _bary_weights_first_kind(n):
    th = (2 * np.arange(n) + 1) * np.pi / (2 * n)
    return (-1.0) ** np.arange(n) * np.sin(th)


def _diffmat(y, wb):
    d = y[:, None] - y[None, :]
    np.fill_diagonal(d, 1.0)
    D = (wb[None, :] / wb[:, None]) / d
    np.fill_diagonal(D, 0.0)
    np.fill_diagonal(D, -D.sum(axis=1))
    return D


def _end_row(y, wb, y0):
    c = wb / (y0 - y)
    return c / c.sum()


class MappedCollocation:
    def __init__(self, eq, q, N, interval=True):
        self.eq = eq
        self.q = float(q)
        self.N = int(N)
        self.interval = interval
        self.y = 0.5 * (gauss_cheb_nodes(self.N) + 1.0)
        wb = _bary_weights_first_kind(self.N)
        self.D1 = _diffmat(self.y, wb)
        self.D2 = self.D1 @ self.D1
        self.r0 = _end_row(self.y, wb, 0.0)
        self.r1 = _end_row(self.y, wb, 1.0)
        q, y = self.q, self.y
        B = beta_fn(q, q)
        self.ml = betainc(q, q, y)
        self.mr = betainc(q, q, 1.0 - y)
        self.mp = y ** (q - 1) * (1 - y) ** (q - 1) / B
        self.ratio = (q - 1) * (1.0 / y - 1.0 / (1.0 - y))

    def nodes(self, a, b):
        return a + (b - a) * self.ml

    def _piece(self, u, a, b, lo, hi):
        h = b - a
        xl, xr = h * self.ml, h * self.mr
        t = a + xl
        phi = xl * xr / h
        xy = h * self.mp
        omt2 = ((hi - b) + xr) * ((a - lo) + xl) if self.interval else None
        G, dG = self.eq.g_over_phi(u, phi, t, omt2)
        A = 2.0 * xy * (xr - xl) / (xl * xr) - self.ratio
        V = -2.0 / (xl * xr)
        E = self.D2 @ u + A * (self.D1 @ u) + xy ** 2 * (V * u + G)
        J = self.D2 + A[:, None] * self.D1 + np.diag(xy ** 2 * (V + dG))
        return E, J

    def residual(self, U, tau, lo, hi, jac=True):
        P = len(U)
        bnds = np.r_[lo, tau, hi]
        Es, Js = [], []
        for k in range(P):
            E, J = self._piece(U[k], bnds[k], bnds[k + 1], lo, hi)
            Es.append(E)
            Js.append(J)
        match = np.array([self.r1 @ U[k] + self.r0 @ U[k + 1] for k in range(P - 1)])
        return Es, Js, match

    def _full(self, U, tau, lo, hi):
        Es, Js, mt = self.residual(U, tau, lo, hi)
        return np.r_[np.concatenate(Es), mt], Es, Js

    def solve(self, U, tau, lo, hi, iters=60):
        """Damped Newton in (U, tau); returns (U, tau, max scaled residual)."""
        U = [np.array(u, dtype=float) for u in U]
        tau = np.array(tau, dtype=float)
        P, N, K = len(U), self.N, len(U) - 1
        n = P * N + K
        F, Es, Js = self._full(U, tau, lo, hi)
        f0 = np.abs(F).max()
        for _ in range(iters):
            J = np.zeros((n, n))
            for k in range(P):
                J[k * N:(k + 1) * N, k * N:(k + 1) * N] = Js[k]
            bnds = np.r_[lo, tau, hi]
            for k in range(K):
                J[P * N + k, k * N:(k + 1) * N] = self.r1
                J[P * N + k, (k + 1) * N:(k + 2) * N] = self.r0
                d = 1e-7 * max(1.0, abs(tau[k]))
                for j in (k, k + 1):
                    a, b = bnds[j], bnds[j + 1]
                    a2 = a + d if j == k + 1 else a
                    b2 = b + d if j == k else b
                    Ep, _ = self._piece(U[j], a2, b2, lo, hi)
                    J[j * N:(j + 1) * N, P * N + k] = (Ep - Es[j]) / d
            with np.errstate(all="ignore"):
                dx = np.linalg.solve(J, -F)
            if not np.all(np.isfinite(dx)):
                break
            lam = 1.0
            while lam > 1e-4:
                Un = [U[k] + lam * dx[k * N:(k + 1) * N] for k in range(P)]
                tn = tau + lam * dx[P * N:]
                if np.all(np.diff(np.r_[lo, tn, hi]) > 0):
                    with np.errstate(all="ignore"):
                        Fn, Esn, Jsn = self._full(Un, tn, lo, hi)
                    f1 = np.abs(Fn).max()
                    if np.isfinite(f1) and f1 < (1 - 1e-4 * lam) * f0:
                        break
                lam *= 0.5
            else:
                break
            U, tau, F, Es, Js, f0 = Un, tn, Fn, Esn, Jsn, f1
            scale = max(1.0, max(np.abs(u).max() for u in U))
            if np.abs(lam * dx).max() < 1e-14 * scale or f0 < 1e-15 * scale:
                break
        return U, tau, f0

    def to_rep(self, U, tau, lo, hi):
        bnds = np.r_[lo, tau, hi]
        return PiecewiseRep(bnds, [gauss_coeffs(u) for u in U], self.q, self.interval)

    def seed_from_rep(self, rep, tau, lo, hi):
        """Node values of u for this grid from an existing PiecewiseRep with
        the same breakpoints and map (exact transfer of the Chebyshev series)."""
        from numpy.polynomial import chebyshev as C
        s = 2.0 * self.y - 1.0
        return [C.chebval(s, c) for c in rep.coeffs]

    def seed_from_values(self, wfun, dwfun, tau, lo, hi):
        """u = w/phi at well-conditioned nodes, linear fill near the ends
        using u(0) = w'(a), u(1) = -w'(b)."""
        bnds = np.r_[lo, tau, hi]
        U = []
        for k in range(len(bnds) - 1):
            a, b = bnds[k], bnds[k + 1]
            h = b - a
            xl, xr = h * self.ml, h * self.mr
            phi = xl * xr / h
            t = a + xl
            u = wfun(t) / phi
            ok = phi > 2e-2 * h
            ends = dwfun(np.array([a, b]))
            yy = np.r_[0.0, self.y[ok], 1.0]
            uu = np.r_[ends[0], u[ok], -ends[1]]
            U.append(np.interp(self.y, yy, uu))
        return U
