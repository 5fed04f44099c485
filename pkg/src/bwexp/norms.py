"""Sup norms on the curve, on circles, and on the bidisk, one-sided.

Estimates are honest in one direction each: grid maxima are true lower
bounds on the sup (they are attained values), and certified uppers are
true upper bounds.  Everything runs at an explicit binary precision.

Circle certificates use a Taylor ladder.  Any point t on |t| = r lies
within arc distance h = pi r / M of a grid point t_i, so for any depth
D >= 1

    |f(t)| <= sum_{m<D} h^m/m! |f^(m)(t_i)| + h^D/D! T_D,
    T_D = sum |c| |a|^D e^{r|a|},

because the segment from t_i to t stays inside |u| <= r where every
|f^(D)(u)| <= T_D.  Taking the grid max of each |f^(m)| and minimizing
over D gives the certificate.  Depth 1 is the classical
grid_max + h * sum|c||a|e^{r|a|} bound; deeper levels matter when f has
engineered cancellation (witness polynomials have K norms around
e^{n}/N! while sum|c||a|e^{|a|} is astronomically larger, so the
one-step bound is useless there and the ladder is not).

Bidisk sup norms of polynomials are attained on the torus
|z| = |w| = 1 (maximum principle in each variable separately), so the
grid scans the torus only.  The certified upper is the coefficient sum
||P||_{bidisk} <= sum |c_jk|.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from mpmath import mp

from .core import DEFAULT_BITS, AlphaParam, ExpSum, Poly2, compose_to_expsum

GRID_FLOOR = 8


@dataclass(frozen=True)
class NormEstimate:
    """A sup-norm bracket: attained grid value and optional certificate."""

    grid_max: object  # mp.mpf, a true lower bound on the sup
    certified_upper: object  # mp.mpf upper bound, or None
    grid_points: int
    method: str
    bits: int


_EXP_TABLE_CACHE: dict = {}
_EXP_TABLE_CACHE_MAX = 32


def _exp_table(exponents, r, M: int, bits: int):
    """Rows e^{a * t_i} for t_i = r e^{2 pi i k / M}, cached per grid."""
    key = (M, bits, mp.nstr(r, 40), tuple(mp.nstr(a, 40) for a in exponents))
    table = _EXP_TABLE_CACHE.get(key)
    if table is not None:
        return table
    with mp.workprec(bits):
        step = 2 * mp.pi / M
        table = []
        for i in range(M):
            t = r * mp.exp(mp.mpc(0, i * step))
            table.append([mp.exp(a * t) for a in exponents])
    if len(_EXP_TABLE_CACHE) >= _EXP_TABLE_CACHE_MAX:
        _EXP_TABLE_CACHE.clear()
    _EXP_TABLE_CACHE[key] = table
    return table


def _circle_estimate(f: ExpSum, r, M: int, bits: int, depth, method: str) -> NormEstimate:
    """Grid max and ladder certificate for an ExpSum on |t| = r.

    depth: 0 for grid max only, a positive integer for a fixed Taylor
    depth (1 = the one-step derivative bound), None for adaptive depth
    (minimum over depths until the tail term stops mattering).
    """
    if M < GRID_FLOOR:
        raise ValueError(f"grid needs at least {GRID_FLOOR} points, got {M}")
    with mp.workprec(bits):
        rr = mp.mpf(r)
        if rr <= 0:
            raise ValueError(f"radius must be positive, got {mp.nstr(rr, 8)}")
        coeffs = [mp.mpc(c) for c, _ in f.terms]
        exps = [mp.mpc(a) for _, a in f.terms]
        if not coeffs:
            zero = mp.mpf(0)
            return NormEstimate(zero, zero, M, method, bits)
        table = _exp_table(exps, rr, M, bits)

        def level_max(scaled):
            best = mp.mpf(0)
            for row in table:
                s = mp.mpc(0)
                for d, e in zip(scaled, row):
                    s += d * e
                v = abs(s)
                if v > best:
                    best = v
            return best

        grid_max = level_max(coeffs)
        if depth == 0:
            return NormEstimate(grid_max, None, M, method, bits)

        h = mp.pi * rr / M
        # T_m = sum |c| |a|^m e^{r|a|}, updated by one |a| factor per level
        tails = [abs(c) * mp.exp(rr * abs(a)) for c, a in zip(coeffs, exps)]
        scaled = list(coeffs)
        cap = depth if depth is not None else max(GRID_FLOOR, 2 * len(coeffs) + 16)
        cutoff = mp.mpf(2) ** (-(bits // 2))
        partial = mp.mpf(0)  # sum_{m<D} h^m/m! G_m
        hfac = mp.mpf(1)  # h^m / m!
        best = None
        g = grid_max
        for m in range(cap):
            partial += hfac * g
            tails = [u * abs(a) for u, a in zip(tails, exps)]
            hfac *= h / (m + 1)
            tail = hfac * sum(tails)  # h^D/D! * T_D at D = m+1
            cand = partial + tail
            if best is None or cand < best:
                best = cand
            if depth is None and tail <= cutoff * best:
                break
            if m + 1 < cap:
                scaled = [d * a for d, a in zip(scaled, exps)]
                g = level_max(scaled)
        return NormEstimate(grid_max, best, M, method, bits)


def norm_on_K(p: Poly2, alpha: AlphaParam, M: int = 512, bits: int = DEFAULT_BITS, depth=None) -> NormEstimate:
    """Sup of |P| on the curve piece {(e^t, e^{alpha t}) : |t| <= 1}.

    The composed f is entire, so the sup over the disk is attained on
    |t| = 1; the grid scans that circle.  depth as in norm_on_circle.
    """
    f = compose_to_expsum(p, alpha, bits)
    return _circle_estimate(f, 1, M, bits, depth, "curve-circle-grid")


def norm_on_circle(f: ExpSum, r, M: int = 512, bits: int = DEFAULT_BITS, depth=None) -> NormEstimate:
    """Sup of |f| on |t| = r with grid max and ladder certificate."""
    return _circle_estimate(f, r, M, bits, depth, "circle-grid")


_FULL_SCAN_WORK = 1_200_000


def norm_on_bidisk(p: Poly2, M: int = 256, bits: int = DEFAULT_BITS) -> NormEstimate:
    """Sup of |P| over the closed bidisk, scanned on the M x M torus.

    certified_upper is the coefficient sum.  Small grids are evaluated
    entirely at working precision; large grids preselect candidate
    points with a float64 scan (ties resolved within 1e-9 relative) and
    re-evaluate the candidates at working precision, so the reported
    grid_max is always an attained value.
    """
    if M < GRID_FLOOR:
        raise ValueError(f"grid needs at least {GRID_FLOOR} points, got {M}")
    items = sorted(p.coeffs.items())
    with mp.workprec(bits):
        csum = mp.mpf(0)
        for _, c in items:
            csum += abs(mp.mpc(c))
        if not items or csum == 0:
            zero = mp.mpf(0)
            return NormEstimate(zero, zero, M, "torus-grid", bits)

        def value_at(iz, iw):
            z = mp.exp(mp.mpc(0, 2 * mp.pi * iz / M))
            w = mp.exp(mp.mpc(0, 2 * mp.pi * iw / M))
            s = mp.mpc(0)
            for (j, k), c in items:
                s += mp.mpc(c) * z**j * w**k
            return abs(s)

        if M * M * len(items) <= _FULL_SCAN_WORK:
            zpow = {}
            step = 2 * mp.pi / M
            zs = [mp.exp(mp.mpc(0, i * step)) for i in range(M)]
            degs = sorted({j for (j, _), _ in items} | {k for (_, k), _ in items})
            for d in degs:
                zpow[d] = [z**d for z in zs]
            best = mp.mpf(0)
            for iz in range(M):
                for iw in range(M):
                    s = mp.mpc(0)
                    for (j, k), c in items:
                        s += mp.mpc(c) * zpow[j][iz] * zpow[k][iw]
                    v = abs(s)
                    if v > best:
                        best = v
            return NormEstimate(best, csum, M, "torus-grid", bits)

        # float64 preselection pass over the full grid
        ang = 2 * np.pi * np.arange(M) / M
        zs = np.exp(1j * ang)
        vals = np.zeros((M, M), dtype=np.complex128)
        for (j, k), c in items:
            vals += complex(mp.mpc(c)) * np.outer(zs**j, zs**k)
        mod = np.abs(vals)
        top = float(mod.max())
        flat = np.flatnonzero(mod >= top * (1 - 1e-9))
        if flat.size > 1024:
            flat = flat[:1024]
        best = mp.mpf(0)
        for pos in flat.tolist():
            v = value_at(pos // M, pos % M)
            if v > best:
                best = v
        return NormEstimate(best, csum, M, "torus-grid-preselect", bits)


def bw_envelope(z, w, normk, en, n: int, bits: int = DEFAULT_BITS):
    """Growth envelope normk * en * exp(n * log+ max(|z|, |w|))."""
    with mp.workprec(bits):
        nk, e = mp.mpf(normk), mp.mpf(en)
        if not (nk > 0 and e > 0):
            raise ValueError("envelope needs positive norm and constant")
        outer = max(abs(mp.mpc(z)), abs(mp.mpc(w)))
        logplus = mp.log(outer) if outer > 1 else mp.mpf(0)
        return nk * e * mp.exp(n * logplus)
