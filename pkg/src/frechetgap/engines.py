"""Decision procedures and exact values for the Fréchet distance family.

Variants: strong (F), discrete (dF), partial (P fully matched into a
subcurve of Q; partialF / partial-dF), weak with and without endpoint
restrictions (wF / wwF), and their discrete analogues (dwF / dwwF).

All decisions use the closed predicate dist <= eps, so each exact value is
attained and equals the smallest critical value at which the decision flips.
Exact computation is a binary search over the deduplicated critical-value
candidates; 1D searches run over rationals, 2D searches over squared
rationals (every 2D critical value is the square root of a rational).

Strong/partial reachability follows the classical boundary-interval sweep:
within one cell the free region is convex, so the reachable subset of a
boundary is its free interval clipped from below, and a cell entered through
its bottom boundary exposes its entire right free interval.  Weak variants
reduce to connectivity of the pixel raster from `freespace` (exact, see
there) computed with scipy's connected-component labelling.
"""

from __future__ import annotations

import collections
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np
from scipy import ndimage

from . import fastpath
from .curve import Curve
from .exactnum import Exact, Radical, fmt_exact, sqrt_exact, to_exact
from .freespace import (boundary_interval, pixel_mask, point_dist_sq_2d,
                        point_seg_dist_1d, point_seg_dist_sq_2d,
                        scale_pair_1d, scale_pair_2d, scale_value, scaled_1d,
                        segs_cross_2d, square_exact, vertex_mask)

VARIANTS = ("F", "dF", "partialF", "partial-dF", "wF", "wwF", "dwF", "dwwF")

_EIGHT = np.ones((3, 3), dtype=bool)

# coordinate bound (after scaling) for the int64 threshold grids: the worst
# products are cross^2 * absq <= 512 * M^6, which must stay below 2^63
_MAX_ABS_GRID = 400


class NoWitnessError(ValueError):
    """Raised when a witness is requested for a false decision."""


def _check_pair(P: Curve, Q: Curve) -> None:
    if P.dim != Q.dim:
        raise ValueError("dimension mismatch: %d vs %d" % (P.dim, Q.dim))


def _check_eps(eps) -> Exact:
    e = to_exact(eps)
    if e < 0:
        raise ValueError("threshold must be nonnegative")
    return e


def _within(dim: int, p, q, eps_cmp) -> bool:
    if dim == 1:
        return abs(p - q) <= eps_cmp
    return point_dist_sq_2d(p, q) <= eps_cmp


def _eps_cmp(dim: int, eps: Exact):
    """eps for 1D comparisons, eps^2 for 2D squared-distance comparisons."""
    return square_exact(eps) if dim == 2 else eps


# --- strong / partial decision ------------------------------------------------

def _decide_strong_pure(P: Curve, Q: Curve, eps: Exact, partial: bool) -> bool:
    dim = P.dim
    n, m = len(P), len(Q)
    pv, qv = P.verts, Q.verts
    ec = _eps_cmp(dim, eps)

    def corner(i, j):
        return _within(dim, pv[i], qv[j], ec)

    vreach = [None] * (m - 1)
    if partial:
        for j in range(m - 1):
            w = boundary_interval(dim, pv[0], qv[j], qv[j + 1], eps)
            if w is not None:
                vreach[j] = w[0]
    else:
        alive = corner(0, 0)
        for j in range(m - 1):
            if alive:
                vreach[j] = Fraction(0)
                alive = corner(0, j + 1)

    bottom_alive = corner(0, 0)
    b = None
    for i in range(n - 1):
        b = Fraction(0) if bottom_alive else None
        bottom_alive = bottom_alive and corner(i + 1, 0)
        for j in range(m - 1):
            vl = vreach[j]
            w = boundary_interval(dim, pv[i + 1], qv[j], qv[j + 1], eps)
            nv = None
            if w is not None:
                lo, hi = w
                if b is not None:
                    nv = lo
                elif vl is not None and vl <= hi:
                    nv = vl if vl > lo else lo
            vreach[j] = nv
            t = boundary_interval(dim, qv[j + 1], pv[i], pv[i + 1], eps)
            nb = None
            if t is not None:
                lo, hi = t
                if vl is not None:
                    nb = lo
                elif b is not None and b <= hi:
                    nb = b if b > lo else lo
            b = nb
    if partial:
        return any(v is not None for v in vreach)
    return corner(n - 1, m - 1) and (vreach[m - 2] is not None or b is not None)


def _decide_strong(P: Curve, Q: Curve, eps: Exact, partial: bool) -> bool:
    dim = P.dim
    n, m = len(P), len(Q)
    ec = _eps_cmp(dim, eps)
    if n == 1 and m == 1:
        return _within(dim, P.verts[0], Q.verts[0], ec)
    if m == 1:
        # Q is a point; all of P must stay within eps of it (the segment
        # maximum is attained at a vertex)
        return all(_within(dim, p, Q.verts[0], ec) for p in P.verts)
    if n == 1:
        if partial:
            if dim == 1:
                return any(point_seg_dist_1d(P.verts[0], Q.verts[j],
                                             Q.verts[j + 1]) <= ec
                           for j in range(m - 1))
            return any(point_seg_dist_sq_2d(P.verts[0], Q.verts[j],
                                            Q.verts[j + 1]) <= ec
                       for j in range(m - 1))
        return all(_within(dim, P.verts[0], q, ec) for q in Q.verts)
    if dim == 1 and fastpath.HAVE_NUMBA and isinstance(eps, (int, Fraction)):
        got = scaled_1d(P, Q, eps)
        if got is not None:
            p, q, e = got
            return bool(fastpath.decide_strong_1d(p, q, e, partial))
    return _decide_strong_pure(P, Q, eps, partial)


def decide_frechet(P: Curve, Q: Curve, eps) -> bool:
    """True iff a monotone corner-to-corner path exists in the eps-free space."""
    _check_pair(P, Q)
    return _decide_strong(P, Q, _check_eps(eps), partial=False)


def decide_partial_frechet(P: Curve, Q: Curve, eps, discrete: bool = False) -> bool:
    """True iff P fully matches into some subcurve Q[a,b] within eps."""
    _check_pair(P, Q)
    e = _check_eps(eps)
    if discrete:
        return _discrete_value_cmp(P, Q, e, partial=True)
    return _decide_strong(P, Q, e, partial=True)


# --- discrete variants ---------------------------------------------------------

def _discrete_value_pure(P: Curve, Q: Curve, partial: bool):
    """Exact min-over-couplings of the max pair distance (squared for 2D)."""
    dim = P.dim
    n, m = len(P), len(Q)
    pv, qv = P.verts, Q.verts

    def d(i, j):
        if dim == 1:
            return abs(pv[i] - qv[j])
        return point_dist_sq_2d(pv[i], qv[j])

    prev = []
    for j in range(m):
        if partial or j == 0:
            prev.append(d(0, j))
        else:
            x = d(0, j)
            prev.append(prev[-1] if prev[-1] > x else x)
    for i in range(1, n):
        cur = [max(prev[0], d(i, 0))]
        for j in range(1, m):
            best = min(prev[j], prev[j - 1], cur[j - 1])
            x = d(i, j)
            cur.append(best if best > x else x)
        prev = cur
    return min(prev) if partial else prev[-1]


def _discrete_value(P: Curve, Q: Curve, partial: bool) -> Exact:
    """Exact discrete width as a distance value (not squared)."""
    if P.dim == 1:
        if fastpath.HAVE_NUMBA:
            got = scale_pair_1d(P, Q)
            if got is not None:
                p, q, den = got
                v = fastpath.discrete_value_1d(p, q, partial)
                return to_exact(Fraction(int(v), den))
        return to_exact(_discrete_value_pure(P, Q, partial))
    if fastpath.HAVE_NUMBA:
        got = scale_pair_2d(P, Q)
        if got is not None:
            (px, py, qx, qy), den = got
            v = fastpath.discrete_value_2d(px, py, qx, qy, partial)
            return sqrt_exact(Fraction(int(v), den * den))
    return sqrt_exact(_discrete_value_pure(P, Q, partial))


def _discrete_value_cmp(P: Curve, Q: Curve, eps: Exact, partial: bool) -> bool:
    return _discrete_value(P, Q, partial) <= eps


def decide_discrete_frechet(P: Curve, Q: Curve, eps) -> bool:
    _check_pair(P, Q)
    return _discrete_value_cmp(P, Q, _check_eps(eps), partial=False)


def discrete_frechet_exact(P: Curve, Q: Curve) -> Exact:
    """Min over monotone couplings of the max vertex-pair distance."""
    _check_pair(P, Q)
    return _discrete_value(P, Q, partial=False)


# --- weak variants --------------------------------------------------------------

def _mask_verdict(mask: np.ndarray, restricted: bool, eight: bool) -> bool:
    if restricted and not (mask[0, 0] and mask[-1, -1]):
        return False
    labels, count = ndimage.label(mask, structure=_EIGHT if eight else None)
    if count == 0:
        return False
    if restricted:
        return bool(labels[0, 0] == labels[-1, -1])
    ids = None
    for border in (labels[0, :], labels[-1, :], labels[:, 0], labels[:, -1]):
        here = np.unique(border)
        here = here[here != 0]
        ids = here if ids is None else np.intersect1d(ids, here)
        if ids.size == 0:
            return False
    return True


def decide_weak_frechet(P: Curve, Q: Curve, eps,
                        endpoint_restricted: bool = True) -> bool:
    """Connectivity in the closed eps-free space.

    Restricted: (1,1) and (|P|,|Q|) share a component.  Unrestricted: some
    component projects onto all of both parameter ranges, which for a
    connected set is equivalent to touching all four borders.
    """
    _check_pair(P, Q)
    e = _check_eps(eps)
    mask = pixel_mask(P, Q, e)
    return _mask_verdict(mask, endpoint_restricted, eight=False)


def decide_discrete_weak_frechet(P: Curve, Q: Curve, eps,
                                 endpoint_restricted: bool = True) -> bool:
    """Connectivity in the king-move graph on vertex pairs within eps.

    A connected set of king moves has contiguous row and column projections,
    so covering every index is again equivalent to touching the borders.
    """
    _check_pair(P, Q)
    e = _check_eps(eps)
    mask = vertex_mask(P, Q, e)
    return _mask_verdict(mask, endpoint_restricted, eight=True)


def hausdorff_image_1d(P: Curve, Q: Curve) -> Exact:
    """Hausdorff distance between the value intervals swept by 1D curves."""
    if P.dim != 1 or Q.dim != 1:
        raise ValueError("hausdorff_image_1d requires 1D curves")
    lo = abs(min(P.verts) - min(Q.verts))
    hi = abs(max(P.verts) - max(Q.verts))
    return to_exact(lo if lo > hi else hi)


# --- critical values ------------------------------------------------------------

def _criticals_1d(P: Curve, Q: Curve):
    """Cross vertex distances, half intra-curve distances, and 0 (ascending).

    Works on deduplicated coordinates, so repetitive curves stay cheap.
    """
    up = sorted(set(P.verts))
    uq = sorted(set(Q.verts))
    vals = {Fraction(0)}
    for a in up:
        for b in uq:
            vals.add(Fraction(abs(a - b)))
    for group in (up, uq):
        for i, a in enumerate(group):
            for b in group[i + 1:]:
                vals.add(Fraction(abs(a - b)) / 2)
    return sorted(vals)


def _bisector_events_sq(points, edges, out: set) -> None:
    # eps at which the bisector of two same-curve vertices crosses an edge
    # of the other curve (the classical monotonicity-event candidates)
    for ui, u in enumerate(points):
        for v in points[ui + 1:]:
            bx, by = v[0] - u[0], v[1] - u[1]
            rhs = (v[0] * v[0] + v[1] * v[1] - u[0] * u[0] - u[1] * u[1])
            for a, c in edges:
                ex, ey = c[0] - a[0], c[1] - a[1]
                den = 2 * (bx * ex + by * ey)
                if den == 0:
                    continue
                t = Fraction(rhs - 2 * (bx * a[0] + by * a[1]), 1) / den
                if 0 <= t <= 1:
                    x = (a[0] + t * ex, a[1] + t * ey)
                    out.add(Fraction(point_dist_sq_2d(x, u)))


def _criticals_2d_sq(P: Curve, Q: Curve, monotone_events: bool):
    up = sorted(set(P.verts))
    uq = sorted(set(Q.verts))
    pe = sorted({(P.verts[i], P.verts[i + 1]) for i in range(len(P) - 1)})
    qe = sorted({(Q.verts[j], Q.verts[j + 1]) for j in range(len(Q) - 1)})
    vals = {Fraction(0)}
    for a in up:
        for b in uq:
            vals.add(Fraction(point_dist_sq_2d(a, b)))
    for a in up:
        for e in qe:
            vals.add(Fraction(point_seg_dist_sq_2d(a, *e)))
    for b in uq:
        for e in pe:
            vals.add(Fraction(point_seg_dist_sq_2d(b, *e)))
    if monotone_events:
        _bisector_events_sq(up, qe, vals)
        _bisector_events_sq(uq, pe, vals)
    return sorted(vals)


def critical_values(P: Curve, Q: Curve):
    """Ascending candidate thresholds containing every variant's exact value.

    1D: distances between vertices of different curves plus half distances
    within one curve.  2D: vertex-vertex, vertex-edge, and bisector-edge
    events (quadratic/cubic enumeration over distinct coordinates; intended
    for moderate inputs).
    """
    _check_pair(P, Q)
    if P.dim == 1:
        return [to_exact(v) for v in _criticals_1d(P, Q)]
    return [sqrt_exact(v) for v in _criticals_2d_sq(P, Q, monotone_events=True)]


def _min_true(values, pred):
    """Smallest value satisfying a monotone predicate."""
    lo, hi = 0, len(values) - 1
    if not pred(values[hi]):
        raise AssertionError("decision false at the largest candidate; "
                             "critical-value set is incomplete")
    while lo < hi:
        mid = (lo + hi) // 2
        if pred(values[mid]):
            hi = mid
        else:
            lo = mid + 1
    return values[lo]


# --- exact values ----------------------------------------------------------------

def frechet_exact(P: Curve, Q: Curve) -> Exact:
    _check_pair(P, Q)
    if P.dim == 1:
        crits = _criticals_1d(P, Q)
        return to_exact(_min_true(
            crits, lambda c: _decide_strong(P, Q, c, partial=False)))
    crits = _criticals_2d_sq(P, Q, monotone_events=True)
    best = _min_true(
        crits, lambda c: _decide_strong(P, Q, sqrt_exact(c), partial=False))
    return sqrt_exact(best)


def partial_frechet_exact(P: Curve, Q: Curve, discrete: bool = False) -> Exact:
    _check_pair(P, Q)
    if discrete:
        return _discrete_value(P, Q, partial=True)
    if P.dim == 1:
        crits = _criticals_1d(P, Q)
        return to_exact(_min_true(
            crits, lambda c: _decide_strong(P, Q, c, partial=True)))
    crits = _criticals_2d_sq(P, Q, monotone_events=True)
    best = _min_true(
        crits, lambda c: _decide_strong(P, Q, sqrt_exact(c), partial=True))
    return sqrt_exact(best)


def weak_frechet_exact(P: Curve, Q: Curve,
                       endpoint_restricted: bool = True) -> Exact:
    _check_pair(P, Q)
    if P.dim == 1:
        crits = _criticals_1d(P, Q)
        return to_exact(_min_true(
            crits,
            lambda c: decide_weak_frechet(P, Q, c, endpoint_restricted)))
    got = _threshold_grid_2d(P, Q)
    if got is not None:
        rank_grid, values = got
        return sqrt_exact(_grid_search(rank_grid, values, endpoint_restricted))
    crits = _criticals_2d_sq(P, Q, monotone_events=False)
    best = _min_true(
        crits,
        lambda c: decide_weak_frechet(P, Q, sqrt_exact(c), endpoint_restricted))
    return sqrt_exact(best)


def discrete_weak_frechet_exact(P: Curve, Q: Curve,
                                endpoint_restricted: bool = True) -> Exact:
    _check_pair(P, Q)
    if P.dim == 1:
        up = sorted(set(P.verts))
        uq = sorted(set(Q.verts))
        crits = sorted({Fraction(0)} |
                       {Fraction(abs(a - b)) for a in up for b in uq})
        return to_exact(_min_true(
            crits,
            lambda c: decide_discrete_weak_frechet(P, Q, c,
                                                   endpoint_restricted)))
    up = sorted(set(P.verts))
    uq = sorted(set(Q.verts))
    crits = sorted({Fraction(0)} |
                   {Fraction(point_dist_sq_2d(a, b)) for a in up for b in uq})
    best = _min_true(
        crits,
        lambda c: decide_discrete_weak_frechet(P, Q, sqrt_exact(c),
                                               endpoint_restricted))
    return sqrt_exact(best)


# --- 2D weak threshold grid -------------------------------------------------------

def _pseg_threshold(px, py, ax, ay, bx, by):
    """Per-(point, edge) squared distance as an int64 fraction grid."""
    abx = (bx - ax)[None, :]
    aby = (by - ay)[None, :]
    apx = px[:, None] - ax[None, :]
    apy = py[:, None] - ay[None, :]
    absq = abx * abx + aby * aby
    dot = apx * abx + apy * aby
    d_a = apx * apx + apy * apy
    bpx = px[:, None] - bx[None, :]
    bpy = py[:, None] - by[None, :]
    d_b = bpx * bpx + bpy * bpy
    cross = abx * apy - aby * apx
    interior = (dot > 0) & (dot < absq)
    num = np.where(dot <= 0, d_a, d_b)
    num = np.where(interior, cross * cross, num)
    num = np.where(absq == 0, d_a, num)
    den = np.where(interior & (absq > 0), absq, 1)
    return num, den


def _pair_min(n1, d1, n2, d2):
    take = n2 * d1 < n1 * d2
    return np.where(take, n2, n1), np.where(take, d2, d1)


@lru_cache(maxsize=4)
def _threshold_grid_2d(P: Curve, Q: Curve):
    """Pixel grid of squared free-threshold ranks plus the sorted values.

    rank_grid[i, j] = index into values of the smallest eps^2 making pixel
    (i, j) free; masks for any candidate eps are then integer comparisons.
    Requires scaled coordinates within the int64 safety bound.
    """
    got = scale_pair_2d(P, Q, max_abs=_MAX_ABS_GRID)
    if got is None:
        return None
    (px, py, qx, qy), den = got
    n, m = px.shape[0], qx.shape[0]
    num = np.zeros((2 * n - 1, 2 * m - 1), dtype=np.int64)
    dnm = np.ones((2 * n - 1, 2 * m - 1), dtype=np.int64)
    dx = px[:, None] - qx[None, :]
    dy = py[:, None] - qy[None, :]
    num[0::2, 0::2] = dx * dx + dy * dy
    if m > 1:
        a, b = _pseg_threshold(px, py, qx[:-1], qy[:-1], qx[1:], qy[1:])
        num[0::2, 1::2] = a
        dnm[0::2, 1::2] = b
    if n > 1:
        a, b = _pseg_threshold(qx, qy, px[:-1], py[:-1], px[1:], py[1:])
        num[1::2, 0::2] = a.T
        dnm[1::2, 0::2] = b.T
    if n > 1 and m > 1:
        ax, ay, bx, by = px[:-1], py[:-1], px[1:], py[1:]
        cx, cy, ex, ey = qx[:-1], qy[:-1], qx[1:], qy[1:]
        n1, d1 = _pseg_threshold(ax, ay, cx, cy, ex, ey)
        n2, d2 = _pseg_threshold(bx, by, cx, cy, ex, ey)
        n1, d1 = _pair_min(n1, d1, n2, d2)
        n2, d2 = _pseg_threshold(cx, cy, ax, ay, bx, by)
        n1, d1 = _pair_min(n1, d1, n2.T, d2.T)
        n2, d2 = _pseg_threshold(ex, ey, ax, ay, bx, by)
        n1, d1 = _pair_min(n1, d1, n2.T, d2.T)

        def osign(ux, uy, vx, vy, wx, wy):
            return np.sign((vx - ux) * (wy - uy) - (vy - uy) * (wx - ux))

        o1 = osign(ax[:, None], ay[:, None], bx[:, None], by[:, None],
                   cx[None, :], cy[None, :])
        o2 = osign(ax[:, None], ay[:, None], bx[:, None], by[:, None],
                   ex[None, :], ey[None, :])
        o3 = osign(cx[None, :], cy[None, :], ex[None, :], ey[None, :],
                   ax[:, None], ay[:, None])
        o4 = osign(cx[None, :], cy[None, :], ex[None, :], ey[None, :],
                   bx[:, None], by[:, None])
        crossing = (o1 * o2 < 0) & (o3 * o4 < 0)
        n1 = np.where(crossing, 0, n1)
        d1 = np.where(crossing, 1, d1)
        num[1::2, 1::2] = n1
        dnm[1::2, 1::2] = d1

    pairs = np.stack([num.ravel(), dnm.ravel()], axis=1)
    uniq, inverse = np.unique(pairs, axis=0, return_inverse=True)
    den_sq = den * den
    fracs = [Fraction(int(a), int(b)) / den_sq for a, b in uniq]
    values = sorted(set(fracs))
    rank_of = {v: k for k, v in enumerate(values)}
    pair_rank = np.array([rank_of[f] for f in fracs], dtype=np.int64)
    rank_grid = pair_rank[inverse].reshape(num.shape)
    return rank_grid, values


def _grid_search(rank_grid: np.ndarray, values, restricted: bool) -> Fraction:
    lo = 0
    hi = len(values) - 1
    if restricted:
        lo = int(max(rank_grid[0, 0], rank_grid[-1, -1]))
    while lo < hi:
        mid = (lo + hi) // 2
        if _mask_verdict(rank_grid <= mid, restricted, eight=False):
            hi = mid
        else:
            lo = mid + 1
    return values[lo]


# --- witness extraction -----------------------------------------------------------

@dataclass(frozen=True)
class Matching:
    """A witness path in parameter space (1-based), with its exact width."""
    variant: str
    path: tuple
    width: Exact

    def to_obj(self):
        def coord(v):
            if isinstance(v, Fraction) and v.denominator == 1:
                v = int(v)
            return v if isinstance(v, int) else fmt_exact(v)

        return {"variant": self.variant,
                "width": fmt_exact(self.width),
                "path": [[coord(x), coord(y)] for x, y in self.path]}


def _path_width(P: Curve, Q: Curve, pts) -> Exact:
    if P.dim == 1:
        best = to_exact(0)
        for x, y in pts:
            d = abs(P.at(x) - Q.at(y))
            if d > best:
                best = to_exact(d)
        return best
    # compare squared distances; a single sqrt at the end keeps irrational
    # parameters (distance exactly eps there) inside the supported field
    best_sq = to_exact(0)
    for x, y in pts:
        dsq = point_dist_sq_2d(P.at(x), Q.at(y))
        if dsq > best_sq:
            best_sq = dsq
    return sqrt_exact(best_sq)


def _strong_witness(P: Curve, Q: Curve, eps: Exact, partial: bool):
    """Parent-tracking rerun of the pure sweep; assumes the decision holds."""
    dim = P.dim
    n, m = len(P), len(Q)
    pv, qv = P.verts, Q.verts
    ec = _eps_cmp(dim, eps)

    def corner(i, j):
        return _within(dim, pv[i], qv[j], ec)

    if n == 1 or m == 1:
        return _degenerate_strong_witness(P, Q, eps, partial)

    # reach[key] = (lo_param, parent_key); keys ('V', i, j) / ('H', i, j)
    reach = {}
    if partial:
        for j in range(m - 1):
            w = boundary_interval(dim, pv[0], qv[j], qv[j + 1], eps)
            if w is not None:
                reach[("V", 0, j)] = (w[0], None)
    else:
        alive = corner(0, 0)
        for j in range(m - 1):
            if not alive:
                break
            reach[("V", 0, j)] = (Fraction(0), None)
            alive = corner(0, j + 1)
    bottom_alive = corner(0, 0)
    for i in range(n - 1):
        if bottom_alive:
            reach[("H", i, 0)] = (Fraction(0), None)
        bottom_alive = bottom_alive and corner(i + 1, 0)
        for j in range(m - 1):
            left = reach.get(("V", i, j))
            bot = reach.get(("H", i, j))
            w = boundary_interval(dim, pv[i + 1], qv[j], qv[j + 1], eps)
            if w is not None:
                lo, hi = w
                if bot is not None:
                    reach[("V", i + 1, j)] = (lo, ("H", i, j))
                elif left is not None and left[0] <= hi:
                    v = left[0] if left[0] > lo else lo
                    reach[("V", i + 1, j)] = (v, ("V", i, j))
            t = boundary_interval(dim, qv[j + 1], pv[i], pv[i + 1], eps)
            if t is not None:
                lo, hi = t
                if left is not None:
                    reach[("H", i, j + 1)] = (lo, ("V", i, j))
                elif bot is not None and bot[0] <= hi:
                    v = bot[0] if bot[0] > lo else lo
                    reach[("H", i, j + 1)] = (v, ("H", i, j))

    def key_point(key):
        kind, i, j = key
        lo = reach[key][0]
        if kind == "V":
            return (Fraction(i + 1), j + 1 + lo)
        return (i + 1 + lo, Fraction(j + 1))

    if partial:
        end_key = None
        for j in range(m - 1):
            if ("V", n - 1, j) in reach:
                end_key = ("V", n - 1, j)
                break
        if end_key is None:
            raise NoWitnessError("partial decision is false at this threshold")
        tail = [key_point(end_key)]
    else:
        if not corner(n - 1, m - 1):
            raise NoWitnessError("decision is false at this threshold")
        if ("V", n - 1, m - 2) in reach:
            end_key = ("V", n - 1, m - 2)
        elif ("H", n - 2, m - 1) in reach:
            end_key = ("H", n - 2, m - 1)
        else:
            raise NoWitnessError("decision is false at this threshold")
        tail = [(Fraction(n), Fraction(m)), key_point(end_key)]

    key = end_key
    while True:
        parent = reach[key][1]
        if parent is None:
            break
        tail.append(key_point(parent))
        key = parent
    # chain roots were reached by walking along a grid line through free
    # corners; those corners must appear on the path so that its width is
    # the max over path vertices
    kind, ri, rj = key
    if kind == "H":
        for ii in range(ri - 1, -1, -1):
            tail.append((Fraction(ii + 1), Fraction(1)))
    elif not partial:
        for jj in range(rj - 1, -1, -1):
            tail.append((Fraction(1), Fraction(jj + 1)))
    pts = []
    for pt in reversed(tail):
        if not pts or pts[-1] != pt:
            pts.append(pt)
    return _rationalize_path(P, Q, eps, pts)


def _rationalize_path(P: Curve, Q: Curve, eps: Exact, pts):
    """Nudge boundary points whose pair distance falls outside the field.

    Carried entry parameters can be another boundary's quadratic root, making
    the distance at that point sqrt(a + b*sqrt(r)).  Such a point never sits
    at an interval endpoint of its own boundary unless two roots coincide, so
    sliding it to a nearby rational parameter keeps the path free and
    monotone while making every pair distance representable.
    """
    if P.dim == 2:
        for k, (x, y) in enumerate(pts):
            if not isinstance(point_dist_sq_2d(P.at(x), Q.at(y)), Radical):
                continue
            prev = pts[k - 1] if k > 0 else None
            nxt = pts[k + 1] if k + 1 < len(pts) else None
            if isinstance(y, Radical):
                i, j = int(x), int(y)
                w = boundary_interval(2, P.verts[i - 1],
                                      Q.verts[j - 1], Q.verts[j], eps)
                lb, ub = j + w[0], j + w[1]
                if prev is not None and prev[1] > lb:
                    lb = prev[1]
                if nxt is not None and nxt[1] < ub:
                    ub = nxt[1]
                if ub > y:
                    pts[k] = (x, _rational_between(y, ub))
                elif lb < y:
                    pts[k] = (x, _rational_between(lb, y))
            elif isinstance(x, Radical):
                i, j = int(x), int(y)
                w = boundary_interval(2, Q.verts[j - 1],
                                      P.verts[i - 1], P.verts[i], eps)
                lb, ub = i + w[0], i + w[1]
                if prev is not None and prev[0] > lb:
                    lb = prev[0]
                if nxt is not None and nxt[0] < ub:
                    ub = nxt[0]
                if ub > x:
                    pts[k] = (_rational_between(x, ub), y)
                elif lb < x:
                    pts[k] = (_rational_between(lb, x), y)
    return pts


def _rational_between(a, b):
    """A rational strictly inside (a, b); endpoints may be Radicals."""
    scale = 1
    while True:
        c = Fraction(math.floor(a * scale) + 1, scale)
        if c < b:
            return c
        scale *= 2


def _degenerate_strong_witness(P: Curve, Q: Curve, eps: Exact, partial: bool):
    dim = P.dim
    n, m = len(P), len(Q)
    ec = _eps_cmp(dim, eps)
    if m == 1:
        if not all(_within(dim, p, Q.verts[0], ec) for p in P.verts):
            raise NoWitnessError("decision is false at this threshold")
        return [(Fraction(i + 1), Fraction(1)) for i in range(n)]
    if not partial:
        if not all(_within(dim, P.verts[0], q, ec) for q in Q.verts):
            raise NoWitnessError("decision is false at this threshold")
        return [(Fraction(1), Fraction(j + 1)) for j in range(m)]
    for j in range(m - 1):
        w = boundary_interval(dim, P.verts[0], Q.verts[j], Q.verts[j + 1], eps)
        if w is not None:
            return [(Fraction(1), j + 1 + w[0])]
    raise NoWitnessError("partial decision is false at this threshold")


def _coupling_witness(P: Curve, Q: Curve, eps: Exact, partial: bool):
    free = vertex_mask(P, Q, eps)
    n, m = free.shape
    reach = np.zeros_like(free)
    if partial:
        reach[0, :] = free[0, :]
    else:
        reach[0, 0] = free[0, 0]
        for j in range(1, m):
            reach[0, j] = reach[0, j - 1] and free[0, j]
    for i in range(1, n):
        reach[i, 0] = reach[i - 1, 0] and free[i, 0]
        for j in range(1, m):
            reach[i, j] = free[i, j] and (reach[i - 1, j] or
                                          reach[i, j - 1] or
                                          reach[i - 1, j - 1])
    if partial:
        ends = [j for j in range(m) if reach[n - 1, j]]
        if not ends:
            raise NoWitnessError("partial decision is false at this threshold")
        i, j = n - 1, ends[0]
    else:
        if not reach[n - 1, m - 1]:
            raise NoWitnessError("decision is false at this threshold")
        i, j = n - 1, m - 1
    pairs = [(i + 1, j + 1)]
    while i > 0 or (not partial and j > 0):
        if i > 0 and j > 0 and reach[i - 1, j - 1]:
            i, j = i - 1, j - 1
        elif i > 0 and reach[i - 1, j]:
            i -= 1
        elif j > 0 and reach[i, j - 1]:
            j -= 1
        elif partial and i == 0:
            break
        else:
            raise AssertionError("broken coupling backtrack")
        pairs.append((i + 1, j + 1))
    pairs.reverse()
    return pairs


def _pixel_point(P: Curve, Q: Curve, eps: Exact, r: int, c: int):
    """An exact free parameter point inside pixel (r, c) of the raster."""
    i, j = r // 2, c // 2
    if r % 2 == 0 and c % 2 == 0:
        return (Fraction(i + 1), Fraction(j + 1))
    if r % 2 == 0:
        w = boundary_interval(P.dim, P.verts[i], Q.verts[j], Q.verts[j + 1],
                              eps)
        return (Fraction(i + 1), j + 1 + w[0])
    if c % 2 == 0:
        w = boundary_interval(P.dim, Q.verts[j], P.verts[i], P.verts[i + 1],
                              eps)
        return (i + 1 + w[0], Fraction(j + 1))
    s, t = _closest_params(P.dim, P.verts[i], P.verts[i + 1],
                           Q.verts[j], Q.verts[j + 1])
    return (i + 1 + s, j + 1 + t)


def _closest_params(dim, a, b, c, d):
    """Params (s, t) of a closest pair between segments ab and cd."""
    if dim == 1:
        lo1, hi1 = (a, b) if a <= b else (b, a)
        lo2, hi2 = (c, d) if c <= d else (d, c)
        v = max(lo1, lo2)
        if v > min(hi1, hi2):
            # disjoint value ranges; facing endpoints are the closest pair
            if lo2 > hi1:
                v1, v2 = hi1, lo2
            else:
                v1, v2 = lo1, hi2
            return _param_at_value_1d(a, b, v1), _param_at_value_1d(c, d, v2)
        return _param_at_value_1d(a, b, v), _param_at_value_1d(c, d, v)
    if segs_cross_2d(a, b, c, d):
        rx, ry = b[0] - a[0], b[1] - a[1]
        sx, sy = d[0] - c[0], d[1] - c[1]
        den = rx * sy - ry * sx
        qpx, qpy = c[0] - a[0], c[1] - a[1]
        s = Fraction(qpx * sy - qpy * sx, 1) / den
        t = Fraction(qpx * ry - qpy * rx, 1) / den
        return s, t
    best = None
    for p, (u, v), flip, pend in ((a, (c, d), False, 0), (b, (c, d), False, 1),
                                  (c, (a, b), True, 0), (d, (a, b), True, 1)):
        dist = point_seg_dist_sq_2d(p, u, v)
        t = _proj_param_2d(p, u, v)
        pair = (Fraction(pend), t) if not flip else (t, Fraction(pend))
        if best is None or dist < best[0]:
            best = (dist, pair)
    return best[1]


def _param_at_value_1d(a, b, v):
    if a == b:
        return Fraction(0)
    return Fraction(v - a) / (b - a)


def _proj_param_2d(p, a, b):
    ab = (b[0] - a[0], b[1] - a[1])
    absq = ab[0] * ab[0] + ab[1] * ab[1]
    if absq == 0:
        return Fraction(0)
    dot = (p[0] - a[0]) * ab[0] + (p[1] - a[1]) * ab[1]
    t = Fraction(dot) / absq
    if t < 0:
        return Fraction(0)
    if t > 1:
        return Fraction(1)
    return t


def _bfs_path(mask: np.ndarray, start, goal, eight: bool):
    if not (mask[start] and mask[goal]):
        return None
    if eight:
        steps = [(di, dj) for di in (-1, 0, 1) for dj in (-1, 0, 1)
                 if (di, dj) != (0, 0)]
    else:
        steps = [(-1, 0), (1, 0), (0, -1), (0, 1)]
    prev = {start: None}
    queue = collections.deque([start])
    while queue:
        cur = queue.popleft()
        if cur == goal:
            out = []
            while cur is not None:
                out.append(cur)
                cur = prev[cur]
            out.reverse()
            return out
        for di, dj in steps:
            nxt = (cur[0] + di, cur[1] + dj)
            if 0 <= nxt[0] < mask.shape[0] and 0 <= nxt[1] < mask.shape[1] \
                    and mask[nxt] and nxt not in prev:
                prev[nxt] = cur
                queue.append(nxt)
    return None


def _border_tour(mask: np.ndarray, eight: bool):
    """Pixel walk touching all four borders inside one component."""
    labels, count = ndimage.label(mask, structure=_EIGHT if eight else None)
    for lab in range(1, count + 1):
        rows, cols = np.nonzero(labels == lab)
        if rows.min() != 0 or rows.max() != mask.shape[0] - 1:
            continue
        if cols.min() != 0 or cols.max() != mask.shape[1] - 1:
            continue
        comp = labels == lab
        top = (0, int(cols[rows == 0][0]))
        bottom = (mask.shape[0] - 1, int(cols[rows == mask.shape[0] - 1][0]))
        left = (int(rows[cols == 0][0]), 0)
        right = (int(rows[cols == mask.shape[1] - 1][0]), mask.shape[1] - 1)
        walk = _bfs_path(comp, top, bottom, eight)
        walk += _bfs_path(comp, bottom, left, eight)[1:]
        walk += _bfs_path(comp, left, right, eight)[1:]
        return walk
    return None


def extract_matching(P: Curve, Q: Curve, eps, variant: str = "F") -> Matching:
    """Witness path/coupling for a true decision at eps.

    Continuous paths are exact parameter points whose consecutive entries
    share a convex free cell region, so the polyline width equals the max
    over its vertices; discrete variants return 1-based index couplings.
    """
    _check_pair(P, Q)
    if variant not in VARIANTS:
        raise ValueError("unknown variant %r" % (variant,))
    e = _check_eps(eps)
    if variant in ("F", "partialF"):
        pts = _strong_witness(P, Q, e, partial=(variant == "partialF"))
    elif variant in ("dF", "partial-dF"):
        pts = _coupling_witness(P, Q, e, partial=(variant == "partial-dF"))
    elif variant in ("wF", "wwF"):
        mask = pixel_mask(P, Q, e)
        if variant == "wF":
            cells = _bfs_path(mask, (0, 0),
                              (mask.shape[0] - 1, mask.shape[1] - 1),
                              eight=False)
        else:
            cells = _border_tour(mask, eight=False)
        if cells is None:
            raise NoWitnessError("decision is false at this threshold")
        pts = []
        for r, c in cells:
            pt = _pixel_point(P, Q, e, r, c)
            if not pts or pts[-1] != pt:
                pts.append(pt)
    else:
        mask = vertex_mask(P, Q, e)
        if variant == "dwF":
            cells = _bfs_path(mask, (0, 0),
                              (mask.shape[0] - 1, mask.shape[1] - 1),
                              eight=True)
        else:
            cells = _border_tour(mask, eight=True)
        if cells is None:
            raise NoWitnessError("decision is false at this threshold")
        pts = [(i + 1, j + 1) for i, j in cells]
    width = _path_width(P, Q, pts)
    if width > e:
        raise AssertionError("extracted witness exceeds the threshold")
    return Matching(variant=variant, path=tuple(pts), width=width)
