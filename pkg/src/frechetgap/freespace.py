"""Free-space geometry for curve pairs.

For curves P, Q and a threshold eps, the free space is the set of parameter
pairs (x, y) with dist(P(x), Q(y)) <= eps (closed predicate).  This module
provides the exact building blocks used by every decision procedure:

* point/segment distance predicates (1D rationals, 2D via squared values),
* free intervals on cell boundaries for the monotone reachability sweep,
* connectivity rasters ("pixel masks") on the doubled grid, where even
  indices are vertex lines and odd indices are edge strips.  Two cells of
  the free space are connected through a shared boundary or corner exactly
  when the corresponding 4-adjacent pixels are both free, so connected
  components of the mask agree with components of the closed free space.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np

from .curve import Curve
from .exactnum import (Exact, Radical, Rational, common_denominator,
                       make_radical, sqrt_exact)

# magnitude guards for the int64 fast paths; 2D predicates form 4th-degree
# products, 1D only sums
_MAX_ABS_1D = 1 << 40
_MAX_ABS_2D = 10_000
# largest scaled eps^2 whose product with a squared edge length fits int64
_MAX_EPS_SQ_2D = 10_000_000_000


# --- exact distances --------------------------------------------------------

def point_dist_sq_2d(p, q) -> Rational:
    dx = p[0] - q[0]
    dy = p[1] - q[1]
    return dx * dx + dy * dy


def point_dist(dim: int, p, q) -> Exact:
    if dim == 1:
        return abs(p - q)
    return sqrt_exact(point_dist_sq_2d(p, q))


def point_seg_dist_1d(p, a, b) -> Rational:
    lo, hi = (a, b) if a <= b else (b, a)
    if p < lo:
        return lo - p
    if p > hi:
        return p - hi
    return 0


def point_seg_dist_sq_2d(p, a, b) -> Rational:
    ab = (b[0] - a[0], b[1] - a[1])
    ap = (p[0] - a[0], p[1] - a[1])
    absq = ab[0] * ab[0] + ab[1] * ab[1]
    if absq == 0:
        return point_dist_sq_2d(p, a)
    dot = ap[0] * ab[0] + ap[1] * ab[1]
    if dot <= 0:
        return point_dist_sq_2d(p, a)
    if dot >= absq:
        return point_dist_sq_2d(p, b)
    cross = ab[0] * ap[1] - ab[1] * ap[0]
    return Fraction(cross * cross, absq) if isinstance(cross, int) \
        else (cross * cross) / absq


def point_seg_dist(dim: int, p, a, b) -> Exact:
    if dim == 1:
        return point_seg_dist_1d(p, a, b)
    return sqrt_exact(point_seg_dist_sq_2d(p, a, b))


def _orient(a, b, c) -> int:
    v = (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])
    return (v > 0) - (v < 0)


def segs_cross_2d(a, b, c, d) -> bool:
    """Proper interior crossing; touching cases are left to distance checks."""
    o1 = _orient(a, b, c)
    o2 = _orient(a, b, d)
    o3 = _orient(c, d, a)
    o4 = _orient(c, d, b)
    return o1 * o2 < 0 and o3 * o4 < 0


def seg_seg_within(dim: int, a, b, c, d, eps_or_sq) -> bool:
    """min dist(seg ab, seg cd) <= eps (1D) / eps^2 (2D, squared argument)."""
    if dim == 1:
        lo1, hi1 = (a, b) if a <= b else (b, a)
        lo2, hi2 = (c, d) if c <= d else (d, c)
        gap = max(lo2 - hi1, lo1 - hi2, 0)
        return gap <= eps_or_sq
    if segs_cross_2d(a, b, c, d):
        return 0 <= eps_or_sq
    return (point_seg_dist_sq_2d(a, c, d) <= eps_or_sq
            or point_seg_dist_sq_2d(b, c, d) <= eps_or_sq
            or point_seg_dist_sq_2d(c, a, b) <= eps_or_sq
            or point_seg_dist_sq_2d(d, a, b) <= eps_or_sq)


def square_exact(eps: Exact) -> Exact:
    """eps^2 for a nonnegative exact value."""
    if isinstance(eps, Radical):
        a, b, r = Fraction(eps.a), Fraction(eps.b), eps.r
        return make_radical(a * a + b * b * r, 2 * a * b, r)
    return eps * eps


# --- boundary free intervals (monotone sweep support) ------------------------

def boundary_interval(dim: int, p, a, b, eps):
    """Free parameter interval [lo, hi] of t -> dist(p, a + t*(b-a)) <= eps,
    clipped to [0, 1]; None when empty.  Endpoints are exact (Fraction for
    1D, possibly Radical for 2D).
    """
    if dim == 1:
        if a == b:
            return (Fraction(0), Fraction(1)) if abs(p - a) <= eps else None
        vlo = max(min(a, b), p - eps)
        vhi = min(max(a, b), p + eps)
        if vlo > vhi:
            return None
        d = b - a
        t1 = Fraction(vlo - a) / d
        t2 = Fraction(vhi - a) / d
        if t1 > t2:
            t1, t2 = t2, t1
        return (t1, t2)
    # 2D: |p - a - t(b-a)|^2 <= eps^2 is a quadratic in t
    absq = point_dist_sq_2d(a, b)
    eps_sq = square_exact(eps)
    if absq == 0:
        return (Fraction(0), Fraction(1)) \
            if point_dist_sq_2d(p, a) <= eps_sq else None
    ap = (p[0] - a[0], p[1] - a[1])
    ab = (b[0] - a[0], b[1] - a[1])
    dot = ap[0] * ab[0] + ap[1] * ab[1]
    c0 = ap[0] * ap[0] + ap[1] * ap[1] - eps_sq
    # absq*t^2 - 2*dot*t + c0 <= 0
    disc = Fraction(dot) ** 2 - Fraction(absq) * c0
    if disc < 0:
        return None
    mid = Fraction(dot) / absq
    half = Fraction(1) / absq
    t_lo = make_radical(mid, -half, disc)
    t_hi = make_radical(mid, half, disc)
    lo = t_lo if t_lo > 0 else Fraction(0)
    hi = t_hi if t_hi < 1 else Fraction(1)
    if lo > hi:
        return None
    return (lo, hi)


# --- integer scaling for the fast paths --------------------------------------

def scale_value(v: Rational, den: int):
    """v*den as a plain int, or None when not integral."""
    s = v * den
    if isinstance(s, Fraction):
        if s.denominator != 1:
            return None
        s = s.numerator
    return int(s)


def scale_pair_1d(P: Curve, Q: Curve):
    """(p_arr, q_arr, den) with coordinates scaled to int64 by den, or None.

    den carries an extra factor 2 so that half-distances between scaled
    vertices (the 1D critical values) remain integral.
    """
    if P.dim != 1:
        return None
    den = 2 * common_denominator(list(P.verts) + list(Q.verts))
    arrs = []
    for verts in (P.verts, Q.verts):
        a = []
        for v in verts:
            s = scale_value(v, den)
            if s is None or abs(s) > _MAX_ABS_1D:
                return None
            a.append(s)
        arrs.append(np.array(a, dtype=np.int64))
    return arrs[0], arrs[1], den


def scaled_1d(P: Curve, Q: Curve, eps: Rational):
    """(p_arr, q_arr, eps_scaled) as int64, or None."""
    if not isinstance(eps, (int, Fraction)):
        return None
    got = scale_pair_1d(P, Q)
    if got is None:
        return None
    p, q, den = got
    e = scale_value(eps, den)
    if e is None or abs(e) > _MAX_ABS_1D:
        return None
    return p, q, np.int64(e)


def scale_pair_2d(P: Curve, Q: Curve, max_abs: int = _MAX_ABS_2D):
    """((px, py, qx, qy), den) with int64 coordinate arrays, or None."""
    if P.dim != 2:
        return None
    coords = [c for v in P.verts for c in v] + [c for v in Q.verts for c in v]
    den = 2 * common_denominator(coords)
    arrs = []
    for pick in (0, 1):
        for verts in (P.verts, Q.verts):
            a = []
            for v in verts:
                s = scale_value(v[pick], den)
                if s is None or abs(s) > max_abs:
                    return None
                a.append(s)
            arrs.append(np.array(a, dtype=np.int64))
    px, qx, py, qy = arrs
    return (px, py, qx, qy), den


def scaled_2d(P: Curve, Q: Curve, eps_sq: Rational):
    """((px, py, qx, qy), eps_sq_scaled) int64, or None.

    Coordinates scale by den, so squared quantities scale by den^2;
    eps_sq must scale by den^2 to an integer.
    """
    if not isinstance(eps_sq, (int, Fraction)):
        return None
    got = scale_pair_2d(P, Q)
    if got is None:
        return None
    pts, den = got
    e = scale_value(eps_sq, den * den)
    if e is None or e > _MAX_EPS_SQ_2D:
        return None
    return pts, np.int64(e)


# --- pixel masks --------------------------------------------------------------

def vertex_mask(P: Curve, Q: Curve, eps: Exact) -> np.ndarray:
    """(|P|, |Q|) boolean: dist(p_i, q_j) <= eps."""
    if P.dim == 1:
        got = scaled_1d(P, Q, eps) if isinstance(eps, (int, Fraction)) else None
        if got is not None:
            p, q, e = got
            return np.abs(p[:, None] - q[None, :]) <= e
        return np.array([[abs(p - q) <= eps for q in Q.verts]
                         for p in P.verts], dtype=bool)
    eps_sq = square_exact(eps)
    got = scaled_2d(P, Q, eps_sq) if isinstance(eps_sq, (int, Fraction)) else None
    if got is not None:
        (px, py, qx, qy), e = got
        dx = px[:, None] - qx[None, :]
        dy = py[:, None] - qy[None, :]
        return dx * dx + dy * dy <= e
    return np.array([[point_dist_sq_2d(p, q) <= eps_sq for q in Q.verts]
                     for p in P.verts], dtype=bool)


def _point_seg_mask_1d(pv, qlo, qhi, e):
    # pv (k,), qlo/qhi (l,): gap(point, interval) <= e
    gap = np.maximum(qlo[None, :] - pv[:, None], pv[:, None] - qhi[None, :])
    return np.maximum(gap, 0) <= e


def _point_seg_mask_2d(px, py, ax, ay, bx, by, e):
    """dist^2(point_i, seg_j) <= e for int64 arrays (points k, segs l)."""
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
    # interior projection: cross^2 <= e * absq; endpoints otherwise
    interior = (dot > 0) & (dot < absq)
    res = np.where(dot <= 0, d_a <= e, d_b <= e)
    res = np.where(interior, cross * cross <= e * absq, res)
    return np.where(absq == 0, d_a <= e, res)


def _seg_seg_mask_2d(px, py, qx, qy, e):
    """min dist^2(P-edge i, Q-edge j) <= e, exact int64."""
    ax, ay = px[:-1], py[:-1]
    bx, by = px[1:], py[1:]
    cx, cy = qx[:-1], qy[:-1]
    dx_, dy_ = qx[1:], qy[1:]

    def orient(ux, uy, vx, vy, wx, wy):
        val = (vx - ux) * (wy - uy) - (vy - uy) * (wx - ux)
        return np.sign(val)

    o1 = orient(ax[:, None], ay[:, None], bx[:, None], by[:, None],
                cx[None, :], cy[None, :])
    o2 = orient(ax[:, None], ay[:, None], bx[:, None], by[:, None],
                dx_[None, :], dy_[None, :])
    o3 = orient(cx[None, :], cy[None, :], dx_[None, :], dy_[None, :],
                ax[:, None], ay[:, None])
    o4 = orient(cx[None, :], cy[None, :], dx_[None, :], dy_[None, :],
                bx[:, None], by[:, None])
    cross = (o1 * o2 < 0) & (o3 * o4 < 0)

    m = _point_seg_mask_2d(ax, ay, cx, cy, dx_, dy_, e)
    m |= _point_seg_mask_2d(bx, by, cx, cy, dx_, dy_, e)
    m |= _point_seg_mask_2d(cx, cy, ax, ay, bx, by, e).T
    m |= _point_seg_mask_2d(dx_, dy_, ax, ay, bx, by, e).T
    return m | cross


def pixel_mask(P: Curve, Q: Curve, eps: Exact) -> np.ndarray:
    """(2|P|-1, 2|Q|-1) boolean raster of the closed free space.

    Pixel (2i, 2j) is the corner (vertex i, vertex j); (2i+1, 2j) the
    boundary (P-edge i, vertex j); (2i, 2j+1) the boundary (vertex i,
    Q-edge j); (2i+1, 2j+1) the cell (edge i, edge j).
    """
    n, m = len(P), len(Q)
    mask = np.zeros((2 * n - 1, 2 * m - 1), dtype=bool)
    if P.dim == 1 and isinstance(eps, (int, Fraction)):
        got = scaled_1d(P, Q, eps)
        if got is not None:
            p, q, e = got
            qlo = np.minimum(q[:-1], q[1:])
            qhi = np.maximum(q[:-1], q[1:])
            plo = np.minimum(p[:-1], p[1:])
            phi = np.maximum(p[:-1], p[1:])
            mask[0::2, 0::2] = np.abs(p[:, None] - q[None, :]) <= e
            if m > 1:
                mask[0::2, 1::2] = _point_seg_mask_1d(p, qlo, qhi, e)
            if n > 1:
                mask[1::2, 0::2] = _point_seg_mask_1d(q, plo, phi, e).T
            if n > 1 and m > 1:
                gap = np.maximum(qlo[None, :] - phi[:, None],
                                 plo[:, None] - qhi[None, :])
                mask[1::2, 1::2] = np.maximum(gap, 0) <= e
            return mask
    if P.dim == 2:
        eps_sq = square_exact(eps)
        got = scaled_2d(P, Q, eps_sq) \
            if isinstance(eps_sq, (int, Fraction)) else None
        if got is not None:
            (px, py, qx, qy), e = got
            dx = px[:, None] - qx[None, :]
            dy = py[:, None] - qy[None, :]
            mask[0::2, 0::2] = dx * dx + dy * dy <= e
            if m > 1:
                mask[0::2, 1::2] = _point_seg_mask_2d(
                    px, py, qx[:-1], qy[:-1], qx[1:], qy[1:], e)
            if n > 1:
                mask[1::2, 0::2] = _point_seg_mask_2d(
                    qx, qy, px[:-1], py[:-1], px[1:], py[1:], e).T
            if n > 1 and m > 1:
                mask[1::2, 1::2] = _seg_seg_mask_2d(px, py, qx, qy, e)
            return mask
    return _pixel_mask_exact(P, Q, eps, mask)


def _pixel_mask_exact(P: Curve, Q: Curve, eps: Exact, mask: np.ndarray):
    dim = P.dim
    n, m = len(P), len(Q)
    eps_cmp = square_exact(eps) if dim == 2 else eps

    def pp(p, q):
        if dim == 1:
            return abs(p - q) <= eps_cmp
        return point_dist_sq_2d(p, q) <= eps_cmp

    def pseg(p, a, b):
        if dim == 1:
            return point_seg_dist_1d(p, a, b) <= eps_cmp
        return point_seg_dist_sq_2d(p, a, b) <= eps_cmp

    for i in range(n):
        for j in range(m):
            mask[2 * i, 2 * j] = pp(P.verts[i], Q.verts[j])
    for i in range(n):
        for j in range(m - 1):
            mask[2 * i, 2 * j + 1] = pseg(P.verts[i], Q.verts[j], Q.verts[j + 1])
    for i in range(n - 1):
        for j in range(m):
            mask[2 * i + 1, 2 * j] = pseg(Q.verts[j], P.verts[i], P.verts[i + 1])
    for i in range(n - 1):
        for j in range(m - 1):
            mask[2 * i + 1, 2 * j + 1] = seg_seg_within(
                dim, P.verts[i], P.verts[i + 1], Q.verts[j], Q.verts[j + 1],
                eps_cmp)
    return mask


# --- introspection ------------------------------------------------------------

class FreeSpaceDiagram:
    """Per-cell view of the free space at a fixed eps (for tests/rendering)."""

    def __init__(self, P: Curve, Q: Curve, eps: Exact):
        if P.dim != Q.dim:
            raise ValueError("dimension mismatch")
        self.P = P
        self.Q = Q
        self.eps = eps

    def corner_free(self, i: int, j: int) -> bool:
        if self.P.dim == 1:
            return abs(self.P.verts[i] - self.Q.verts[j]) <= self.eps
        return point_dist_sq_2d(self.P.verts[i], self.Q.verts[j]) \
            <= square_exact(self.eps)

    def vertical_interval(self, i: int, j: int):
        """Free t-interval on boundary (vertex i of P, edge j of Q)."""
        return boundary_interval(self.P.dim, self.P.verts[i],
                                 self.Q.verts[j], self.Q.verts[j + 1], self.eps)

    def horizontal_interval(self, i: int, j: int):
        """Free t-interval on boundary (edge i of P, vertex j of Q)."""
        return boundary_interval(self.P.dim, self.Q.verts[j],
                                 self.P.verts[i], self.P.verts[i + 1], self.eps)

    def cell_nonempty(self, i: int, j: int) -> bool:
        eps_cmp = square_exact(self.eps) if self.P.dim == 2 else self.eps
        return seg_seg_within(self.P.dim,
                              self.P.verts[i], self.P.verts[i + 1],
                              self.Q.verts[j], self.Q.verts[j + 1], eps_cmp)

    def free_at(self, x, y) -> bool:
        p = self.P.at(x)
        q = self.Q.at(y)
        if self.P.dim == 1:
            return abs(p - q) <= self.eps
        return point_dist_sq_2d(p, q) <= square_exact(self.eps)
