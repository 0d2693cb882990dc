"""Linear-time weak Fréchet distance for 1D curves.

Pipeline: canonicalize both curves (weak distance 0 simplification), locate
the spanning edge of each (an edge containing both the global min and max),
split each curve there, and run the greedy width computation on the two
growing halves.  Each stage is linear in the input size.

A curve is canonical when no four consecutive vertices form a nested zigzag
(w <= y <= x <= z or z <= x <= y <= w), no two consecutive vertices are
equal, and no vertex lies between its neighbours.  A growing curve is a
canonical curve whose last edge contains the global min and max.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np

from . import fastpath
from .curve import Curve, reverse, subcurve
from .exactnum import Exact, common_denominator, to_exact
from .freespace import point_seg_dist_1d, scale_value

_MAX_ABS = 1 << 40


def _require_1d(P: Curve) -> None:
    if P.dim != 1:
        raise ValueError("this operation requires 1D curves")


def _as_int_arrays(curves):
    """int64 arrays plus the shared denominator, or None when unscalable."""
    den = common_denominator([v for c in curves for v in c.verts])
    arrs = []
    for c in curves:
        out = np.empty(len(c), dtype=np.int64)
        for k, v in enumerate(c.verts):
            s = scale_value(v, den)
            if s is None or abs(s) > _MAX_ABS:
                return None
            out[k] = s
        arrs.append(out)
    return arrs, den


# --- canonical form -------------------------------------------------------------

def _canonical_push(vals: list, x) -> None:
    vals.append(x)
    while True:
        k = len(vals)
        if k >= 2 and vals[-1] == vals[-2]:
            vals.pop()
            continue
        if k >= 3:
            a, b, c = vals[-3], vals[-2], vals[-1]
            if a <= b <= c or c <= b <= a:
                vals.pop(-2)
                continue
        if k >= 4:
            w, x0, y0, z = vals[-4], vals[-3], vals[-2], vals[-1]
            if (w <= y0 <= x0 <= z) or (z <= x0 <= y0 <= w):
                vals.pop(-2)
                vals.pop(-2)
                continue
        break


def canonicalize(P: Curve) -> Curve:
    """Weak-distance-0 simplification into canonical form.

    Endpoints are preserved.  Each removal replaces a detour between two
    vertices by the straight edge between them, which any matching can
    traverse at no extra width, so d_wF(P, canonicalize(P)) = 0.
    """
    _require_1d(P)
    if fastpath.HAVE_NUMBA:
        got = _as_int_arrays([P])
        if got is not None:
            (arr,), den = got
            out = np.empty_like(arr)
            k = fastpath.canonicalize_ints(arr, out)
            if den == 1:
                return Curve(1, tuple(int(v) for v in out[:k]))
            return Curve(1, tuple(Fraction(int(v), den) for v in out[:k]))
    vals = []
    for v in P.verts:
        _canonical_push(vals, v)
    return Curve(1, tuple(vals))


def is_canonical(P: Curve) -> bool:
    """No nested four-vertex zigzag, no flat or collinear triple."""
    _require_1d(P)
    v = P.verts
    for a, b in zip(v, v[1:]):
        if a == b:
            return False
    for a, b, c in zip(v, v[1:], v[2:]):
        if a <= b <= c or c <= b <= a:
            return False
    for w, x, y, z in zip(v, v[1:], v[2:], v[3:]):
        if (w <= y <= x <= z) or (z <= x <= y <= w):
            return False
    return True


def is_growing(P: Curve) -> bool:
    """Canonical and the last edge spans the curve's full value range.

    Single-vertex curves have no last edge and do not qualify.
    """
    _require_1d(P)
    if len(P) == 1 or not is_canonical(P):
        return False
    lo, hi = min(P.verts), max(P.verts)
    a, b = P.verts[-2], P.verts[-1]
    return min(a, b) == lo and max(a, b) == hi


def find_spanning_edge(P: Curve) -> int:
    """1-based index of the first edge containing the global min and max.

    Canonical curves with at least one edge always have one.
    """
    _require_1d(P)
    if len(P) == 1:
        raise ValueError("a single-vertex curve has no edges")
    lo, hi = min(P.verts), max(P.verts)
    for i in range(len(P) - 1):
        a, b = P.verts[i], P.verts[i + 1]
        if min(a, b) == lo and max(a, b) == hi:
            return i + 1
    raise ValueError("curve has no spanning edge; canonicalize it first")


# --- greedy matching on growing curves --------------------------------------------

def point_segment_distance_1d(p, seg) -> Exact:
    """Distance from a value to the closed interval spanned by a segment."""
    a, b = seg
    return to_exact(point_seg_dist_1d(to_exact(p), to_exact(a), to_exact(b)))


def _greedy_pure(pv, qv):
    n, m = len(pv), len(qv)
    r = abs(pv[0] - qv[0])
    i = j = 0
    while i < n - 2 or j < m - 2:
        dq = point_seg_dist_1d(qv[j + 1], pv[i], pv[i + 1]) if j < m - 2 \
            else None
        if dq is not None and dq <= r:
            j += 1
        elif i < n - 2 and (dq is None or
                            point_seg_dist_1d(pv[i + 1], qv[j],
                                              qv[j + 1]) <= dq):
            d = point_seg_dist_1d(pv[i + 1], qv[j], qv[j + 1])
            if d > r:
                r = d
            i += 1
        else:
            if dq > r:
                r = dq
            j += 1
    return r


def greedy_matching(P: Curve, Q: Curve) -> Exact:
    """Width of the greedy simultaneous walk over two growing curves.

    Advances Q for free while its next vertex lies within the current width
    of the active P-edge; otherwise pays the cheaper of the two advances.
    Equals the minimum width over all paths from the start pair into the
    final cell; the last vertex pair never contributes.
    """
    _require_1d(P)
    _require_1d(Q)
    if not is_growing(P) or not is_growing(Q):
        raise ValueError("greedy matching requires growing curves")
    if fastpath.HAVE_NUMBA:
        got = _as_int_arrays([P, Q])
        if got is not None:
            (gp, gq), den = got
            v = fastpath.greedy_width_ints(gp, gq)
            return to_exact(Fraction(int(v), den))
    return to_exact(_greedy_pure(P.verts, Q.verts))


# --- full pipeline -----------------------------------------------------------------

def weak_frechet_1d_linear(P: Curve, Q: Curve) -> Exact:
    """Endpoint-restricted weak Fréchet distance of 1D curves, linear time.

    Both curves are canonicalized, split at their spanning edges into a
    left half and a reversed right half (all four halves are growing), and
    the answer is the larger of the two greedy widths.  Any matching can be
    rerouted through the spanning cell, so the two halves are independent.
    """
    _require_1d(P)
    _require_1d(Q)
    cp, cq = canonicalize(P), canonicalize(Q)
    if len(cp) == 1 and len(cq) == 1:
        return to_exact(abs(cp.verts[0] - cq.verts[0]))
    if len(cp) == 1 or len(cq) == 1:
        if len(cq) == 1:
            cp, cq = cq, cp
        # a point against an interval-sweeping curve: the far end decides
        p = cp.verts[0]
        lo = abs(p - min(cq.verts))
        hi = abs(p - max(cq.verts))
        return to_exact(lo if lo > hi else hi)
    si, sj = find_spanning_edge(cp), find_spanning_edge(cq)
    pl = subcurve(cp, 1, si + 1)
    pr = reverse(subcurve(cp, si, len(cp)))
    ql = subcurve(cq, 1, sj + 1)
    qr = reverse(subcurve(cq, sj, len(cq)))
    a = greedy_matching(pl, ql)
    b = greedy_matching(pr, qr)
    return a if a > b else b


def _linear_value_ints(p: np.ndarray, q: np.ndarray) -> int:
    """Benchmark path: the full pipeline on int64 arrays, no Curve objects."""
    bp = np.empty_like(p)
    bq = np.empty_like(q)
    kp = fastpath.canonicalize_ints(p, bp)
    kq = fastpath.canonicalize_ints(q, bq)
    cp, cq = bp[:kp], bq[:kq]
    if kp == 1 and kq == 1:
        return int(abs(cp[0] - cq[0]))
    if kp == 1 or kq == 1:
        if kq == 1:
            cp, cq = cq, cp
        return int(max(abs(cp[0] - cq.min()), abs(cp[0] - cq.max())))
    si = fastpath.spanning_edge_ints(cp)
    sj = fastpath.spanning_edge_ints(cq)
    a = fastpath.greedy_width_ints(cp[:si + 2], cq[:sj + 2])
    b = fastpath.greedy_width_ints(cp[si:][::-1].copy(), cq[sj:][::-1].copy())
    return int(max(a, b))
