"""Compiled integer kernels for the hot decision and value loops.

Everything here operates on int64 arrays produced by the scaling helpers in
`freespace`; callers fall back to the exact rational implementations when
numba is unavailable or the inputs do not scale to machine integers.

The 1D strong/partial decision avoids divisions entirely: on a Q-edge with
direction sign s, the map y -> s*Q(y) is nondecreasing, so free windows and
reachability thresholds on one boundary can be compared as plain integers.
Thresholds are only ever compared within a single boundary, which keeps the
sign trick sound even across reversing edges.
"""

from __future__ import annotations

import numpy as np

try:
    from numba import njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    HAVE_NUMBA = False

    def njit(*args, **kwargs):
        if args and callable(args[0]):
            return args[0]

        def wrap(f):
            return f

        return wrap


_INF = np.int64(1) << np.int64(60)


@njit(cache=True)
def decide_strong_1d(p, q, e, partial):
    """Monotone reachability through the closed free space, 1D integer data.

    p, q: int64 vertex arrays with n, m >= 2; e: int64 threshold >= 0.
    partial=True seeds the whole left column and accepts any point of the
    right column; partial=False runs corner-to-corner.
    """
    n = p.shape[0]
    m = q.shape[0]
    INF = _INF

    # vreach[j]: minimal reachable s*Q(y) on the boundary (x = i, Q-edge j),
    # INF when unreachable; windows are recomputed per column
    vreach = np.empty(m - 1, dtype=np.int64)
    if partial:
        for j in range(m - 1):
            s = np.int64(1) if q[j + 1] >= q[j] else np.int64(-1)
            lo = max(s * q[j], s * p[0] - e)
            hi = min(s * q[j + 1], s * p[0] + e)
            vreach[j] = lo if lo <= hi else INF
    else:
        alive = abs(p[0] - q[0]) <= e
        for j in range(m - 1):
            if alive:
                s = np.int64(1) if q[j + 1] >= q[j] else np.int64(-1)
                vreach[j] = s * q[j]
                alive = abs(p[0] - q[j + 1]) <= e
            else:
                vreach[j] = INF

    # the bottom row is enterable only by walking right from corner (0, 0);
    # a monotone path cannot come back down to y = 0 from a higher start
    bottom_alive = abs(p[0] - q[0]) <= e

    for i in range(n - 1):
        sx = np.int64(1) if p[i + 1] >= p[i] else np.int64(-1)
        pi1 = p[i + 1]
        # bottom boundary of cell (i, 0), threshold in s*P(x) coordinates
        b = sx * p[i] if bottom_alive else INF
        bottom_alive = bottom_alive and abs(pi1 - q[0]) <= e
        for j in range(m - 1):
            s = np.int64(1) if q[j + 1] >= q[j] else np.int64(-1)
            vl = vreach[j]
            # right boundary (x = i+1, Q-edge j)
            lo_r = max(s * q[j], s * pi1 - e)
            hi_r = min(s * q[j + 1], s * pi1 + e)
            nv = INF
            if lo_r <= hi_r:
                if b < INF:
                    nv = lo_r
                elif vl < INF and vl <= hi_r:
                    nv = vl if vl > lo_r else lo_r
            vreach[j] = nv
            # top boundary (P-edge i, y = j+1)
            lo_t = max(sx * p[i], sx * q[j + 1] - e)
            hi_t = min(sx * pi1, sx * q[j + 1] + e)
            nb = INF
            if lo_t <= hi_t:
                if vl < INF:
                    nb = lo_t
                elif b < INF and b <= hi_t:
                    nb = b if b > lo_t else lo_t
            b = nb

    if partial:
        for j in range(m - 1):
            if vreach[j] < INF:
                return True
        return False
    if abs(p[n - 1] - q[m - 1]) > e:
        return False
    return vreach[m - 2] < INF or b < INF


@njit(cache=True)
def discrete_value_1d(p, q, partial):
    """Exact discrete width: min over monotone couplings of the max gap.

    partial=True seeds every start column and takes the best end column,
    so Q contributes only a contiguous index window.
    """
    n = p.shape[0]
    m = q.shape[0]
    prev = np.empty(m, dtype=np.int64)
    cur = np.empty(m, dtype=np.int64)
    for j in range(m):
        d = abs(p[0] - q[j])
        if partial:
            prev[j] = d
        else:
            prev[j] = d if j == 0 else max(prev[j - 1], d)
    for i in range(1, n):
        d = abs(p[i] - q[0])
        cur[0] = max(prev[0], d)
        for j in range(1, m):
            best = prev[j]
            if prev[j - 1] < best:
                best = prev[j - 1]
            if cur[j - 1] < best:
                best = cur[j - 1]
            d = abs(p[i] - q[j])
            cur[j] = best if best > d else d
        prev, cur = cur, prev
    if partial:
        best = prev[0]
        for j in range(1, m):
            if prev[j] < best:
                best = prev[j]
        return best
    return prev[m - 1]


@njit(cache=True)
def discrete_value_2d(px, py, qx, qy, partial):
    """Same DP on squared Euclidean distances (monotone, so exact)."""
    n = px.shape[0]
    m = qx.shape[0]
    prev = np.empty(m, dtype=np.int64)
    cur = np.empty(m, dtype=np.int64)
    for j in range(m):
        dx = px[0] - qx[j]
        dy = py[0] - qy[j]
        d = dx * dx + dy * dy
        if partial:
            prev[j] = d
        else:
            prev[j] = d if j == 0 else max(prev[j - 1], d)
    for i in range(1, n):
        dx = px[i] - qx[0]
        dy = py[i] - qy[0]
        d = dx * dx + dy * dy
        cur[0] = max(prev[0], d)
        for j in range(1, m):
            best = prev[j]
            if prev[j - 1] < best:
                best = prev[j - 1]
            if cur[j - 1] < best:
                best = cur[j - 1]
            dx = px[i] - qx[j]
            dy = py[i] - qy[j]
            d = dx * dx + dy * dy
            cur[j] = best if best > d else d
        prev, cur = cur, prev
    if partial:
        best = prev[0]
        for j in range(1, m):
            if prev[j] < best:
                best = prev[j]
        return best
    return prev[m - 1]


@njit(cache=True)
def canonicalize_ints(a, out):
    """Stack pass removing redundant 1D vertices; returns the new length.

    Rules, re-applied until stable after every push: drop a vertex equal to
    the stack top; drop a middle vertex lying between its neighbours; drop
    the middle two of a window (w, x, y, z) when w <= y <= x <= z or
    z <= x <= y <= w (an up-down-up wiggle contained in the outer span).
    """
    k = 0
    for idx in range(a.shape[0]):
        v = a[idx]
        if k >= 1 and out[k - 1] == v:
            continue
        out[k] = v
        k += 1
        changed = True
        while changed:
            changed = False
            if k >= 2 and out[k - 1] == out[k - 2]:
                k -= 1
                changed = True
                continue
            if k >= 3:
                x0 = out[k - 3]
                x1 = out[k - 2]
                x2 = out[k - 1]
                if (x0 <= x1 <= x2) or (x0 >= x1 >= x2):
                    out[k - 2] = x2
                    k -= 1
                    changed = True
                    continue
            if k >= 4:
                w = out[k - 4]
                x = out[k - 3]
                y = out[k - 2]
                z = out[k - 1]
                if (w <= y and y <= x and x <= z) or \
                        (z <= x and x <= y and y <= w):
                    out[k - 3] = z
                    k -= 2
                    changed = True
    return k


@njit(cache=True)
def _seg_gap(v, a, b):
    lo = a if a <= b else b
    hi = b if a <= b else a
    if v < lo:
        return lo - v
    if v > hi:
        return v - hi
    return np.int64(0)


@njit(cache=True)
def greedy_width_ints(p, q):
    """Minimum width over paths from the first to the last free-space cell
    of two growing integer curves.

    A Q-advance that costs nothing is taken first; otherwise the cheaper of
    the two paying advances (P on ties).  Paying the cheaper side is what
    keeps the running width a lower bound on every escape from the current
    cell, since leaving through either boundary line costs at least that
    side's point-to-edge distance.
    """
    n = p.shape[0]
    m = q.shape[0]
    r = abs(p[0] - q[0])
    i = 0
    j = 0
    while i < n - 2 or j < m - 2:
        if j < m - 2 and _seg_gap(q[j + 1], p[i], p[i + 1]) <= r:
            j += 1
        elif i < n - 2 and (j >= m - 2 or
                            _seg_gap(p[i + 1], q[j], q[j + 1]) <=
                            _seg_gap(q[j + 1], p[i], p[i + 1])):
            d = _seg_gap(p[i + 1], q[j], q[j + 1])
            if d > r:
                r = d
            i += 1
        else:
            d = _seg_gap(q[j + 1], p[i], p[i + 1])
            if d > r:
                r = d
            j += 1
    return r


@njit(cache=True)
def spanning_edge_ints(a):
    """First edge attaining both the global min and max; -1 if none."""
    n = a.shape[0]
    lo = a[0]
    hi = a[0]
    for t in range(1, n):
        if a[t] < lo:
            lo = a[t]
        if a[t] > hi:
            hi = a[t]
    for t in range(n - 1):
        if (a[t] == lo and a[t + 1] == hi) or \
                (a[t] == hi and a[t + 1] == lo):
            return t
    return -1
