"""Orthogonal-vectors instances and hard curve-pair generators.

An orthogonal-vectors (OV) instance is a pair of boolean-vector sets.  The
generators here turn such an instance into a pair of polygonal curves whose
distance is at most 1 when the instance contains an orthogonal pair and at
least 3 otherwise, so a distance engine doubles as an OV solver.  Four
families are provided, one per target variant:

  build_partial_reduction   1D pair for the partial distance
  build_full_reduction      1D pair for the standard distance
  build_weak_discrete_1d    1D vertex sequences for the discrete weak distance
  build_weak_continuous_2d  2D pair for the weak distance

The 1D strong-variant curves are pulse trains over the coordinate range
{0,...,11}; after assembly they are simplified by removing vertices that lie
between their neighbours, and named bookmarks (1-based vertex indices) locate
the functional pieces inside the simplified curve.  The weak-variant curves
are used exactly as assembled.  subdivide_for_discrete converts a continuous
1D problem into an equivalent discrete one by inserting extra vertices.
"""

from __future__ import annotations

import json
from bisect import bisect_left, bisect_right
from dataclasses import dataclass
from enum import Enum
from typing import Dict, List, Optional, Sequence, Tuple

from .curve import Curve, curve1, curve2, curve_from_obj, curve_to_obj, normalize_collinear
from .engines import critical_values

DEFAULT_CONSTANT_D_THRESHOLD = 1

BUILDER_VARIANTS = ("partial", "frechet", "weak1d", "weak2d")


class TrivialityClass(Enum):
    """Instance classes that admit shortcut answers, plus the general case."""

    NONTRIVIAL = "Nontrivial"
    EMPTY_SIDE = "EmptySide"
    CONTAINS_ZERO_VECTOR = "ContainsZeroVector"
    CONSTANT_DIMENSION = "ConstantDimension"


@dataclass(frozen=True)
class OVInstance:
    dim: int
    u_rows: Tuple[Tuple[int, ...], ...]
    v_rows: Tuple[Tuple[int, ...], ...]

    def __post_init__(self):
        if self.dim < 1:
            raise ValueError("vector dimension must be >= 1")
        for side in (self.u_rows, self.v_rows):
            for row in side:
                if len(row) != self.dim:
                    raise ValueError("all vectors must have the declared dimension")
                if any(b not in (0, 1) for b in row):
                    raise ValueError("vector entries must be 0 or 1")

    @property
    def n(self) -> int:
        return len(self.u_rows)

    @property
    def m(self) -> int:
        return len(self.v_rows)


def ov_instance(dim: int, u_rows: Sequence[Sequence[int]],
                v_rows: Sequence[Sequence[int]]) -> OVInstance:
    return OVInstance(dim,
                      tuple(tuple(int(b) for b in row) for row in u_rows),
                      tuple(tuple(int(b) for b in row) for row in v_rows))


def classify_instance(inst: OVInstance,
                      constant_d_threshold: int = DEFAULT_CONSTANT_D_THRESHOLD
                      ) -> TrivialityClass:
    """Priority order: empty side, zero vector, small fixed dimension."""
    if inst.n == 0 or inst.m == 0:
        return TrivialityClass.EMPTY_SIDE
    zero = (0,) * inst.dim
    if zero in inst.u_rows or zero in inst.v_rows:
        return TrivialityClass.CONTAINS_ZERO_VECTOR
    if inst.dim <= constant_d_threshold:
        return TrivialityClass.CONSTANT_DIMENSION
    return TrivialityClass.NONTRIVIAL


def brute_force_ov(inst: OVInstance) -> Optional[Tuple[int, int]]:
    """Lexicographically first orthogonal pair as 1-based indices, or None."""
    for i, u in enumerate(inst.u_rows):
        for j, v in enumerate(inst.v_rows):
            if all(a * b == 0 for a, b in zip(u, v)):
                return (i + 1, j + 1)
    return None


# --- instance file format ---------------------------------------------------
#
#   <d>
#   U
#   <n bitstring rows of length d>
#   V
#   <m bitstring rows>

def ov_dumps(inst: OVInstance) -> str:
    lines = [str(inst.dim), "U"]
    lines += ["".join(str(b) for b in row) for row in inst.u_rows]
    lines.append("V")
    lines += ["".join(str(b) for b in row) for row in inst.v_rows]
    return "\n".join(lines) + "\n"


def ov_loads(text: str) -> OVInstance:
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    if len(lines) < 3:
        raise ValueError("instance file needs a dimension line and U/V sections")
    try:
        dim = int(lines[0])
    except ValueError:
        raise ValueError(f"first line must be the dimension, got {lines[0]!r}")
    if lines[1] != "U":
        raise ValueError("second line must be 'U'")
    try:
        v_at = lines.index("V", 2)
    except ValueError:
        raise ValueError("missing 'V' section")

    def rows(raw):
        out = []
        for ln in raw:
            if set(ln) - {"0", "1"}:
                raise ValueError(f"bad bitstring row {ln!r}")
            out.append(tuple(int(c) for c in ln))
        return tuple(out)

    return OVInstance(dim, rows(lines[2:v_at]), rows(lines[v_at + 1:]))


def _require_nontrivial(inst: OVInstance) -> None:
    cls = classify_instance(inst)
    if cls is not TrivialityClass.NONTRIVIAL:
        raise ValueError(f"gadget construction needs a nontrivial instance, got {cls.value}")


# --- 1D strong-variant pieces -------------------------------------------------
#
# Raw pieces keep every junction vertex; assembly concatenates them and a
# single simplification pass removes vertices lying between their neighbours.
# Bookmark positions are tracked through that pass, so they are only allowed
# on vertices that survive (strict local extrema and endpoints).

def _p_vec_raw(u: Sequence[int]) -> List[int]:
    seq = [0]
    for bit in u:
        seq += [10 - 2 * bit, 4]
    seq.append(0)
    return seq


def _q_vec_raw(v: Sequence[int]) -> List[int]:
    seq = [1]
    for bit in v:
        seq += [9 + 2 * bit, 3]
    seq.append(1)
    return seq


def _p_star_raw(d: int) -> List[int]:
    return [2] + [10, 4] * d + [2]


def _p_plus_raw(d: int) -> List[int]:
    return [4] + [8, 6] * d + [4]


def _q_star_raw(d: int) -> List[int]:
    return [3] + [9, 5] * d + [3]


_Q_PLUS_RAW = [5, 7, 5]


def _p_sep_raw(d: int) -> Tuple[List[int], int, int]:
    """Separator between consecutive U-vector gadgets.

    Returns (raw values, index of the low vertex opening the doubled middle
    block, index of the one closing it); those two become the a/b bookmarks.
    """
    plus = _p_plus_raw(d)
    seq = [0] + _p_star_raw(d) + [2] + plus
    ia = len(seq)
    seq += [2] + plus + plus
    ib = len(seq)
    seq += [2] + plus + [2] + _p_star_raw(d) + [0]
    return seq, ia, ib


def _p_enter_raw(d: int) -> Tuple[List[int], int, int]:
    """Entry ramp of the P curve: spike train, then a separator-like tail."""
    plus = _p_plus_raw(d)
    seq = [4, 10] * (d + 1)
    ia = len(seq)
    seq += [2] + plus + plus
    ib = len(seq)
    seq += [2] + plus + [2] + _p_star_raw(d) + [0]
    return seq, ia, ib


def _q_sep_raw(d: int) -> Tuple[List[int], Dict[str, int]]:
    """Separator copy on the Q side with its four bookmark offsets."""
    star = _q_star_raw(d)
    seq = [1] + star + [1]
    marks = {"sq": 0}
    marks["l"] = len(seq) + 2 * d - 2  # last floor of star 2 that survives
    seq += star
    marks["c"] = len(seq) + len(star) - 1  # junction of stars 3 and 4
    seq += star + star
    marks["r"] = len(seq) + 2  # first floor of star 5
    seq += star + [1] + star
    marks["tq"] = len(seq)
    seq += [1]
    return seq, marks


def _assemble_partial_p(inst: OVInstance) -> Tuple[List[int], Dict[str, int]]:
    d, n = inst.dim, inst.n
    vals: List[int] = []
    anchors: Dict[str, int] = {}

    def put(seq, marks=()):
        base = len(vals)
        for name, local in marks:
            anchors[name] = base + local
        vals.extend(seq)

    enter, ea, eb = _p_enter_raw(d)
    put(enter, [("a_0", ea), ("b_0", eb)])
    for i, u in enumerate(inst.u_rows):
        useq = _p_vec_raw(u)
        put(useq, [(f"s_{i}", 0), (f"t_{i}", len(useq) - 1)])
        if i < n - 1:
            sep, sa, sb = _p_sep_raw(d)
            put(sep, [(f"a_{i + 1}", sa), (f"b_{i + 1}", sb)])
    L = len(enter)
    put(enter[::-1], [(f"a_{n}", L - 1 - eb), (f"b_{n}", L - 1 - ea)])
    return vals, anchors


def _assemble_partial_q(inst: OVInstance) -> Tuple[List[int], Dict[str, int]]:
    d, n, m = inst.dim, inst.n, inst.m
    vals: List[int] = []
    anchors: Dict[str, int] = {}
    for k in range(n + m):
        if k > 0:
            vals.extend(_q_vec_raw(inst.v_rows[(k - 1) % m]))
        sep, marks = _q_sep_raw(d)
        base = len(vals)
        for name, local in marks.items():
            anchors[f"{name}_{k}"] = base + local
        vals.extend(sep)
    return vals, anchors


def _p_start_raw(d: int, m: int) -> List[int]:
    plus = _p_plus_raw(d)
    skip1 = [6, 4, 6] + plus + [6, 4, 6]
    skip2 = plus + plus + plus + [2] + plus + _p_star_raw(d) + plus + [2] + plus
    return [6] + skip1 * (m - 1) + skip2 * m


def _q_start_raw(d: int, m: int) -> List[int]:
    skip2 = _Q_PLUS_RAW + _Q_PLUS_RAW + [7, 3, 7] + _q_star_raw(d) + [7, 3, 7]
    skip3 = [11, 3] * d + [1]
    return _Q_PLUS_RAW * (m - 1) + skip2 * m + skip3


# --- simplification with bookmark tracking -----------------------------------

def _normalize_tracked(vals: Sequence[int]) -> Tuple[List[int], Dict[int, int]]:
    """Mirror of normalize_collinear that maps raw indices to surviving ones.

    Raw indices of removed duplicates transfer to the equal-valued survivor;
    indices of removed strict-middle vertices are dropped.
    """
    stack: List[List] = []  # [value, [raw indices]]
    for ridx, v in enumerate(vals):
        stack.append([v, [ridx]])
        while len(stack) >= 3:
            lo, hi = stack[-3][0], stack[-1][0]
            mid = stack[-2]
            if not (min(lo, hi) <= mid[0] <= max(lo, hi)):
                break
            del stack[-2]
            if mid[0] == stack[-1][0]:
                stack[-1][1] = mid[1] + stack[-1][1]
            elif mid[0] == stack[-2][0]:
                stack[-2][1].extend(mid[1])
    out = [entry[0] for entry in stack]
    raw_to_new: Dict[int, int] = {}
    for pos, entry in enumerate(stack):
        for rid in entry[1]:
            raw_to_new[rid] = pos
    return out, raw_to_new


def _finish_1d(vals: Sequence[int], anchors: Dict[str, int]) -> Tuple[Curve, Dict[str, int]]:
    out, raw_to_new = _normalize_tracked(vals)
    curve = curve1(out)
    assert curve.verts == normalize_collinear(curve1(vals)).verts
    marks = {}
    for name, ridx in anchors.items():
        if ridx not in raw_to_new:
            raise AssertionError(f"bookmark {name} did not survive simplification")
        marks[name] = raw_to_new[ridx] + 1  # vertex indices are 1-based
    return curve, marks


# --- gadget pair container ----------------------------------------------------

@dataclass(frozen=True)
class GadgetCurvePair:
    variant: str
    p: Curve
    q: Curve
    bookmarks: Dict[str, int]


def pair_to_obj(pair: GadgetCurvePair) -> dict:
    return {"variant": pair.variant,
            "p": curve_to_obj(pair.p),
            "q": curve_to_obj(pair.q),
            "bookmarks": dict(sorted(pair.bookmarks.items()))}


def pair_from_obj(obj: dict) -> GadgetCurvePair:
    return GadgetCurvePair(obj["variant"],
                           curve_from_obj(obj["p"]),
                           curve_from_obj(obj["q"]),
                           {k: int(v) for k, v in obj["bookmarks"].items()})


def pair_dumps(pair: GadgetCurvePair) -> str:
    return json.dumps(pair_to_obj(pair), separators=(",", ":"), sort_keys=True)


def pair_loads(text: str) -> GadgetCurvePair:
    return pair_from_obj(json.loads(text))


# Expected coordinate under each bookmark family; checked after every build.
_MARK_VALUES = {"a": 2, "b": 2, "s": 0, "t": 0, "c": 3, "l": 5, "r": 5,
                "sq": 1, "tq": 1}


def _check_marks(pair: GadgetCurvePair) -> None:
    for name, idx in pair.bookmarks.items():
        family = name.split("_", 1)[0]
        curve = pair.q if family in ("c", "l", "r", "sq", "tq") else pair.p
        if not 1 <= idx <= len(curve):
            raise AssertionError(f"bookmark {name} out of range")
        if curve.verts[idx - 1] != _MARK_VALUES[family]:
            raise AssertionError(f"bookmark {name} landed on {curve.verts[idx - 1]}")


def _check_range(curve: Curve) -> None:
    if any(v < 0 or v > 11 for v in curve.verts):
        raise AssertionError("strong-variant gadget coordinates must stay in 0..11")


# --- public builders -----------------------------------------------------------

def build_vector_gadgets(data, side: str = "P") -> Curve:
    """Single gadget curve: per-vector pieces ("P", "Q" from a bit vector) or
    the fixed separator pieces ("P*", "Q*", "P+" from the dimension, "Q+").
    """
    if side == "P":
        raw = _p_vec_raw(tuple(data))
    elif side == "Q":
        raw = _q_vec_raw(tuple(data))
    elif side in ("P*", "Q*", "P+"):
        d = int(data)
        if d < 1:
            raise ValueError("dimension must be >= 1")
        raw = {"P*": _p_star_raw, "Q*": _q_star_raw, "P+": _p_plus_raw}[side](d)
    elif side == "Q+":
        raw = list(_Q_PLUS_RAW)
    else:
        raise ValueError(f"unknown gadget side {side!r}")
    return normalize_collinear(curve1(raw))


def build_partial_reduction(inst: OVInstance) -> GadgetCurvePair:
    """1D pair whose partial distance is <= 1 iff the instance has an
    orthogonal pair (and >= 3 otherwise)."""
    _require_nontrivial(inst)
    p, pmarks = _finish_1d(*_assemble_partial_p(inst))
    q, qmarks = _finish_1d(*_assemble_partial_q(inst))
    pair = GadgetCurvePair("partialF", p, q, {**pmarks, **qmarks})
    _check_marks(pair)
    _check_range(p)
    _check_range(q)
    n, m, d = inst.n, inst.m, inst.dim
    # size constants fixed once from the piece arithmetic (d >= 2)
    assert len(p) <= 29 * n * d and len(q) <= 18 * (n + m) * d
    return pair


def build_full_reduction(inst: OVInstance) -> GadgetCurvePair:
    """1D pair for the standard distance: the partial-variant pair wrapped in
    guard runs that pin both endpoints."""
    _require_nontrivial(inst)
    d, m = inst.dim, inst.m

    pvals, panchors = _assemble_partial_p(inst)
    start = _p_start_raw(d, m)
    shifted = {name: idx + len(start) for name, idx in panchors.items()}
    p, pmarks = _finish_1d(start + pvals + start[::-1], shifted)

    qvals, qanchors = _assemble_partial_q(inst)
    qstart = _q_start_raw(d, m)
    qshifted = {name: idx + len(qstart) for name, idx in qanchors.items()}
    q, qmarks = _finish_1d(qstart + qvals + qstart[::-1], qshifted)

    pair = GadgetCurvePair("F", p, q, {**pmarks, **qmarks})
    _check_marks(pair)
    _check_range(p)
    _check_range(q)
    n = inst.n
    # size constants fixed once from the piece arithmetic (d >= 2)
    assert len(p) <= 40 * (n + m) * d and len(q) <= 33 * (n + m) * d
    return pair


def _weak_p_coord(i: int, bit: int) -> int:
    return 6 * i + 2 - 2 * bit


def _weak_q_coord(i: int, bit: int) -> int:
    return 6 * i + 1 + 2 * bit


def build_weak_discrete_1d(inst: OVInstance) -> GadgetCurvePair:
    """1D vertex sequences for the discrete weak distance (both the endpoint
    pinned form and the unrestricted one); used exactly as assembled."""
    _require_nontrivial(inst)
    d, m = inst.dim, inst.m
    top = 6 * d

    def pv(u):
        return [_weak_p_coord(i, b) for i, b in enumerate(u, 1)]

    def qv(v):
        return [_weak_q_coord(i, b) for i, b in enumerate(v, 1)]

    p0, p1 = pv((0,) * d), pv((1,) * d)
    q0, q1 = qv((0,) * d), qv((1,) * d)
    skip = [3] + p0 + [top + 9]

    p = [0] + skip + p1[::-1]
    for u in inst.u_rows:
        p += pv(u) + p1[::-1]
    p += skip + [top + 12]

    q = [0, 3] + q1
    for j in range(m):
        q += [top + 9] + q0[::-1] + qv(inst.v_rows[j]) + q0[::-1] + [3] + q1
    q += [top + 9, top + 12]

    return GadgetCurvePair("dwF", curve1(p), curve1(q), {})


def _weak_p_piece_2d(u: Sequence[int]) -> List[Tuple[int, int]]:
    pts = []
    for i, b in enumerate(u, 1):
        pts += [(6 * i, 1), (6 * i, 2 * b), (6 * i + 6, 2 * b), (6 * i + 6, 1)]
    return pts


def _weak_q_piece_2d(v: Sequence[int]) -> List[Tuple[int, int]]:
    pts = []
    for i, b in enumerate(v, 1):
        pts += [(6 * i, 0), (6 * i, 1 - 2 * b), (6 * i + 6, 1 - 2 * b), (6 * i + 6, 0)]
    return pts


def build_weak_continuous_2d(inst: OVInstance) -> GadgetCurvePair:
    """2D pair for the continuous weak distance; P runs along height 1..2 and
    Q along height -1..1, so only vector coordinates interact vertically."""
    _require_nontrivial(inst)
    d, m = inst.dim, inst.m
    top = 6 * d
    pv, qv = _weak_p_piece_2d, _weak_q_piece_2d

    p0, p1 = pv((0,) * d), pv((1,) * d)
    q0, q1 = qv((0,) * d), qv((1,) * d)
    skip = [(3, 1)] + p0 + [(top + 9, 1)]

    p = [(0, 1)] + skip + p1[::-1]
    for u in inst.u_rows:
        p += pv(u) + p1[::-1]
    p += skip + [(top + 12, 1)]

    q = [(0, 0), (3, 0)] + q1
    for j in range(m):
        q += [(top + 9, 0)] + q0[::-1] + qv(inst.v_rows[j]) + q0[::-1] + [(3, 0)] + q1
    q += [(top + 9, 0), (top + 12, 0)]

    return GadgetCurvePair("wF", curve2(p), curve2(q), {})


def build_reduction(inst: OVInstance, family: str) -> GadgetCurvePair:
    builders = {"partial": build_partial_reduction,
                "frechet": build_full_reduction,
                "weak1d": build_weak_discrete_1d,
                "weak2d": build_weak_continuous_2d}
    if family not in builders:
        raise ValueError(f"unknown reduction family {family!r}")
    return builders[family](inst)


# --- continuous-to-discrete conversion ----------------------------------------

def _conversion_cuts(P: Curve, Q: Curve) -> List:
    """Every vertex coordinate shifted by every candidate distance value."""
    crits = critical_values(P, Q)
    coords = set(P.verts) | set(Q.verts)
    return sorted({v + e for v in coords for e in crits}
                  | {v - e for v in coords for e in crits})


def subdivide_for_discrete(P: Curve, Q: Curve) -> Tuple[Curve, Curve]:
    """Insert vertices so the discrete distance of the outputs equals the
    continuous distance of the inputs; each edge picks up the cut
    coordinates interior to its span."""
    if P.dim != 1 or Q.dim != 1:
        raise ValueError("subdivision is defined for 1D curves")
    cuts = _conversion_cuts(P, Q)
    return _subdivided(P, cuts), _subdivided(Q, cuts)


def subdivide_pair_for_discrete(pair: GadgetCurvePair) -> GadgetCurvePair:
    """Discrete-variant form of a 1D gadget pair.

    Subdivision only inserts vertices, so bookmarks survive; each index
    shifts by the number of cuts falling in earlier edges.
    """
    cuts = _conversion_cuts(pair.p, pair.q)

    def shifts(c: Curve) -> List[int]:
        prefix = [0]
        for a, b in zip(c.verts, c.verts[1:]):
            lo, hi = (a, b) if a <= b else (b, a)
            prefix.append(prefix[-1] + bisect_left(cuts, hi) - bisect_right(cuts, lo))
        return prefix

    p_shift, q_shift = shifts(pair.p), shifts(pair.q)
    marks = {}
    for name, idx in pair.bookmarks.items():
        on_q = name.split("_", 1)[0] in ("c", "l", "r", "sq", "tq")
        marks[name] = idx + (q_shift if on_q else p_shift)[idx - 1]
    return GadgetCurvePair("dF", _subdivided(pair.p, cuts),
                           _subdivided(pair.q, cuts), marks)


def _subdivided(c: Curve, cuts: List) -> Curve:
    if len(c) == 1:
        return c
    out = [c.verts[0]]
    for a, b in zip(c.verts, c.verts[1:]):
        lo, hi = (a, b) if a <= b else (b, a)
        inner = cuts[bisect_right(cuts, lo):bisect_left(cuts, hi)]
        out.extend(inner if a <= b else inner[::-1])
        out.append(b)
    return Curve(1, tuple(out))
