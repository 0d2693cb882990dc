"""Polygonal curves with exact rational coordinates.

A curve with k vertices is parameterized over [1, k]: integer parameters hit
vertices and P(i + lam) interpolates edge i linearly.  Coordinates are exact
(int or Fraction); 1D vertices are scalars, 2D vertices are (x, y) pairs.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .exactnum import Rational, to_exact, fmt_exact


@dataclass(frozen=True)
class Curve:
    dim: int
    verts: tuple

    def __post_init__(self):
        if self.dim not in (1, 2):
            raise ValueError("dim must be 1 or 2")
        if len(self.verts) == 0:
            raise ValueError("curve needs at least one vertex")

    def __len__(self) -> int:
        return len(self.verts)

    def at(self, t: Rational):
        """Evaluate at parameter t in [1, len]."""
        n = len(self.verts)
        if t < 1 or t > n:
            raise ValueError(f"parameter {t} outside [1, {n}]")
        i = int(t)
        if i == n:
            return self.verts[n - 1]
        lam = t - i
        a, b = self.verts[i - 1], self.verts[i]
        if lam == 0:
            return a
        if self.dim == 1:
            return _simp(a + lam * (b - a))
        return (_simp(a[0] + lam * (b[0] - a[0])),
                _simp(a[1] + lam * (b[1] - a[1])))


def _simp(v):
    if isinstance(v, Fraction) and v.denominator == 1:
        return v.numerator
    return v


def _coord(v) -> Rational:
    if isinstance(v, int):
        return v
    if isinstance(v, Fraction):
        return _simp(v)
    return to_exact(v)


def curve1(values: Sequence) -> Curve:
    """1D curve from a sequence of scalars."""
    return Curve(1, tuple(_coord(v) for v in values))


def curve2(points: Sequence) -> Curve:
    """2D curve from a sequence of (x, y) pairs."""
    return Curve(2, tuple((_coord(p[0]), _coord(p[1])) for p in points))


def compose(a: Curve, b: Curve, *rest: Curve) -> Curve:
    """Concatenate curves; duplicate junction vertices are retained."""
    curves = (a, b) + rest
    dim = a.dim
    for c in curves[1:]:
        if c.dim != dim:
            raise ValueError("cannot compose curves of different dimensions")
    verts = []
    for c in curves:
        verts.extend(c.verts)
    return Curve(dim, tuple(verts))


def repeat(c: Curve, k: int) -> Curve:
    """k concatenated copies, k >= 1."""
    if k < 1:
        raise ValueError("repeat count must be >= 1")
    return Curve(c.dim, c.verts * k)


def reverse(c: Curve) -> Curve:
    return Curve(c.dim, c.verts[::-1])


def subcurve(c: Curve, a: Rational, b: Rational) -> Curve:
    """Restriction to parameters [a, b] (a single vertex when a == b)."""
    n = len(c)
    if not (1 <= a <= b <= n):
        raise ValueError(f"invalid subcurve range [{a}, {b}] for length {n}")
    if a == b:
        return Curve(c.dim, (c.at(a),))
    verts = [c.at(a)]
    i = int(a) + 1  # first integer strictly greater than a (or equal if a int)
    while i < b:
        if i > a:
            verts.append(c.verts[i - 1])
        i += 1
    verts.append(c.at(b))
    return Curve(c.dim, tuple(verts))


def _between_1d(lo, mid, hi) -> bool:
    return min(lo, hi) <= mid <= max(lo, hi)


def normalize_collinear(c: Curve) -> Curve:
    """Exhaustively remove interior vertices lying on the closed segment
    between their neighbors (1D only).  Endpoints are preserved; the result
    traces the same image with the same turning sequence.
    """
    if c.dim != 1:
        raise ValueError("normalize_collinear is defined for 1D curves")
    out = []
    for v in c.verts:
        out.append(v)
        while len(out) >= 3 and _between_1d(out[-3], out[-2], out[-1]):
            del out[-2]
    return Curve(1, tuple(out))


# --- serialization ----------------------------------------------------------

def _coord_to_json(v):
    if isinstance(v, int):
        return v
    return fmt_exact(v)


def curve_to_obj(c: Curve) -> dict:
    if c.dim == 1:
        verts = [_coord_to_json(v) for v in c.verts]
    else:
        verts = [[_coord_to_json(x), _coord_to_json(y)] for x, y in c.verts]
    return {"dim": c.dim, "vertices": verts}


def curve_from_obj(obj: dict) -> Curve:
    dim = obj["dim"]
    verts = obj["vertices"]
    if dim == 1:
        return curve1([to_exact(v) for v in verts])
    if dim == 2:
        return curve2([(to_exact(p[0]), to_exact(p[1])) for p in verts])
    raise ValueError(f"unsupported dim {dim}")


def curve_dumps(c: Curve) -> str:
    return json.dumps(curve_to_obj(c), separators=(",", ":"))


def curve_loads(text: str) -> Curve:
    # parse_float keeps decimal literals exact instead of rounding to binary
    return curve_from_obj(json.loads(text, parse_float=Fraction))
