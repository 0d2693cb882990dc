"""Deterministic SVG pictures of the free-space diagram.

The parameter rectangle is sampled on a regular lattice (res samples per
cell edge, cell corners included) and every sample is classified exactly:
light means the curve points are within eps, dark means they are not.  Each
lattice sample fills the region up to the next sample, so the picture is a
nearest-sample raster, and vertex-pair corners additionally get dots.  Axes
are vertex indices by default; the arclength flag spaces samples by distance
travelled instead.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import hypot
from typing import List, Optional

from .curve import Curve
from .engines import Matching
from .exactnum import to_exact

_CELL = 24.0  # svg units per parameter cell
_LIGHT, _DARK = "#f5f3ee", "#3a3f4a"


def _check_rational(eps):
    e = to_exact(eps)
    if not isinstance(e, (int, Fraction)):
        raise ValueError("rendering needs a rational eps")
    if e < 0:
        raise ValueError("eps must be >= 0")
    return e


def _samples(n: int, res: int) -> List[Fraction]:
    if n == 1:
        return [Fraction(1)]
    return [1 + Fraction(k, res) for k in range(res * (n - 1) + 1)]


def classify_samples(P: Curve, Q: Curve, eps, res: int = 8) -> List[List[bool]]:
    """free[a][b] for sample a along P and b along Q (exact arithmetic)."""
    e = _check_rational(eps)
    ts = [P.at(t) for t in _samples(len(P), res)]
    us = [Q.at(t) for t in _samples(len(Q), res)]
    if P.dim == 1:
        return [[abs(p - q) <= e for q in us] for p in ts]
    esq = e * e
    return [[(p[0] - q[0]) ** 2 + (p[1] - q[1]) ** 2 <= esq for q in us] for p in ts]


def _positions(c: Curve, res: int, arclength: bool) -> List[float]:
    ts = _samples(len(c), res)
    if not arclength or len(c) == 1:
        return [float((t - 1) * _CELL) for t in ts]
    pts = [c.at(t) for t in ts]
    cum = [0.0]
    for a, b in zip(pts, pts[1:]):
        step = abs(float(b - a)) if c.dim == 1 else hypot(float(b[0] - a[0]),
                                                          float(b[1] - a[1]))
        cum.append(cum[-1] + step)
    total = cum[-1]
    span = _CELL * (len(c) - 1)
    if total == 0:
        return [float((t - 1) * _CELL) for t in ts]
    return [v / total * span for v in cum]


def _fmt(x: float) -> str:
    return f"{x:.3f}".rstrip("0").rstrip(".")


@dataclass(frozen=True)
class FsdRender:
    eps: object
    res: int = 8
    arclength: bool = False
    witness: Optional[Matching] = None

    def render(self, P: Curve, Q: Curve) -> str:
        free = classify_samples(P, Q, self.eps, self.res)
        xs = _positions(P, self.res, self.arclength)
        ys = _positions(Q, self.res, self.arclength)
        width, height = xs[-1] or _CELL, ys[-1] or _CELL
        pad = 6.0
        out = [f'<svg xmlns="http://www.w3.org/2000/svg" '
               f'viewBox="{_fmt(-pad)} {_fmt(-pad)} {_fmt(width + 2 * pad)} '
               f'{_fmt(height + 2 * pad)}">']
        out.append(f'<rect x="0" y="0" width="{_fmt(width)}" height="{_fmt(height)}" '
                   f'fill="{_DARK}"/>')

        # free regions as merged per-column runs (classification is the
        # lower-left sample of each region)
        for a in range(max(len(xs) - 1, 1)):
            x0 = xs[a]
            w = (xs[a + 1] - x0) if a + 1 < len(xs) else _CELL
            b = 0
            bmax = max(len(ys) - 1, 1)
            while b < bmax:
                if not free[a][min(b, len(ys) - 1)]:
                    b += 1
                    continue
                b0 = b
                while b < bmax and free[a][min(b, len(ys) - 1)]:
                    b += 1
                y_hi = ys[b] if b < len(ys) else ys[-1] + _CELL
                y0 = height - y_hi
                h = y_hi - ys[b0]
                out.append(f'<rect x="{_fmt(x0)}" y="{_fmt(y0)}" width="{_fmt(w)}" '
                           f'height="{_fmt(h)}" fill="{_LIGHT}"/>')

        # cell grid
        for i in range(len(P)):
            x = xs[min(i * self.res, len(xs) - 1)]
            out.append(f'<line x1="{_fmt(x)}" y1="0" x2="{_fmt(x)}" '
                       f'y2="{_fmt(height)}" stroke="#9aa0ab" stroke-width="0.5"/>')
        for j in range(len(Q)):
            y = height - ys[min(j * self.res, len(ys) - 1)]
            out.append(f'<line x1="0" y1="{_fmt(y)}" x2="{_fmt(width)}" '
                       f'y2="{_fmt(y)}" stroke="#9aa0ab" stroke-width="0.5"/>')

        if self.witness is not None:
            pts = []
            for (tp, tq) in self.witness.path:
                x = _param_pos(tp, xs, self.res)
                y = height - _param_pos(tq, ys, self.res)
                pts.append(f"{_fmt(x)},{_fmt(y)}")
            out.append(f'<polyline points="{" ".join(pts)}" fill="none" '
                       f'stroke="#c03535" stroke-width="1.2"/>')

        # vertex-pair corner dots
        for i in range(len(P)):
            for j in range(len(Q)):
                x = xs[min(i * self.res, len(xs) - 1)]
                y = height - ys[min(j * self.res, len(ys) - 1)]
                fill = _LIGHT if free[min(i * self.res, len(xs) - 1)][min(j * self.res, len(ys) - 1)] else _DARK
                out.append(f'<circle cx="{_fmt(x)}" cy="{_fmt(y)}" r="1.6" '
                           f'fill="{fill}" stroke="#5c6270" stroke-width="0.4"/>')

        out.append("</svg>")
        return "\n".join(out) + "\n"


def _param_pos(t, positions: List[float], res: int) -> float:
    # witness parameters are exact; interpolate between bracketing samples
    scaled = (Fraction(t) - 1) * res
    k = int(scaled)
    k = min(k, len(positions) - 1)
    frac = scaled - k
    if frac == 0 or k + 1 >= len(positions):
        return positions[k]
    return positions[k] + float(frac) * (positions[k + 1] - positions[k])


def render_fsd(P: Curve, Q: Curve, eps, res: int = 8, arclength: bool = False,
               witness: Optional[Matching] = None) -> str:
    return FsdRender(eps, res, arclength, witness).render(P, Q)
