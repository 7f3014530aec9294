"""Deterministic SVG rendering of wall diagrams and assembled functions.

Exact data comes in, floats appear only at the final formatting step, and
output is byte-stable for fixed inputs.
"""

from __future__ import annotations

import math
from fractions import Fraction

from .hntree import PiecewiseQuadratic
from .lattice import ChernClass, mu_slope, twist
from .walls import Semicircle, WallCandidate

_W, _H, _PAD = 800.0, 400.0, 40.0


def _fmt(x: float) -> str:
    return f"{x:.3f}"


class _Frame:
    def __init__(self, x_lo, x_hi, y_hi):
        self.x_lo, self.x_hi, self.y_hi = x_lo, x_hi, y_hi
        self.sx = (_W - 2 * _PAD) / (x_hi - x_lo)
        self.sy = (_H - 2 * _PAD) / y_hi if y_hi > 0 else 1.0

    def px(self, x: float) -> float:
        return _PAD + (x - self.x_lo) * self.sx

    def py(self, y: float) -> float:
        return _H - _PAD - y * self.sy


def render_walls_svg(
    v: ChernClass, candidates: list[WallCandidate], beta_star=None
) -> str:
    """Wall diagram in the (beta, alpha) half-plane for the class v."""
    walls = [c.wall for c in candidates]
    radii = [math.sqrt(float(w.radius_sq)) for w in walls]
    xs = [float(w.center) - r for w, r in zip(walls, radii)]
    xs += [float(w.center) + r for w, r in zip(walls, radii)]
    if v.v0 != 0:
        xs.append(float(mu_slope(v)))
    if beta_star is not None:
        xs.append(float(beta_star))
    if not xs:
        xs = [-1.0, 1.0]
    x_lo, x_hi = min(xs) - 0.5, max(xs) + 0.5
    y_hi = max(radii + [1.0]) + 0.5
    fr = _Frame(x_lo, x_hi, y_hi)

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{int(_W)}" height="{int(_H)}" '
        f'viewBox="0 0 {int(_W)} {int(_H)}">',
        f'<line x1="{_fmt(fr.px(x_lo))}" y1="{_fmt(fr.py(0))}" '
        f'x2="{_fmt(fr.px(x_hi))}" y2="{_fmt(fr.py(0))}" stroke="black"/>',
    ]
    if v.v0 != 0:
        mu = float(mu_slope(v))
        parts.append(
            f'<line class="vertical-wall" x1="{_fmt(fr.px(mu))}" y1="{_fmt(fr.py(0))}" '
            f'x2="{_fmt(fr.px(mu))}" y2="{_fmt(fr.py(y_hi))}" '
            f'stroke="gray" stroke-dasharray="6 3"/>'
        )
    parts.append(_hyperbola_polyline(v, fr))
    for cand in candidates:
        w = cand.wall
        r = math.sqrt(float(w.radius_sq))
        c = float(w.center)
        parts.append(
            f'<path class="wall-arc" d="M {_fmt(fr.px(c - r))} {_fmt(fr.py(0))} '
            f'A {_fmt(r * fr.sx)} {_fmt(r * fr.sy)} 0 0 1 '
            f'{_fmt(fr.px(c + r))} {_fmt(fr.py(0))}" fill="none" stroke="red"/>'
        )
        parts.append(
            f'<text x="{_fmt(fr.px(c))}" y="{_fmt(fr.py(r) - 4)}" font-size="11" '
            f'text-anchor="middle">({w.center},{w.radius_sq})</text>'
        )
    if beta_star is not None:
        b = float(beta_star)
        parts.append(
            f'<line class="query-line" x1="{_fmt(fr.px(b))}" y1="{_fmt(fr.py(0))}" '
            f'x2="{_fmt(fr.px(b))}" y2="{_fmt(fr.py(y_hi))}" '
            f'stroke="blue" stroke-dasharray="2 3"/>'
        )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def _hyperbola_polyline(v: ChernClass, fr: _Frame) -> str:
    """Locus of tilt slope zero, sampled at rational beta with exact heights."""
    if v.v0 == 0:
        if v.v1 == 0:
            return "<!-- no hyperbola -->"
        b = float(Fraction(v.v2, v.v1))
        return (
            f'<line class="hyperbola" x1="{_fmt(fr.px(b))}" y1="{_fmt(fr.py(0))}" '
            f'x2="{_fmt(fr.px(b))}" y2="{_fmt(fr.py(fr.y_hi))}" '
            f'stroke="green" stroke-dasharray="4 3"/>'
        )
    pts = []
    steps = 200
    for i in range(steps + 1):
        beta = Fraction(
            round((fr.x_lo + (fr.x_hi - fr.x_lo) * i / steps) * 1024), 1024
        )
        a = twist(v, beta).t2 / v.v0  # height of the zero-slope locus
        if a < 0:
            continue
        alpha = math.sqrt(2 * float(a))
        if alpha > fr.y_hi:
            continue
        pts.append(f"{_fmt(fr.px(float(beta)))},{_fmt(fr.py(alpha))}")
    if not pts:
        return "<!-- hyperbola outside viewport -->"
    return (
        f'<polyline class="hyperbola" points="{" ".join(pts)}" '
        f'fill="none" stroke="green" stroke-dasharray="4 3"/>'
    )


def render_function_svg(fn: PiecewiseQuadratic, x_lo=None, x_hi=None) -> str:
    """Graph of a piecewise quadratic with breakpoint markers."""
    if fn.breakpoints:
        b_lo, b_hi = float(fn.breakpoints[0]), float(fn.breakpoints[-1])
    else:
        b_lo = b_hi = 0.0
    x_lo = float(x_lo) if x_lo is not None else b_lo - 1.0
    x_hi = float(x_hi) if x_hi is not None else b_hi + 1.0
    steps = 400
    values = []
    for i in range(steps + 1):
        x = Fraction(round((x_lo + (x_hi - x_lo) * i / steps) * 1024), 1024)
        values.append((float(x), float(fn.eval_at(x))))
    y_hi = max(y for _, y in values) or 1.0
    fr = _Frame(x_lo, x_hi, y_hi)
    pts = " ".join(f"{_fmt(fr.px(x))},{_fmt(fr.py(y))}" for x, y in values)
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{int(_W)}" height="{int(_H)}" '
        f'viewBox="0 0 {int(_W)} {int(_H)}">',
        f'<line x1="{_fmt(fr.px(x_lo))}" y1="{_fmt(fr.py(0))}" '
        f'x2="{_fmt(fr.px(x_hi))}" y2="{_fmt(fr.py(0))}" stroke="black"/>',
        f'<polyline class="function" points="{pts}" fill="none" stroke="blue"/>',
    ]
    for b in fn.breakpoints:
        bx = float(b)
        parts.append(
            f'<circle class="breakpoint" cx="{_fmt(fr.px(bx))}" '
            f'cy="{_fmt(fr.py(float(fn.eval_at(b))))}" r="3" fill="red"/>'
        )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
