"""Shared helpers: random lattice classes and independent oracles.

The oracles recompute wall data and function values by routes that share no
code with the implementations they check (circle fitting through equal-slope
points, factor sums at a = 0).
"""

from __future__ import annotations

import random
from fractions import Fraction

from tiltwall import ChernClass, SurfaceConfig, chd_polynomial, twist
from tiltwall.hntree import hn_factors_at

PPAS = SurfaceConfig.preset("ppas")


def random_class(rng: random.Random, cfg: SurfaceConfig = PPAS) -> ChernClass:
    v0 = cfg.v0_step * rng.randint(-4, 4)
    v1 = cfg.v1_step * rng.randint(-4, 4)
    v2 = Fraction(rng.randint(-8 * cfg.v2_denominator, 8 * cfg.v2_denominator),
                  cfg.v2_denominator)
    return ChernClass(v0, v1, v2)


def random_disc0_class(rng: random.Random) -> ChernClass:
    """Random PPAS lattice class with zero discriminant and positive rank."""
    while True:
        k = rng.randint(-2, 2)
        l = rng.randint(-3, 3)
        t = rng.randint(1, 2)
        if k == 0:
            continue
        # (2k^2, 2kl, l^2) is null for v1^2 - 2 v0 v2; scaling preserves it
        return ChernClass(2 * t * k * k, 2 * t * k * l, Fraction(t * l * l))


def equal_slope_height(v: ChernClass, w: ChernClass, beta: Fraction):
    """The a-value where v and w have equal tilt slope above beta, or None.

    Solves the linear (in a) equation (t2v - a*v0)*t1w = (t2w - a*w0)*t1v
    directly; independent of the closed-form wall formulas.
    """
    tv, tw = twist(v, beta), twist(w, beta)
    denom = tv.t0 * tw.t1 - tw.t0 * tv.t1
    if denom == 0:
        return None
    return (tv.t2 * tw.t1 - tw.t2 * tv.t1) / denom


def fit_circle_through_heights(points):
    """(center, radius_sq) of the circle (b - s)^2 + 2a = r2 through 2 points."""
    (b1, a1), (b2, a2) = points
    # subtracting the two equations is linear in s
    s = (b1 * b1 - b2 * b2 + 2 * (a1 - a2)) / (2 * (b1 - b2))
    r2 = (b1 - s) ** 2 + 2 * a1
    return s, r2


def chd0_value_by_factors(tree, x: Fraction) -> Fraction:
    """chd0(x) recomputed from HN factors at (a = 0, beta = -x).

    Sums the twisted ch2 of the factors with positive slope; raises the
    point-on-wall error for unlucky x, which callers skip.
    """
    factors = hn_factors_at(tree, 0, -x)
    total = Fraction(0)
    for cls, slope in factors:
        if slope == float("inf") or slope > 0:
            total += chd_polynomial(cls).eval_rational(x)
    return total
