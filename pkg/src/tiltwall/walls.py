"""Numerical wall geometry and finite enumeration of candidate destabilizers.

Walls are loci of equal tilt slope for two classes: semicircles centered on
the beta-axis (stored by rational center and radius squared) or vertical
lines.  Enumeration searches the lattice for subobject classes whose wall
crosses a vertical segment {beta = beta*, a in [a_min, a_max]}, using the
discriminant window to keep the search finite.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Optional, Union

from .exactnum import format_rational, parse_rational
from .lattice import (
    ChernClass,
    SurfaceConfig,
    class_sub,
    discriminant,
    mu_slope,
    twist,
)


@dataclass(frozen=True)
class Semicircle:
    center: Fraction
    radius_sq: Fraction

    def __post_init__(self):
        if self.radius_sq <= 0:
            raise ValueError("degenerate semicircle: radius_sq must be positive")

    def __str__(self):
        return f"semicircle(center={format_rational(self.center)}, radius_sq={format_rational(self.radius_sq)})"

    def to_json(self) -> dict:
        return {
            "kind": "semicircle",
            "center": format_rational(self.center),
            "radius_sq": format_rational(self.radius_sq),
        }


@dataclass(frozen=True)
class VerticalWall:
    beta: Fraction

    def __str__(self):
        return f"vertical(beta={format_rational(self.beta)})"

    def to_json(self) -> dict:
        return {"kind": "vertical", "beta": format_rational(self.beta)}


NumericalWall = Union[Semicircle, VerticalWall]


def wall_from_json(data: dict) -> NumericalWall:
    if "beta" in data:
        return VerticalWall(parse_rational(str(data["beta"])))
    return Semicircle(
        parse_rational(str(data["center"])), parse_rational(str(data["radius_sq"]))
    )


def wall_between(v: ChernClass, w: ChernClass) -> Optional[NumericalWall]:
    """The numerical wall where v and w have equal tilt slope, if any.

    Returns None for proportional classes and for degenerate loci (empty
    semicircles).
    """
    d01 = Fraction(v.v0 * w.v1 - v.v1 * w.v0)
    d02 = v.v0 * w.v2 - v.v2 * w.v0
    d12 = v.v1 * w.v2 - v.v2 * w.v1
    if d01 != 0:
        s = d02 / d01
        radius_sq = s * s - 2 * d12 / d01
        if radius_sq <= 0:
            return None
        return Semicircle(s, radius_sq)
    if d02 != 0:
        return VerticalWall(d12 / d02)
    return None


def wall_a_at(wall: NumericalWall, beta) -> Optional[Fraction]:
    """Height a of a semicircular wall above beta, or None if beta is outside."""
    if isinstance(wall, VerticalWall):
        raise ValueError("no height: vertical wall")
    beta = Fraction(beta)
    offset_sq = (beta - wall.center) ** 2
    if offset_sq > wall.radius_sq:
        return None
    return (wall.radius_sq - offset_sq) / 2


class Nesting(Enum):
    DISJOINT = "disjoint"
    NESTED = "nested"
    EQUAL = "equal"
    CROSSING = "crossing"


@dataclass(frozen=True)
class NestingResult:
    relation: Nesting
    inner: Optional[Semicircle] = None
    outer: Optional[Semicircle] = None


def nesting(w1: NumericalWall, w2: NumericalWall) -> NestingResult:
    """Exact containment classification of two semicircles, radical-free.

    Compares the squared center distance D against (r1 +- r2)^2 via
    A = D - r1^2 - r2^2 and the sign/square of A, avoiding square roots.
    """
    if not isinstance(w1, Semicircle) or not isinstance(w2, Semicircle):
        raise ValueError("nesting is defined for semicircular walls only")
    if w1 == w2:
        return NestingResult(Nesting.EQUAL)
    dist_sq = (w1.center - w2.center) ** 2
    a = dist_sq - w1.radius_sq - w2.radius_sq
    cross_term = 4 * w1.radius_sq * w2.radius_sq
    if a > 0 and a * a > cross_term:
        return NestingResult(Nesting.DISJOINT)
    if a < 0 and a * a > cross_term:
        inner, outer = (w1, w2) if w1.radius_sq < w2.radius_sq else (w2, w1)
        return NestingResult(Nesting.NESTED, inner=inner, outer=outer)
    return NestingResult(Nesting.CROSSING)


@dataclass(frozen=True)
class WallCandidate:
    wall: Semicircle
    witness: ChernClass
    cross_a: Fraction
    witnesses: tuple[ChernClass, ...] = field(default=(), compare=False)


def _normalized_witness(v: ChernClass, w: ChernClass) -> ChernClass:
    """Among w and v - w, the lexicographically smaller triple."""
    u = class_sub(v, w)
    return min(w, u, key=lambda c: (c.v0, c.v1, c.v2))


def _frac_sqrt_ceil(q: Fraction) -> int:
    """Smallest integer n with n >= sqrt(q), for q >= 0."""
    if q < 0:
        raise ValueError("negative radicand")
    n = math.isqrt(q.numerator // q.denominator)
    while n * n < q:
        n += 1
    return n


def default_a_max(v: ChernClass, a_min: Fraction) -> Fraction:
    """Conservative default top of the searched segment.

    There is no closed-form largest wall below the Gieseker chamber, so the
    default covers up to a = max(1, disc(v)); callers needing taller segments
    must pass a_max explicitly.
    """
    return max(Fraction(1), discriminant(v)) + a_min


def _w0_bound(v: ChernClass, beta_star: Fraction, a_min: Fraction, a_max: Fraction) -> int:
    """Upper bound for |w0| of any candidate crossing the segment.

    On the wall through (beta*, a), disc(w) = t^2 - 2*t*w0*nu(a) - 2*a*w0^2
    with nu(a) the tilt slope of v there; disc(w) >= 0 confines w0 to an
    interval whose endpoints are bounded using |nu| <= M (nu is linear in a)
    and a >= a_min.
    """
    tv = twist(v, beta_star)
    t_v, c2v = tv.t1, tv.t2
    nu_lo = (c2v - a_min * v.v0) / t_v
    nu_hi = (c2v - a_max * v.v0) / t_v
    m = max(abs(nu_lo), abs(nu_hi))
    bound = t_v * (m + _frac_sqrt_ceil(m * m + 2 * a_max)) / (2 * a_min)
    return int(math.ceil(bound))


def _candidate_pairs_for_w0(
    v: ChernClass,
    beta_star: Fraction,
    a_min: Fraction,
    a_max: Fraction,
    cfg: SurfaceConfig,
    w0: int,
    strict: bool,
) -> list[tuple[Semicircle, ChernClass, Fraction]]:
    out = []
    t_v = v.v1 - beta_star * v.v0
    disc_v = discriminant(v)
    den = cfg.v2_denominator
    # w1 runs over multiples of v1_step with 0 < t = w1 - beta*w0 <= t_v
    lo = beta_star * w0
    hi = lo + t_v
    w1_start = math.floor(lo / cfg.v1_step) * cfg.v1_step
    w1 = w1_start
    while w1 <= hi:
        if w1 > lo:
            # finite w2 window from the discriminant constraints
            if w0 != 0:
                # 0 <= w1^2 - 2*w0*w2 <= disc_v
                b1 = Fraction(w1 * w1, 2 * w0)
                b2 = Fraction(w1 * w1) - disc_v
                b2 = b2 / (2 * w0)
                w2_lo, w2_hi = (b2, b1) if w0 > 0 else (b1, b2)
            elif v.v0 != 0:
                # 0 <= disc(v - w) <= disc_v with w0 = 0
                u1 = v.v1 - w1
                c1 = (Fraction(u1 * u1) - 2 * v.v0 * v.v2) / (-2 * v.v0)
                c2 = (Fraction(u1 * u1) - disc_v - 2 * v.v0 * v.v2) / (-2 * v.v0)
                w2_lo, w2_hi = (min(c1, c2), max(c1, c2))
            else:
                w1 += cfg.v1_step
                continue  # w0 = v0 = 0 yields no wall
            k = math.ceil(w2_lo * den)
            while Fraction(k, den) <= w2_hi:
                w = ChernClass(w0, w1, Fraction(k, den))
                k += 1
                cand = _screen_candidate(
                    v, w, beta_star, a_min, a_max, disc_v, cfg, strict
                )
                if cand is not None:
                    out.append(cand)
        w1 += cfg.v1_step
    return out


def _in_discriminant_spectrum(disc: Fraction, m: int) -> bool:
    """Positive discriminants of semistable classes are multiples of m."""
    return disc == 0 or (disc / m).denominator == 1


def _screen_candidate(v, w, beta_star, a_min, a_max, disc_v, cfg, strict):
    disc_w = discriminant(w)
    if disc_w < 0 or not _in_discriminant_spectrum(disc_w, cfg.minimal_discriminant):
        return None
    disc_q = discriminant(class_sub(v, w))
    if disc_q < 0 or not _in_discriminant_spectrum(disc_q, cfg.minimal_discriminant):
        return None
    total = disc_w + disc_q
    if (total >= disc_v) if strict else (total > disc_v):
        return None
    wall = wall_between(v, w)
    if not isinstance(wall, Semicircle):
        return None
    # subobject stays in the heart at the top point: 0 < im(w) <= im(v) there
    top_w = w.v1 - wall.center * w.v0
    top_v = v.v1 - wall.center * v.v0
    if not (0 < top_w <= top_v):
        return None
    cross_a = wall_a_at(wall, beta_star)
    if cross_a is None or not (a_min <= cross_a <= a_max):
        return None
    return wall, w, cross_a


def enumerate_candidates(
    v: ChernClass,
    beta_star,
    a_min,
    a_max=None,
    cfg: SurfaceConfig = None,
    strict: bool = False,
    threads: Optional[int] = None,
) -> list[WallCandidate]:
    """All candidate walls for v crossing {beta = beta*, a in [a_min, a_max]}.

    Candidates are deduplicated by wall (all witnesses kept, the primary one
    normalized) and sorted by crossing height descending (outermost first).
    Output is identical for any thread count.
    """
    if cfg is None:
        cfg = SurfaceConfig.preset("ppas")
    beta_star = Fraction(beta_star)
    a_min = Fraction(a_min)
    if a_min <= 0:
        raise ValueError("a_min must be positive (walls accumulate at a = 0)")
    if a_max is None:
        a_max = default_a_max(v, a_min)
    a_max = Fraction(a_max)
    if a_max < a_min:
        raise ValueError("a_max < a_min")
    if discriminant(v) < 0:
        raise ValueError("class has negative discriminant")
    if v.v0 > 0 and beta_star >= mu_slope(v):
        raise ValueError("wrong side of vertical wall")
    if v.v1 - beta_star * v.v0 <= 0:
        raise ValueError("class is not in the heart at beta_star (nonpositive twisted degree)")

    bound = _w0_bound(v, beta_star, a_min, a_max)
    w0_values = [w0 for w0 in range(-bound, bound + 1) if w0 % cfg.v0_step == 0]

    if threads is None:
        threads = int(os.environ.get("TILTWALL_THREADS", "1"))
    threads = max(1, threads)

    def work(chunk):
        found = []
        for w0 in chunk:
            found.extend(
                _candidate_pairs_for_w0(v, beta_star, a_min, a_max, cfg, w0, strict)
            )
        return found

    if threads == 1:
        raw = work(w0_values)
    else:
        chunks = [w0_values[i::threads] for i in range(threads)]
        with ThreadPoolExecutor(max_workers=threads) as pool:
            raw = [c for part in pool.map(work, chunks) for c in part]

    # canonical grouping by wall, independent of discovery order
    groups: dict[Semicircle, tuple[Fraction, set[ChernClass]]] = {}
    for wall, w, cross_a in raw:
        if wall not in groups:
            groups[wall] = (cross_a, set())
        groups[wall][1].add(_normalized_witness(v, w))
    result = []
    for wall, (cross_a, witnesses) in groups.items():
        ordered = tuple(sorted(witnesses, key=lambda c: (c.v0, c.v1, c.v2)))
        result.append(WallCandidate(wall, ordered[0], cross_a, witnesses=ordered))
    result.sort(key=lambda c: (-c.cross_a, c.wall.center))
    return result


def _slope_diff_sign(v: ChernClass, w: ChernClass, a: Fraction, beta: Fraction) -> int:
    """Sign of nu(v) - nu(w), computed projectively (robust at infinite slope)."""
    tv, tw = twist(v, beta), twist(w, beta)
    expr = (tv.t2 - a * tv.t0) * tw.t1 - (tw.t2 - a * tw.t0) * tv.t1
    return (expr > 0) - (expr < 0)


def slope_crossing_oracle(
    v: ChernClass, w: ChernClass, wall: NumericalWall, grid_step
) -> bool:
    """Brute-force check that the slopes of v and w cross exactly along wall.

    Samples the slope difference on a rational beta-grid straddling the wall
    and verifies the sign changes occur exactly in the grid cells where the
    wall is crossed, and nowhere else.
    """
    grid_step = Fraction(grid_step)
    if grid_step <= 0:
        raise ValueError("grid_step must be positive")

    if isinstance(wall, VerticalWall):
        heights = [Fraction(1, 4), Fraction(1)]
        lo, hi = wall.beta - 8 * grid_step, wall.beta + 8 * grid_step

        def wall_side(beta, a):
            x = beta - wall.beta
            return (x > 0) - (x < 0)

    else:
        # sample at two heights strictly below the top of the semicircle
        heights = [wall.radius_sq / 4, wall.radius_sq / 8]
        span = _frac_sqrt_ceil(wall.radius_sq) + 1
        lo, hi = wall.center - span, wall.center + span

        def wall_side(beta, a):
            x = (beta - wall.center) ** 2 + 2 * a - wall.radius_sq
            return (x > 0) - (x < 0)

    for a in heights:
        beta = lo
        prev_slope = None
        prev_side = None
        while beta <= hi:
            s = _slope_diff_sign(v, w, a, beta)
            side = wall_side(beta, a)
            if prev_slope is not None:
                slope_flips = s != 0 and prev_slope != 0 and s != prev_slope
                side_flips = side != 0 and prev_side != 0 and side != prev_side
                if slope_flips != side_flips:
                    return False
            if s == 0 and side != 0:
                return False  # equal slopes off the reported wall
            prev_slope, prev_side = s, side
            beta += grid_step
    return True
