"""Surface configuration, Chern classes and pointwise tilt-stability quantities.

Classes live in the lattice v = (v0, v1, v2) = (L^2*ch0, L*ch1, ch2).  The
vertical coordinate of the parameter plane is a = alpha^2/2, kept rational so
that every wall datum stays rational.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple, Union

from .exactnum import QuadPoly, QuadraticIrrational, format_rational, parse_rational

INF = math.inf  # +infinity slope marker

Slope = Union[Fraction, float]


class LatticeError(ValueError):
    """A class violates the lattice constraints of a surface configuration."""


@dataclass(frozen=True)
class SurfaceConfig:
    """Numerical data of a polarized surface with Picard rank 1."""

    l2: int
    v0_step: int
    v1_step: int
    v2_denominator: int
    minimal_discriminant: int
    name: str = "custom"

    def __post_init__(self):
        for field in ("l2", "v0_step", "v1_step", "v2_denominator", "minimal_discriminant"):
            if getattr(self, field) <= 0:
                raise ValueError(f"{field} must be positive")

    @classmethod
    def preset(cls, name: str) -> "SurfaceConfig":
        if name == "ppas":
            return cls(2, 2, 2, 2, 4, name="ppas")
        if name == "abelian-(1,2)":
            return cls(4, 4, 4, 2, 4, name="abelian-(1,2)")
        raise KeyError(f"unknown surface preset: {name}")

    def check_class(self, v: "ChernClass") -> None:
        if v.v0 % self.v0_step:
            raise LatticeError(f"v0={v.v0} is not a multiple of {self.v0_step}")
        if v.v1 % self.v1_step:
            raise LatticeError(f"v1={v.v1} is not a multiple of {self.v1_step}")
        if self.v2_denominator % v.v2.denominator:
            raise LatticeError(
                f"v2={v.v2} has denominator not dividing {self.v2_denominator}"
            )

    def to_json(self) -> dict:
        return {
            "l2": self.l2,
            "v0_step": self.v0_step,
            "v1_step": self.v1_step,
            "v2_denominator": self.v2_denominator,
            "minimal_discriminant": self.minimal_discriminant,
        }

    @classmethod
    def from_json(cls, data: dict) -> "SurfaceConfig":
        return cls(
            int(data["l2"]),
            int(data["v0_step"]),
            int(data["v1_step"]),
            int(data["v2_denominator"]),
            int(data["minimal_discriminant"]),
            name=data.get("name", "custom"),
        )


@dataclass(frozen=True)
class ChernClass:
    """Integral class (v0, v1, v2) with v2 rational."""

    v0: int
    v1: int
    v2: Fraction

    def __init__(self, v0: int, v1: int, v2):
        object.__setattr__(self, "v0", int(v0))
        object.__setattr__(self, "v1", int(v1))
        object.__setattr__(self, "v2", Fraction(v2))

    def __str__(self):
        return f"({self.v0},{self.v1},{format_rational(self.v2)})"

    def to_json(self) -> list:
        return [self.v0, self.v1, format_rational(self.v2)]

    @classmethod
    def from_json(cls, data) -> "ChernClass":
        v0, v1, v2 = data
        return cls(int(v0), int(v1), parse_rational(str(v2)))

    @classmethod
    def parse(cls, text: str) -> "ChernClass":
        """Parse a comma-separated triple like "2,0,-5" or "2,0,-5/2"."""
        parts = text.split(",")
        if len(parts) != 3:
            raise ValueError(f"expected three comma-separated components: {text!r}")
        return cls(int(parts[0]), int(parts[1]), Fraction(parts[2]))


class TwistedClass(NamedTuple):
    """Components of the beta-twisted Chern character."""

    t0: Fraction
    t1: Fraction
    t2: Fraction


def twist(v: ChernClass, beta) -> TwistedClass:
    """Twisted character at beta: (v0, v1 - beta*v0, v2 - beta*v1 + (beta^2/2)*v0)."""
    beta = Fraction(beta)
    return TwistedClass(
        Fraction(v.v0),
        v.v1 - beta * v.v0,
        v.v2 - beta * v.v1 + beta * beta * v.v0 / 2,
    )


def discriminant(v: ChernClass) -> Fraction:
    """The quadratic form v1^2 - 2*v0*v2 (invariant under twisting)."""
    return Fraction(v.v1 * v.v1) - 2 * v.v0 * v.v2


def central_charge(v: ChernClass, a, beta) -> tuple[Fraction, Fraction]:
    """(Re, Im) of the central charge at height a = alpha^2/2 >= 0."""
    a = Fraction(a)
    if a < 0:
        raise ValueError("a = alpha^2/2 must be nonnegative")
    t = twist(v, beta)
    return (-(t.t2 - a * t.t0), t.t1)


def tilt_slope(v: ChernClass, a, beta) -> Slope:
    """Tilt slope -Re/Im; +infinity when the imaginary part vanishes."""
    re, im = central_charge(v, a, beta)
    if im == 0:
        return INF
    return -re / im


def mu_slope(v: ChernClass) -> Slope:
    """Classical slope v1/v0; +infinity for torsion classes."""
    if v.v0 == 0:
        return INF
    return Fraction(v.v1, v.v0)


def is_kernel_class(v: ChernClass, beta) -> bool:
    """Whether both twisted components t1 and t2 vanish at beta (forces disc 0)."""
    t = twist(v, beta)
    return t.t1 == 0 and t.t2 == 0


def chd_polynomial(v: ChernClass) -> QuadPoly:
    """The Chern degree polynomial x -> v2 + v1*x + (v0/2)*x^2 (= ch2^{-x})."""
    return QuadPoly(v.v2, v.v1, Fraction(v.v0, 2))


class PIntercept(NamedTuple):
    value: QuadraticIrrational
    double: bool


def p_intercept(v: ChernClass) -> PIntercept:
    """Beta-intercept of the hyperbola of v at alpha = 0.

    For v0 > 0 the smaller root of ch2^beta(v) = 0 in beta, for v0 < 0 the
    larger root, for v0 = 0 the single value v2/v1.  The flag marks double
    roots (disc = 0 with v0 != 0).
    """
    if v.v0 == 0:
        if v.v1 == 0:
            raise ValueError("no hyperbola: v0 = v1 = 0")
        return PIntercept(QuadraticIrrational(v.v2 / v.v1), False)
    disc = discriminant(v)
    if disc < 0:
        raise ValueError("no real intercept: negative discriminant")
    # ch2^beta(v) = (v0/2) beta^2 - v1 beta + v2; roots (v1 +- sqrt(disc)) / v0
    if disc == 0:
        return PIntercept(QuadraticIrrational(Fraction(v.v1, v.v0)), True)
    root = QuadraticIrrational.sqrt(disc) * Fraction(1, v.v0)
    base = QuadraticIrrational(Fraction(v.v1, v.v0))
    lo, hi = base - root, base + root
    if lo > hi:
        lo, hi = hi, lo
    return PIntercept(lo if v.v0 > 0 else hi, False)


def class_dual(v: ChernClass) -> ChernClass:
    """Class of the shifted derived dual: (v0, -v1, v2)."""
    return ChernClass(v.v0, -v.v1, v.v2)


def class_shift(v: ChernClass) -> ChernClass:
    """Class of the shift [1]: all components negated."""
    return ChernClass(-v.v0, -v.v1, -v.v2)


def class_add(v: ChernClass, w: ChernClass) -> ChernClass:
    return ChernClass(v.v0 + w.v0, v.v1 + w.v1, v.v2 + w.v2)


def class_sub(v: ChernClass, w: ChernClass) -> ChernClass:
    return ChernClass(v.v0 - w.v0, v.v1 - w.v1, v.v2 - w.v2)


def line_bundle_class(k: int, cfg: SurfaceConfig) -> ChernClass:
    """Class of the k-th power of the polarization: (L^2, k*L^2, k^2*L^2/2)."""
    v = ChernClass(cfg.l2, k * cfg.l2, Fraction(k * k * cfg.l2, 2))
    cfg.check_class(v)
    return v
