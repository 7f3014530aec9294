"""Built-in scenarios: ideal sheaves of finite subschemes and related classes.

Each scenario bundles a surface configuration, a class, its destabilization
tree (or a trivial marker), and the expected Chern degree function; they are
the regression fixtures of the package and double as CLI demos.

Torsion quotient classes were computed from the Euler characteristic of a
line bundle of degree d on the genus-2 theta divisor: v = (0, 2, d - 1) on a
principally polarized abelian surface.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .exactnum import QuadPoly, QuadraticIrrational
from .hntree import HNTree, PiecewiseQuadratic, TreeLeaf, TreeNode
from .lattice import ChernClass, SurfaceConfig
from .walls import Semicircle

QI = QuadraticIrrational
F = Fraction


@dataclass
class Scenario:
    id: str
    config: SurfaceConfig
    cls: ChernClass
    tree: Optional[HNTree]  # None = walls-only scenario
    expected_chd0: Optional[PiecewiseQuadratic] = None
    expected_jumps: dict = field(default_factory=dict)  # breakpoint -> jump (QI)
    expected_walls: list = field(default_factory=list)  # walls crossing beta = -2
    notes: str = ""

    @property
    def trivial(self) -> bool:
        return isinstance(self.tree, TreeLeaf)


def _pw(breakpoints, pieces) -> PiecewiseQuadratic:
    return PiecewiseQuadratic(
        [b if isinstance(b, QI) else QI(F(b)) for b in breakpoints],
        [QuadPoly(*coeffs) for coeffs in pieces],
    )


PPAS = SurfaceConfig.preset("ppas")
AB12 = SurfaceConfig.preset("abelian-(1,2)")


def _build() -> dict[str, Scenario]:
    scenarios: list[Scenario] = []

    # ideal sheaf of one point: trivial function
    scenarios.append(
        Scenario(
            id="ppas-ideal-1",
            config=PPAS,
            cls=ChernClass(2, 0, -1),
            tree=TreeLeaf(ChernClass(2, 0, -1), "ideal of a point"),
            expected_chd0=_pw([1], [(0, 0, 0), (-1, 0, 1)]),
            notes="ideal sheaf of a single point; no wall below the Gieseker chamber",
        )
    )

    # two points: one wall, both factors of discriminant 0
    scenarios.append(
        Scenario(
            id="ppas-ideal-2",
            config=PPAS,
            cls=ChernClass(2, 0, -2),
            tree=TreeNode(
                ChernClass(2, 0, -2),
                Semicircle(F(-3, 2), F(1, 4)),
                [
                    TreeLeaf(ChernClass(4, -4, 2), "rank-2 semihomogeneous bundle"),
                    TreeLeaf(ChernClass(-2, 4, -4), "shifted quotient"),
                ],
            ),
            expected_chd0=_pw([1, 2], [(0, 0, 0), (2, -4, 2), (-2, 0, 1)]),
            expected_jumps={QI(1): QI(0), QI(2): QI(0)},
            notes="ideal sheaf of two points; single wall with discriminant-0 factors",
        )
    )

    # three collinear points
    scenarios.append(
        Scenario(
            id="ppas-ideal-3-collinear",
            config=PPAS,
            cls=ChernClass(2, 0, -3),
            tree=TreeNode(
                ChernClass(2, 0, -3),
                Semicircle(F(-2), F(1)),
                [
                    TreeLeaf(ChernClass(2, -2, 1), "inverse polarization"),
                    TreeLeaf(ChernClass(0, 2, -4), "degree-(-3) torsion quotient"),
                ],
            ),
            expected_chd0=_pw([1, 2], [(0, 0, 0), (1, -2, 1), (-3, 0, 1)]),
            expected_jumps={QI(1): QI(0), QI(2): QI(2)},
            notes="three points on a theta translate; torsion quotient has disc 4",
        )
    )

    # three generic points
    scenarios.append(
        Scenario(
            id="ppas-ideal-3-generic",
            config=PPAS,
            cls=ChernClass(2, 0, -3),
            tree=TreeNode(
                ChernClass(2, 0, -3),
                Semicircle(F(-7, 4), F(1, 16)),
                [
                    TreeLeaf(ChernClass(8, -12, 9), "rank-4 destabilizer"),
                    TreeLeaf(ChernClass(-6, 12, -12), "shifted quotient"),
                ],
            ),
            expected_chd0=_pw(
                [F(3, 2), 2], [(0, 0, 0), (9, -12, 4), (-3, 0, 1)]
            ),
            expected_jumps={QI(F(3, 2)): QI(0), QI(2): QI(0)},
            notes="three points in general position; both factors have disc 0",
        )
    )

    # four collinear points: two nested walls
    n4_quotient = TreeNode(
        ChernClass(0, 2, -5),
        Semicircle(F(-5, 2), F(1, 4)),
        [
            TreeLeaf(ChernClass(2, -4, 4), "square of inverse polarization"),
            TreeLeaf(ChernClass(-2, 6, -9), "shifted cube"),
        ],
    )
    scenarios.append(
        Scenario(
            id="ppas-ideal-4-collinear",
            config=PPAS,
            cls=ChernClass(2, 0, -4),
            tree=TreeNode(
                ChernClass(2, 0, -4),
                Semicircle(F(-5, 2), F(9, 4)),
                [
                    TreeLeaf(ChernClass(2, -2, 1), "inverse polarization"),
                    n4_quotient,
                ],
            ),
            expected_chd0=_pw(
                [1, 2, 3],
                [(0, 0, 0), (1, -2, 1), (5, -6, 2), (-4, 0, 1)],
            ),
            expected_jumps={QI(1): QI(0), QI(2): QI(0), QI(3): QI(0)},
            expected_walls=[Semicircle(F(-5, 2), F(9, 4))],
            notes="four points on a theta translate; the torsion quotient splits again",
        )
    )

    scenarios.append(
        Scenario(
            id="ppas-ideal-4-generic",
            config=PPAS,
            cls=ChernClass(2, 0, -4),
            tree=TreeLeaf(ChernClass(2, 0, -4), "ideal of four generic points"),
            expected_chd0=_pw([2], [(0, 0, 0), (-4, 0, 1)]),
            notes="four points not on a theta translate; semistable left of the vertical wall",
        )
    )

    # five points with a collinear length-4 subscheme: overlap of intercepts
    scenarios.append(
        Scenario(
            id="ppas-ideal-5-W2",
            config=PPAS,
            cls=ChernClass(2, 0, -5),
            tree=TreeNode(
                ChernClass(2, 0, -5),
                Semicircle(F(-5, 2), F(5, 4)),
                [
                    TreeLeaf(ChernClass(2, -2, 0), "twisted ideal of a point"),
                    TreeNode(
                        ChernClass(0, 2, -5),
                        Semicircle(F(-5, 2), F(1, 4)),
                        [
                            TreeLeaf(ChernClass(2, -4, 4), "square of inverse polarization"),
                            TreeLeaf(ChernClass(-2, 6, -9), "shifted cube"),
                        ],
                    ),
                ],
            ),
            expected_chd0=_pw([2, 3], [(0, 0, 0), (4, -6, 2), (-5, 0, 1)]),
            expected_jumps={QI(2): QI(2), QI(3): QI(0)},
            expected_walls=[Semicircle(F(-5, 2), F(5, 4))],
            notes="five points containing four collinear ones; two intercepts coincide at 2",
        )
    )

    scenarios.append(
        Scenario(
            id="ppas-ideal-5-generic",
            config=PPAS,
            cls=ChernClass(2, 0, -5),
            tree=TreeNode(
                ChernClass(2, 0, -5),
                Semicircle(F(-9, 4), F(1, 16)),
                [
                    TreeLeaf(ChernClass(10, -20, 20), "rank-5 destabilizer"),
                    TreeLeaf(ChernClass(-8, 20, -25), "shifted quotient"),
                ],
            ),
            expected_chd0=_pw([2, F(5, 2)], [(0, 0, 0), (20, -20, 5), (-5, 0, 1)]),
            expected_jumps={QI(2): QI(0), QI(F(5, 2)): QI(0)},
            notes="five generic points; destabilized by five degree-2 theta translates",
        )
    )

    # walls-only scenarios: geometry stated without a full tree
    scenarios.append(
        Scenario(
            id="ppas-ideal-5-W1-walls",
            config=PPAS,
            cls=ChernClass(2, 0, -5),
            tree=None,
            expected_walls=[Semicircle(F(-3), F(4))],
            notes="five collinear points: outermost wall only, no assembled function",
        )
    )
    scenarios.append(
        Scenario(
            id="ppas-ideal-5-W3-walls",
            config=PPAS,
            cls=ChernClass(2, 0, -5),
            tree=None,
            expected_walls=[Semicircle(F(-7, 3), F(4, 9))],
            notes="five points with a unique collinear triple: innermost wall, "
            "witnessed by the rank-2 bundle class (4,-6,4)",
        )
    )

    # ideal of a base point on a (1,2)-polarized abelian surface
    scenarios.append(
        Scenario(
            id="abelian12-ideal-point",
            config=AB12,
            cls=ChernClass(4, 0, -1),
            tree=TreeNode(
                ChernClass(4, 0, -1),
                Semicircle(F(-3, 4), F(1, 16)),
                [
                    TreeLeaf(ChernClass(8, -4, 1), "extension by the inverse polarization"),
                    TreeLeaf(ChernClass(-4, 4, -2), "shifted quotient"),
                ],
            ),
            expected_chd0=_pw([F(1, 2), 1], [(0, 0, 0), (1, -4, 4), (-1, 0, 2)]),
            expected_jumps={QI(F(1, 2)): QI(0), QI(1): QI(0)},
            notes="ideal of a point on a (1,2)-polarized abelian surface",
        )
    )

    scenarios.append(
        Scenario(
            id="ppas-structure-sheaf",
            config=PPAS,
            cls=ChernClass(2, 0, 0),
            tree=TreeLeaf(ChernClass(2, 0, 0), "structure sheaf"),
            expected_chd0=_pw([0], [(0, 0, 0), (0, 0, 1)]),
            notes="structure sheaf; semistable everywhere left of the vertical wall",
        )
    )

    scenarios.append(
        Scenario(
            id="ppas-abel-jacobi",
            config=PPAS,
            cls=ChernClass(0, 2, 0),
            tree=TreeLeaf(ChernClass(0, 2, 0), "odd-degree line bundle on the theta curve"),
            expected_chd0=_pw([0], [(0, 0, 0), (0, 2, 0)]),
            notes="pushforward of a degree-1 line bundle from the genus-2 curve",
        )
    )

    return {s.id: s for s in scenarios}


_SCENARIOS = _build()


def list_scenarios() -> list[str]:
    return sorted(_SCENARIOS)


def load_scenario(scenario_id: str) -> Scenario:
    try:
        return _SCENARIOS[scenario_id]
    except KeyError:
        raise KeyError(f"unknown scenario: {scenario_id!r}") from None
