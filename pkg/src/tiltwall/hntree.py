"""Destabilization trees, their validation, and Chern degree function assembly.

A tree records successive destabilizations of a class toward the a = 0 line:
each internal node carries the wall along which it splits into its (ordered)
children, and the final vertices determine the breakpoints -p_G of the
resulting piecewise quadratic function.  Trees are input data; this module
verifies their numerical consistency and assembles the functions, it never
decides which walls are actual.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Union

from .exactnum import (
    QuadPoly,
    QuadraticIrrational,
    format_rational,
    parse_quadratic_irrational,
    quad_eval,
)
from .lattice import (
    ChernClass,
    chd_polynomial,
    class_add,
    discriminant,
    mu_slope,
    p_intercept,
    tilt_slope,
)
from .walls import NumericalWall, Nesting, Semicircle, nesting, wall_between, wall_from_json

QI = QuadraticIrrational


@dataclass
class TreeLeaf:
    cls: ChernClass
    label: str = ""

    @property
    def p(self) -> QI:
        return p_intercept(self.cls).value


@dataclass
class TreeNode:
    cls: ChernClass
    wall: NumericalWall
    children: list[Union["TreeNode", TreeLeaf]]


HNTree = Union[TreeNode, TreeLeaf]


def tree_leaves(tree: HNTree) -> list[TreeLeaf]:
    """Final vertices in lexicographic (depth-first, child-order) order."""
    if isinstance(tree, TreeLeaf):
        return [tree]
    out: list[TreeLeaf] = []
    for child in tree.children:
        out.extend(tree_leaves(child))
    return out


def tree_to_json(tree: HNTree) -> dict:
    if isinstance(tree, TreeLeaf):
        data: dict = {"class": tree.cls.to_json()}
        if tree.label:
            data["label"] = tree.label
        return data
    return {
        "class": tree.cls.to_json(),
        "wall": tree.wall.to_json(),
        "children": [tree_to_json(c) for c in tree.children],
    }


def tree_from_json(data: dict) -> HNTree:
    cls = ChernClass.from_json(data["class"])
    if "children" in data:
        return TreeNode(
            cls,
            wall_from_json(data["wall"]),
            [tree_from_json(c) for c in data["children"]],
        )
    return TreeLeaf(cls, data.get("label", ""))


@dataclass
class ValidationReport:
    passed: bool
    violations: list[str] = field(default_factory=list)

    def __bool__(self):
        return self.passed


def validate_tree(tree: HNTree) -> ValidationReport:
    """Check every structural invariant of a destabilization tree.

    Failures are reported with node paths; they are data, not exceptions.
    """
    violations: list[str] = []

    def visit(node: HNTree, path: str, parent_wall: Optional[NumericalWall]):
        if isinstance(node, TreeLeaf):
            try:
                node.p
            except ValueError as exc:
                violations.append(f"{path}: leaf has no intercept ({exc})")
            if discriminant(node.cls) < 0:
                violations.append(f"{path}: leaf discriminant is negative")
            return
        if len(node.children) < 2:
            violations.append(f"{path}: internal node needs at least two children")
        total = None
        for child in node.children:
            total = child.cls if total is None else class_add(total, child.cls)
        if total != node.cls:
            violations.append(
                f"{path}: children sum to {total}, expected {node.cls}"
            )
        for i, child in enumerate(node.children):
            cpath = f"{path}.{i}"
            w = wall_between(node.cls, child.cls)
            if w != node.wall:
                violations.append(
                    f"{cpath}: wall between node and child is {w}, node wall is {node.wall}"
                )
            if discriminant(child.cls) < 0:
                violations.append(f"{cpath}: child discriminant is negative")
        if len(node.children) >= 2:
            child_disc = sum(discriminant(c.cls) for c in node.children)
            if not child_disc < discriminant(node.cls):
                violations.append(
                    f"{path}: children discriminants sum to {child_disc}, "
                    f"not below {discriminant(node.cls)}"
                )
        if (
            parent_wall is not None
            and isinstance(parent_wall, Semicircle)
            and isinstance(node.wall, Semicircle)
        ):
            rel = nesting(node.wall, parent_wall)
            if not (rel.relation is Nesting.NESTED and rel.inner == node.wall):
                violations.append(
                    f"{path}: wall {node.wall} is not strictly nested inside {parent_wall}"
                )
        for i, child in enumerate(node.children):
            visit(child, f"{path}.{i}", node.wall)

    visit(tree, "root", None)

    # well-orderedness: leaf intercepts non-increasing in lexicographic order
    leaves = tree_leaves(tree)
    try:
        ps = [leaf.p for leaf in leaves]
        for i in range(len(ps) - 1):
            if ps[i] < ps[i + 1]:
                violations.append(
                    f"not well-ordered: leaf {i} has p = {ps[i]} < {ps[i + 1]} = leaf {i + 1}"
                )
    except ValueError:
        pass  # already reported above

    return ValidationReport(not violations, violations)


class PointOnWallError(ValueError):
    """The query point lies on a wall; the filtration is not unique there."""


def hn_factors_at(tree: HNTree, a, beta) -> list[tuple[ChernClass, object]]:
    """Harder-Narasimhan factor classes (with tilt slopes) at the point (a, beta).

    A node splits into its children iff the point lies strictly inside the
    node's wall.  At a = 0 consecutive equal-slope factors are merged.
    """
    a, beta = Fraction(a), Fraction(beta)
    if a < 0:
        raise ValueError("a must be nonnegative")
    root_cls = tree.cls
    if root_cls.v0 > 0 and not beta < mu_slope(root_cls):
        raise ValueError("beta must be strictly left of the vertical wall")

    def collect(node: HNTree) -> list[ChernClass]:
        if isinstance(node, TreeLeaf):
            return [node.cls]
        if not isinstance(node.wall, Semicircle):
            raise ValueError("vertical walls are not supported in trees")
        gap = (beta - node.wall.center) ** 2 + 2 * a - node.wall.radius_sq
        if gap == 0:
            raise PointOnWallError("point lies on a wall; filtration not unique")
        inside = gap < 0
        if not inside:
            return [node.cls]
        out: list[ChernClass] = []
        for child in node.children:
            out.extend(collect(child))
        return out

    factors = collect(tree)
    result = [(cls, tilt_slope(cls, a, beta)) for cls in factors]
    if a == 0:
        merged: list[tuple[ChernClass, object]] = []
        for cls, slope in result:
            if merged and merged[-1][1] == slope:
                prev_cls, _ = merged[-1]
                merged[-1] = (class_add(prev_cls, cls), slope)
            else:
                merged.append((cls, slope))
        result = merged
    return result


@dataclass
class PiecewiseQuadratic:
    """Sorted algebraic breakpoints with one quadratic piece per interval.

    pieces[i] applies on [breakpoints[i-1], breakpoints[i]]; the function is
    continuous, with len(pieces) == len(breakpoints) + 1.  domain_start, when
    set, restricts where the function is meaningful (used for chd^1, which is
    only described right of the vertical wall).
    """

    breakpoints: list[QI]
    pieces: list[QuadPoly]
    domain_start: Optional[QI] = None

    def __post_init__(self):
        if len(self.pieces) != len(self.breakpoints) + 1:
            raise ValueError("need exactly one more piece than breakpoints")
        for i in range(len(self.breakpoints) - 1):
            if not self.breakpoints[i] < self.breakpoints[i + 1]:
                raise ValueError("breakpoints must be strictly ascending")

    def piece_index_at(self, x) -> int:
        x = x if isinstance(x, QI) else QI(Fraction(x))
        for i, b in enumerate(self.breakpoints):
            if x <= b:
                return i
        return len(self.pieces) - 1

    def eval_at(self, x) -> QI:
        x = x if isinstance(x, QI) else QI(Fraction(x))
        return quad_eval(self.pieces[self.piece_index_at(x)], x)

    def check_continuity(self) -> bool:
        for i, b in enumerate(self.breakpoints):
            if quad_eval(self.pieces[i], b) != quad_eval(self.pieces[i + 1], b):
                return False
        return True

    def check_nonnegative(self) -> bool:
        """Exact nonnegativity on the (restricted) domain, by vertex analysis."""
        for i, p in enumerate(self.pieces):
            lo = self.breakpoints[i - 1] if i > 0 else self.domain_start
            hi = self.breakpoints[i] if i < len(self.breakpoints) else None
            if not _quad_nonneg_on(p, lo, hi):
                return False
        return True

    def reflect(self) -> "PiecewiseQuadratic":
        """The function x -> f(-x): breakpoints negated/reversed, pieces flipped."""
        return PiecewiseQuadratic(
            [-b for b in reversed(self.breakpoints)],
            [p.reflect() for p in reversed(self.pieces)],
            domain_start=None,
        )

    def __eq__(self, other):
        if not isinstance(other, PiecewiseQuadratic):
            return NotImplemented
        return self.breakpoints == other.breakpoints and self.pieces == other.pieces

    def to_json(self) -> dict:
        data = {
            "breakpoints": [str(b) for b in self.breakpoints],
            "pieces": [
                [format_rational(p.c0), format_rational(p.c1), format_rational(p.c2)]
                for p in self.pieces
            ],
        }
        if self.domain_start is not None:
            data["domain_start"] = str(self.domain_start)
        return data

    @classmethod
    def from_json(cls, data: dict) -> "PiecewiseQuadratic":
        return cls(
            [parse_quadratic_irrational(b) for b in data["breakpoints"]],
            [QuadPoly(Fraction(c0), Fraction(c1), Fraction(c2)) for c0, c1, c2 in data["pieces"]],
            domain_start=(
                parse_quadratic_irrational(data["domain_start"])
                if "domain_start" in data
                else None
            ),
        )


def _quad_nonneg_on(p: QuadPoly, lo: Optional[QI], hi: Optional[QI]) -> bool:
    if p.is_zero:
        return True
    if lo is not None and quad_eval(p, lo).sign() < 0:
        return False
    if hi is not None and quad_eval(p, hi).sign() < 0:
        return False
    if p.c2 > 0:
        vertex = QI(-p.c1 / (2 * p.c2))
        if (lo is None or lo < vertex) and (hi is None or vertex < hi):
            if quad_eval(p, vertex).sign() < 0:
                return False
        return True
    if p.c2 < 0:
        return lo is not None and hi is not None  # endpoints already checked
    # linear
    if p.c1 > 0:
        return lo is not None
    if p.c1 < 0:
        return hi is not None
    return p.c0 >= 0


def _require_valid(tree: HNTree) -> None:
    report = validate_tree(tree)
    if not report:
        raise ValueError("invalid tree: " + "; ".join(report.violations))


def assemble_chd0(tree: HNTree) -> PiecewiseQuadratic:
    """Assemble the degree-0 Chern degree function from a well-ordered tree.

    Breakpoints are the distinct values -p_G over final vertices G; the piece
    after the k-th breakpoint is the cumulative sum of the Chern degree
    polynomials of the leaves switched on so far.
    """
    _require_valid(tree)
    leaves = tree_leaves(tree)
    marks = [(-leaf.p, leaf.cls) for leaf in leaves]  # ascending by well-order
    breakpoints: list[QI] = []
    pieces: list[QuadPoly] = [QuadPoly(0)]
    acc = QuadPoly(0)
    for x, cls in marks:
        acc = acc + chd_polynomial(cls)
        if breakpoints and breakpoints[-1] == x:
            pieces[-1] = acc
        else:
            breakpoints.append(x)
            pieces.append(acc)
    fn = PiecewiseQuadratic(breakpoints, pieces)
    assert fn.pieces[-1] == chd_polynomial(tree.cls)
    assert fn.check_continuity()
    return fn


def assemble_chd1(tree: HNTree) -> PiecewiseQuadratic:
    """chd^1 = chd^0 - ch2^{-x}(root), valid right of the vertical wall."""
    chd0 = assemble_chd0(tree)
    root_poly = chd_polynomial(tree.cls)
    root_cls = tree.cls
    domain_start = None
    if root_cls.v0 != 0:
        domain_start = QI(-mu_slope(root_cls))
    fn = PiecewiseQuadratic(
        list(chd0.breakpoints),
        [p - root_poly for p in chd0.pieces],
        domain_start=domain_start,
    )
    if not fn.check_nonnegative():
        raise ValueError("assembled chd1 is negative somewhere on its domain")
    return fn


def trivial_chd(v: ChernClass) -> PiecewiseQuadratic:
    """Two-piece function {0 left of -p_v; ch2^{-x}(v) right of it}."""
    if discriminant(v) < 0:
        raise ValueError("negative discriminant")
    if v.v0 < 0 or (v.v0 == 0 and v.v1 <= 0):
        raise ValueError("trivial function requires a sheaf-type class")
    x0 = -p_intercept(v).value
    return PiecewiseQuadratic([x0], [QuadPoly(0), chd_polynomial(v)])


@dataclass
class BreakpointReport:
    x: QI
    contributing_leaves: list[TreeLeaf]
    derivative_jump: QI
    differentiable: bool
    condition_tags: frozenset
    overlap: bool


def classify_breakpoints(tree: HNTree) -> list[BreakpointReport]:
    """Critical-point data at each breakpoint of the assembled function.

    The derivative jump equals the sum of sqrt(disc) over contributing final
    vertices; the function is differentiable exactly when all of them have
    discriminant 0.  Tag "a" (a slope-0 factor at that parameter) is emitted
    when a contributing leaf has positive discriminant and rational
    intercept; tag "c" marks the numerically witnessed overlap of such a leaf
    with a discriminant-0 one.  The remaining classification requires
    geometric input and is never reported from numerical data alone.
    """
    chd0 = assemble_chd0(tree)
    leaves = tree_leaves(tree)
    by_x: dict[QI, list[TreeLeaf]] = {}
    for leaf in leaves:
        by_x.setdefault(-leaf.p, []).append(leaf)

    reports = []
    for i, x in enumerate(chd0.breakpoints):
        contributing = by_x[x]
        jump = QI(0)
        for leaf in contributing:
            jump = jump + QI.sqrt(discriminant(leaf.cls))
        # independent check against the assembled pieces
        left = chd0.pieces[i].derivative()
        right = chd0.pieces[i + 1].derivative()
        piece_jump = quad_eval(right, x) - quad_eval(left, x)
        assert piece_jump == jump
        tags = set()
        has_positive = any(discriminant(l.cls) > 0 for l in contributing)
        if has_positive and x.is_rational:
            tags.add("a")
        overlap = len(contributing) > 1
        if overlap and has_positive and any(
            discriminant(l.cls) == 0 for l in contributing
        ):
            tags.add("c")
        reports.append(
            BreakpointReport(
                x=x,
                contributing_leaves=contributing,
                derivative_jump=jump,
                differentiable=jump == QI(0),
                condition_tags=frozenset(tags),
                overlap=overlap,
            )
        )
    return reports


def serre_dual_function(f: PiecewiseQuadratic) -> PiecewiseQuadratic:
    """Reflection x -> f(-x), matching the dual-class symmetry of the theory."""
    return f.reflect()
