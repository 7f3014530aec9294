"""Command-line surface: wall queries, tree validation, function assembly.

Exit codes: 0 success, 1 validation/check failure, 2 usage error.  All
numbers are rendered exactly; pass --approx for an extra decimal column.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from fractions import Fraction

# accept negative fractions like -5/2 as option values, not flags
_NEGATIVE_VALUE = re.compile(r"^-\d+(/\d+)?$|^-\d*\.\d+$")

from . import catalog
from .exactnum import format_rational
from .hntree import (
    PiecewiseQuadratic,
    assemble_chd0,
    assemble_chd1,
    classify_breakpoints,
    hn_factors_at,
    tree_from_json,
    tree_to_json,
    trivial_chd,
    validate_tree,
)
from .lattice import (
    ChernClass,
    SurfaceConfig,
    discriminant,
    line_bundle_class,
    mu_slope,
)
from .svgplot import render_function_svg, render_walls_svg
from .walls import enumerate_candidates, slope_crossing_oracle

USAGE_ERROR, CHECK_FAILURE = 2, 1


def _load_config(args) -> SurfaceConfig:
    if getattr(args, "config", None):
        with open(args.config) as fh:
            return SurfaceConfig.from_json(json.load(fh))
    return SurfaceConfig.preset(getattr(args, "preset", None) or "ppas")


def _approx(value) -> str:
    return f"{float(value):.6g}"


def _emit(text: str, out) -> None:
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_walls(args) -> int:
    cfg = _load_config(args)
    v = ChernClass.parse(args.cls)
    cfg.check_class(v)
    candidates = enumerate_candidates(
        v,
        Fraction(args.beta),
        Fraction(args.amin),
        Fraction(args.amax) if args.amax else None,
        cfg,
        strict=args.strict,
        threads=args.threads,
    )
    if args.format == "json":
        data = [
            {
                "wall": c.wall.to_json(),
                "cross_a": format_rational(c.cross_a),
                "witness": c.witness.to_json(),
                "witnesses": [w.to_json() for w in c.witnesses],
            }
            for c in candidates
        ]
        _emit(json.dumps(data, indent=2) + "\n", args.out)
    elif args.format == "csv":
        lines = ["center,radius_sq,cross_a,witness"]
        for c in candidates:
            lines.append(
                f"{format_rational(c.wall.center)},{format_rational(c.wall.radius_sq)},"
                f"{format_rational(c.cross_a)},{c.witness}"
            )
        _emit("\n".join(lines) + "\n", args.out)
    elif args.format == "svg":
        _emit(render_walls_svg(v, candidates, beta_star=Fraction(args.beta)), args.out)
    else:
        header = ["center", "radius_sq", "cross_a", "witness"]
        if args.approx:
            header.append("cross_a~")
        rows = []
        for c in candidates:
            row = [
                format_rational(c.wall.center),
                format_rational(c.wall.radius_sq),
                format_rational(c.cross_a),
                str(c.witness),
            ]
            if args.approx:
                row.append(_approx(c.cross_a))
            rows.append(row)
        _emit(_table(header, rows), args.out)
    return 0


def _table(header: list[str], rows: list[list[str]]) -> str:
    widths = [len(h) for h in header]
    for row in rows:
        widths = [max(w, len(c)) for w, c in zip(widths, row)]
    fmt = "  ".join(f"{{:<{w}}}" for w in widths)
    lines = [fmt.format(*header)]
    lines.extend(fmt.format(*row) for row in rows)
    return "\n".join(lines) + "\n"


def _scenario_function(scenario) -> PiecewiseQuadratic:
    if scenario.tree is None:
        raise ValueError(f"scenario {scenario.id} carries wall data only")
    if scenario.trivial:
        return trivial_chd(scenario.cls)
    return assemble_chd0(scenario.tree)


def _resolve_tree(args):
    if args.scenario:
        scenario = catalog.load_scenario(args.scenario)
        if scenario.tree is None:
            raise ValueError(f"scenario {scenario.id} carries wall data only")
        return scenario.tree
    with open(args.tree) as fh:
        return tree_from_json(json.load(fh))


def cmd_chd(args) -> int:
    if args.scenario and args.k == 0:
        fn = _scenario_function(catalog.load_scenario(args.scenario))
    else:
        tree = _resolve_tree(args)
        fn = assemble_chd1(tree) if args.k == 1 else assemble_chd0(tree)
    if args.format == "json":
        _emit(json.dumps(fn.to_json(), indent=2) + "\n", args.out)
    elif args.format == "csv":
        lines = ["x,value"]
        lo = float(fn.breakpoints[0]) - 1 if fn.breakpoints else -1.0
        hi = float(fn.breakpoints[-1]) + 1 if fn.breakpoints else 1.0
        n = args.samples
        for i in range(n + 1):
            x = Fraction(round((lo + (hi - lo) * i / n) * 4096), 4096)
            lines.append(f"{format_rational(x)},{_approx(fn.eval_at(x))}")
        _emit("\n".join(lines) + "\n", args.out)
    elif args.format == "svg":
        _emit(render_function_svg(fn), args.out)
    else:
        lines = []
        bounds = ["-inf"] + [str(b) for b in fn.breakpoints] + ["+inf"]
        for i, p in enumerate(fn.pieces):
            lines.append(f"[{bounds[i]}, {bounds[i + 1]}]:  {p}")
        _emit("\n".join(lines) + "\n", args.out)
    return 0


def cmd_validate(args) -> int:
    tree = _resolve_tree(args)
    report = validate_tree(tree)
    if report:
        print("tree is valid")
        return 0
    for violation in report.violations:
        print(f"violation: {violation}")
    return CHECK_FAILURE


def cmd_hn(args) -> int:
    tree = _resolve_tree(args)
    factors = hn_factors_at(tree, Fraction(args.a), Fraction(args.beta))
    header = ["class", "tilt_slope"]
    rows = []
    for cls, slope in factors:
        slope_txt = "+inf" if slope == float("inf") else format_rational(slope)
        rows.append([str(cls), slope_txt])
    _emit(_table(header, rows), args.out)
    return 0


def cmd_catalog(args) -> int:
    if args.id:
        scenario = catalog.load_scenario(args.id)
        if args.export:
            data = {
                "id": scenario.id,
                "config": scenario.config.to_json(),
                "class": scenario.cls.to_json(),
                "tree": tree_to_json(scenario.tree) if scenario.tree else None,
                "chd0": scenario.expected_chd0.to_json()
                if scenario.expected_chd0
                else None,
                "notes": scenario.notes,
            }
            _emit(json.dumps(data, indent=2) + "\n", args.out)
        else:
            print(f"{scenario.id}: class {scenario.cls} on {scenario.config.name}")
            print(f"  {scenario.notes}")
        return 0
    for sid in catalog.list_scenarios():
        print(sid)
    return 0


def _check_scenario(scenario) -> list[tuple[str, bool]]:
    results = []
    if scenario.tree is not None:
        if not scenario.trivial:
            results.append(
                (f"{scenario.id}: tree valid", bool(validate_tree(scenario.tree)))
            )
        if scenario.expected_chd0 is not None:
            fn = _scenario_function(scenario)
            results.append(
                (f"{scenario.id}: chd0 regression", fn == scenario.expected_chd0)
            )
            results.append((f"{scenario.id}: continuity", fn.check_continuity()))
            results.append((f"{scenario.id}: nonnegative", fn.check_nonnegative()))
        if scenario.expected_jumps:
            reports = {r.x: r for r in classify_breakpoints(scenario.tree)}
            ok = all(
                x in reports and reports[x].derivative_jump == jump
                for x, jump in scenario.expected_jumps.items()
            )
            results.append((f"{scenario.id}: derivative jumps", ok))
    for wall in scenario.expected_walls:
        cands = enumerate_candidates(
            scenario.cls, Fraction(-2), Fraction(1, 100), Fraction(10), scenario.config
        )
        found = next((c for c in cands if c.wall == wall), None)
        ok = found is not None and slope_crossing_oracle(
            scenario.cls, found.witness, wall, Fraction(1, 64)
        )
        results.append((f"{scenario.id}: wall {wall} found+confirmed", ok))
    return results


def cmd_check(args) -> int:
    results: list[tuple[str, bool]] = []
    for sid in catalog.list_scenarios():
        results.extend(_check_scenario(catalog.load_scenario(sid)))
    # cross-scenario rigidity: discriminant-0 classes admit no candidate walls
    for k in (-2, -1, 1, 2):
        v = line_bundle_class(k, SurfaceConfig.preset("ppas"))
        cands = enumerate_candidates(
            v, Fraction(mu_slope(v)) - 2, Fraction(1, 100), Fraction(10)
        )
        results.append((f"disc-0 rigidity for {v} (disc {discriminant(v)})", not cands))
    failed = [name for name, ok in results if not ok]
    width = max(len(name) for name, _ in results)
    for name, ok in results:
        print(f"{name:<{width}}  {'PASS' if ok else 'FAIL'}")
    print(f"\n{len(results) - len(failed)}/{len(results)} checks passed")
    return CHECK_FAILURE if failed else 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tiltwall",
        description="Exact wall-and-chamber computations for tilt stability",
    )
    parser._negative_number_matcher = _NEGATIVE_VALUE
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p):
        p.add_argument("--preset", choices=["ppas", "abelian-(1,2)"], default=None)
        p.add_argument("--config", help="path to a surface config JSON file")
        p.add_argument("--out", help="write output to a file instead of stdout")

    p = sub.add_parser("walls", help="enumerate candidate walls crossing a segment")
    add_common(p)
    p.add_argument("--class", dest="cls", required=True, help='class triple, e.g. "2,0,-5"')
    p.add_argument("--beta", required=True, help="rational beta of the query line")
    p.add_argument("--amin", required=True, help="lower end of the segment (a = alpha^2/2)")
    p.add_argument("--amax", default=None, help="upper end; default is a conservative bound")
    p.add_argument("--strict", action="store_true", help="strict discriminant inequality")
    p.add_argument("--threads", type=int, default=None)
    p.add_argument("--approx", action="store_true", help="add 6-digit decimal column")
    p.add_argument("--format", choices=["table", "json", "csv", "svg"], default="table")
    p.set_defaults(func=cmd_walls)

    p = sub.add_parser("chd", help="assemble a Chern degree function")
    add_common(p)
    p.add_argument("--scenario", help="catalog scenario id")
    p.add_argument("--tree", help="path to a tree JSON file")
    p.add_argument("--k", type=int, choices=[0, 1], default=0)
    p.add_argument("--samples", type=int, default=100, help="sample count in csv mode")
    p.add_argument("--format", choices=["table", "json", "csv", "svg"], default="table")
    p.set_defaults(func=cmd_chd)

    p = sub.add_parser("validate", help="validate a destabilization tree")
    add_common(p)
    p.add_argument("--scenario")
    p.add_argument("--tree")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("hn", help="HN factor classes at a point (a, beta)")
    add_common(p)
    p.add_argument("--scenario")
    p.add_argument("--tree")
    p.add_argument("--a", required=True)
    p.add_argument("--beta", required=True)
    p.set_defaults(func=cmd_hn)

    p = sub.add_parser("catalog", help="list or export built-in scenarios")
    add_common(p)
    p.add_argument("--id")
    p.add_argument("--export", action="store_true")
    p.set_defaults(func=cmd_catalog)

    for sp in sub.choices.values():
        sp._negative_number_matcher = _NEGATIVE_VALUE

    p = sub.add_parser("check", help="run every catalog regression and invariant")
    add_common(p)
    p.set_defaults(func=cmd_check)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command in ("chd", "validate", "hn") and not (
        getattr(args, "scenario", None) or getattr(args, "tree", None)
    ):
        parser.error(f"{args.command}: provide --scenario or --tree")
    try:
        return args.func(args)
    except (ValueError, KeyError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_ERROR


if __name__ == "__main__":
    sys.exit(main())
