"""Command-line front end.

Exit codes: 0 success, 2 invalid input, 3 monochromatic input, 4 budget
exceeded, 5 internal invariant violation.
"""
from __future__ import annotations

import argparse
import json
import sys
from typing import Optional, Sequence

from . import __version__
from .crossings import crossing_pairs, is_plane, verify_minbst_properties
from .errors import BichromaError, InputError, InternalError
from .experiment import cmd_experiment
from .generators import GENERATORS, generate
from .io import (_write_text, instance_to_json, load_instance, load_tree, save_instance,
                 save_tree, write_json)
from .minbst import ColoredTree, min_colored_spanning_tree, tree_problems
from .oracles import brute_force_min_plane_tree
from .quadtree import (Shift, approx_tree, build_quadtree, derandomized_bound,
                       derandomized_tree, grid_size, length_bound, normalize, opt_prime)
from .render import render_svg


def _emit(text: str, path: Optional[str]):
    if path:
        _write_text(path, text)
    else:
        sys.stdout.write(text)


def cmd_gen(args) -> int:
    inst = generate(args.kind, args.n, args.seed, args.colors)
    if args.out:
        save_instance(inst, args.out)
    else:
        sys.stdout.write(instance_to_json(inst))
    return 0


def cmd_minbst(args) -> int:
    points = load_instance(args.input).points
    tree = min_colored_spanning_tree(points)
    if args.out_tree:
        save_tree(tree, args.out_tree)
    if args.svg:
        render_svg(points, tree, args.svg, mark_crossings=True, title="minimum tree")
    print(f"n={tree.n} edges={len(tree.edges)} length={tree.total_length!r}")
    return 0


def cmd_approx(args) -> int:
    points = load_instance(args.input).points
    n = len(points)
    if args.shift == "best":
        tree, shift = derandomized_tree(points)
    else:
        shift = Shift.parse(args.shift, n)
        tree = approx_tree(points, shift)
    problems = tree_problems(tree)
    if problems or not is_plane(tree):
        raise InternalError(f"approximate tree is invalid: {problems or 'crossing edges'}")
    if args.out_tree:
        save_tree(tree, args.out_tree, {"shift": shift.label()})
    if args.svg:
        render_svg(points, tree, args.svg, title=f"plane tree, shift {shift.label()}")

    best = min_colored_spanning_tree(points)
    norm, _ = normalize(points)
    ref = min_colored_spanning_tree(norm)
    N = grid_size(n)
    profile = opt_prime(ref, build_quadtree(norm, shift, N))
    # the bound is stated for the normalized instance; ratios are scale-free
    norm_length = ColoredTree(norm, tree.edges).total_length
    bound = length_bound(ref.total_length, profile.total)
    report = {
        "shift": shift.label(),
        "shift_xy": [shift.x, shift.y],
        "n": n,
        "N": N,
        "length": tree.total_length,
        "minbst_length": best.total_length,
        "ratio": tree.total_length / best.total_length,
        "normalized_length": norm_length,
        "normalized_minbst_length": ref.total_length,
        "opt_prime_per_level": profile.per_level,
        "opt_prime_total": profile.total,
        "length_bound": bound,
        "length_bound_ok": norm_length <= bound + 1e-9,
    }
    if args.shift == "best":
        report["derandomized_bound"] = derandomized_bound(ref.total_length, N)
    if args.report:
        write_json(args.report, report)
    print(f"shift={shift.label()} length={tree.total_length!r} ratio={report['ratio']:.6f}")
    return 0


def cmd_verify(args) -> int:
    points = load_instance(args.input).points
    best = min_colored_spanning_tree(points)
    tree = load_tree(args.tree, points) if args.tree else best
    problems = tree_problems(tree)
    if problems:
        raise InputError("not a properly colored spanning tree: " + "; ".join(problems))
    if args.props:
        if abs(tree.total_length - best.total_length) > 1e-9 * max(1.0, best.total_length):
            raise InputError(f"tree length {tree.total_length!r} is not minimum "
                             f"({best.total_length!r}); properties only apply to minimum trees")
        report = verify_minbst_properties(points, tree)
        doc = report.to_dict()
        doc["all_ok"] = report.all_ok
        text = report.to_text() + f"all checks passed      {report.all_ok}\n"
    else:
        pairs = crossing_pairs(tree)
        doc = {"n": tree.n, "total_length": tree.total_length, "crossing_count": len(pairs),
               "crossing_pairs": [list(p) for p in pairs], "plane": not pairs}
        text = (f"n          {tree.n}\nlength     {tree.total_length!r}\n"
                f"crossings  {len(pairs)}\nplane      {not pairs}\n")
    if args.report == "json":
        _emit(json.dumps(doc, indent=2, sort_keys=True) + "\n", args.out)
    else:
        _emit(text, args.out)
    if args.props and not doc["all_ok"]:
        print("error: a structural property failed on the minimum tree", file=sys.stderr)
        return InternalError.exit_code
    return 0


def cmd_oracle(args) -> int:
    points = load_instance(args.input).points
    plane = brute_force_min_plane_tree(points)
    best = min_colored_spanning_tree(points)
    if args.out_tree:
        save_tree(plane, args.out_tree)
    if args.svg:
        render_svg(points, plane, args.svg, title="shortest plane tree")
    print(f"plane_optimum={plane.total_length!r} minbst={best.total_length!r} "
          f"ratio={plane.total_length / best.total_length:.6f}")
    return 0


def cmd_run_experiment(args) -> int:
    records = cmd_experiment(args.config, args.out_dir)
    print(f"{len(records)} records written to {args.out_dir}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="bichroma",
                                description="Minimum and plane bichromatic spanning trees.")
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen", help="generate an instance")
    g.add_argument("--kind", choices=sorted(GENERATORS), default="uniform")
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--colors", type=int, default=2)
    g.add_argument("--out", help="output file (.json or .csv); stdout if omitted")
    g.set_defaults(func=cmd_gen)

    m = sub.add_parser("minbst", help="minimum properly colored spanning tree")
    m.add_argument("--in", dest="input", required=True)
    m.add_argument("--out-tree")
    m.add_argument("--svg")
    m.set_defaults(func=cmd_minbst)

    a = sub.add_parser("approx", help="plane tree from a shifted quadtree")
    a.add_argument("--in", dest="input", required=True)
    a.add_argument("--shift", default="best", help="random:SEED, grid:I,J or best (all grid shifts)")
    a.add_argument("--out-tree")
    a.add_argument("--svg")
    a.add_argument("--report", help="JSON report with the length bound check")
    a.set_defaults(func=cmd_approx)

    v = sub.add_parser("verify", help="crossing statistics and structural checks")
    v.add_argument("--in", dest="input", required=True)
    v.add_argument("--tree", help="tree JSON; defaults to the computed minimum tree")
    v.add_argument("--props", action="store_true", help="check the minimum-tree properties")
    v.add_argument("--report", choices=["json", "text"], default="text")
    v.add_argument("--out", help="write the report here instead of stdout")
    v.set_defaults(func=cmd_verify)

    o = sub.add_parser("oracle", help="exact shortest plane tree (n <= 9)")
    o.add_argument("--in", dest="input", required=True)
    o.add_argument("--out-tree")
    o.add_argument("--svg")
    o.set_defaults(func=cmd_oracle)

    e = sub.add_parser("experiment", help="run a configured experiment")
    e.add_argument("--config", required=True)
    e.add_argument("--out-dir", required=True)
    e.set_defaults(func=cmd_run_experiment)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except BichromaError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code


if __name__ == "__main__":
    sys.exit(main())
