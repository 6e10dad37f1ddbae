"""Command line interface.

Subcommands: ops (intersection/union of element sets), image (two-region
color experiment on a raster), nerve (nerve complex of a collection),
check-convex (union-convexity and representability checks), verify (the
randomized law checker).  Machine-readable JSON goes to stdout,
diagnostics to stderr.

Exit codes: 0 success, 1 I/O failure, 2 usage or validation error,
3 empty region, 4 verification found failures.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import formats, imaging, verify
from .core import GlossaError
from .formats import SchemaError
from .imaging import EmptyRegionError, ImageError
from .nerve import (
    check_convexity_theorem,
    check_d_convex_union_representable,
    descriptive_nerve,
)
from .setops import (
    VARIANTS,
    DescriptiveResult,
    descriptive_intersection,
    descriptive_union,
)

EXIT_OK = 0
EXIT_IO = 1
EXIT_USAGE = 2
EXIT_EMPTY_REGION = 3
EXIT_VERIFY_FAILED = 4

MAX_NERVE_MEMBERS = 16


def _read_json(path: str):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"{path}: invalid JSON: {exc}") from exc


def _emit(obj) -> None:
    sys.stdout.write(json.dumps(obj, sort_keys=True, indent=2) + "\n")


def _inline_targets(raw: str):
    try:
        parsed = json.loads(raw)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"--targets: invalid JSON: {exc}") from exc
    if not isinstance(parsed, list) or not parsed:
        raise SchemaError("--targets: expected a nonempty JSON list of vectors")
    out = []
    for i, t in enumerate(parsed):
        if not isinstance(t, list) or not all(
            isinstance(v, (int, float)) and not isinstance(v, bool) for v in t
        ):
            raise SchemaError(f"--targets[{i}]: expected a list of numbers")
        out.append(tuple(float(v) for v in t))
    return tuple(out)


def cmd_ops(args) -> int:
    g = formats.glossa_from_json(_read_json(args.glossa))
    a = formats.element_set_from_json(_read_json(args.a), g)
    b = formats.element_set_from_json(_read_json(args.b), g)
    if args.op == "intersection":
        res = DescriptiveResult(descriptive_intersection(g, a, b, args.eta), False)
    else:
        if args.config is None:
            raise SchemaError("--config is required for --op union")
        cfg = formats.union_config_from_json(_read_json(args.config))
        res = descriptive_union(g, a, b, cfg)
    _emit(formats.result_to_json(res))
    return EXIT_OK


def cmd_image(args) -> int:
    img = imaging.load_image(args.input)
    region_a = formats.region_from_json(_read_json(args.region_a))
    region_b = formats.region_from_json(_read_json(args.region_b))
    spatial, kind = args.variant.split("-", 1)
    if kind == "discriminatory":
        if args.targets is None:
            raise SchemaError(f"--targets is required for variant {args.variant!r}")
        targets = _inline_targets(args.targets)
    else:
        if args.targets is not None:
            raise SchemaError(f"variant {args.variant!r} takes no targets")
        targets = None
    params = imaging.ExperimentParams(spatial, targets, args.eta)
    result, rendered = imaging.run_experiment(img, region_a, region_b, params, args.mode)
    imaging.save_image(args.out, rendered)
    print(f"wrote {args.out}", file=sys.stderr)
    _emit(
        {
            "selected_pixels": len(result.elements),
            "includes_empty_set": result.includes_empty_set,
        }
    )
    return EXIT_OK


def cmd_nerve(args) -> int:
    g = formats.glossa_from_json(_read_json(args.glossa))
    members = formats.collection_from_json(_read_json(args.collection), g)
    if len(members) > MAX_NERVE_MEMBERS:
        raise SchemaError(
            f"collection has {len(members)} members; "
            f"this command handles at most {MAX_NERVE_MEMBERS}"
        )
    k = descriptive_nerve(g, members, args.eta)
    _emit(formats.complex_to_json(k))
    return EXIT_OK


def cmd_check_convex(args) -> int:
    g = formats.glossa_from_json(_read_json(args.glossa))
    representability = args.complex or args.collection or args.config
    if representability:
        for flag, val in (("--complex", args.complex), ("--collection", args.collection), ("--config", args.config)):
            if val is None:
                raise SchemaError(f"{flag} is required for a representability check")
        k = formats.complex_from_json(_read_json(args.complex))
        members = formats.collection_from_json(_read_json(args.collection), g)
        cfg = formats.union_config_from_json(_read_json(args.config))
        try:
            report = check_d_convex_union_representable(
                k, g, members, cfg, args.union_scope
            )
        except ValueError as exc:
            raise SchemaError(str(exc)) from exc
        _emit(report.to_json())
        return EXIT_OK
    for flag, val in (("--a", args.a), ("--b", args.b), ("--targets", args.targets)):
        if val is None:
            raise SchemaError(f"{flag} is required for a pair convexity check")
    a = formats.element_set_from_json(_read_json(args.a), g)
    b = formats.element_set_from_json(_read_json(args.b), g)
    targets = _inline_targets(args.targets)
    try:
        report = check_convexity_theorem(g, a, b, targets, args.eta)
    except ValueError as exc:
        raise SchemaError(str(exc)) from exc
    _emit(report.to_json())
    return EXIT_OK


def cmd_verify(args) -> int:
    if args.trials < 1:
        raise SchemaError("--trials must be at least 1")
    try:
        report = verify.run_verify(args.seed, args.trials, args.suite)
    except ValueError as exc:
        raise SchemaError(str(exc)) from exc
    for name, suite in report.suites.items():
        print(f"{name}: {suite.failures} failures / {suite.trials} trials", file=sys.stderr)
    sys.stdout.write(verify.report_json_str(report))
    return EXIT_OK if report.total_failures == 0 else EXIT_VERIFY_FAILED


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="desops",
        description="Descriptive set operations: intersections, unions, nerves, "
        "convexity checks, and image experiments.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("ops", help="intersect or union two element sets descriptively")
    p.add_argument("--glossa", required=True, help="glossa JSON file")
    p.add_argument("--a", required=True, help="element set JSON file")
    p.add_argument("--b", required=True, help="element set JSON file")
    p.add_argument("--op", required=True, choices=["intersection", "union"])
    p.add_argument("--config", help="union config JSON file (union only)")
    p.add_argument("--eta", type=float, default=0.0, help="tolerance (intersection only)")
    p.set_defaults(func=cmd_ops)

    p = sub.add_parser("image", help="run a two-region color experiment on an image")
    p.add_argument("input", help="input image file")
    p.add_argument("--region-a", required=True, help="region JSON file")
    p.add_argument("--region-b", required=True, help="region JSON file")
    p.add_argument("--variant", required=True, choices=list(VARIANTS))
    p.add_argument("--eta", type=float, default=0.0)
    p.add_argument("--targets", help="inline JSON list of RGB triples (discriminatory only)")
    p.add_argument("--out", required=True, help="output PNG path")
    p.add_argument("--mode", choices=["mask", "overlay"], default="mask")
    p.set_defaults(func=cmd_image)

    p = sub.add_parser("nerve", help="nerve complex of a collection of element sets")
    p.add_argument("--glossa", required=True)
    p.add_argument("--collection", required=True, help="collection JSON file")
    p.add_argument("--eta", type=float, default=0.0)
    p.set_defaults(func=cmd_nerve)

    p = sub.add_parser(
        "check-convex",
        help="check union-convexity laws on a pair, or representability of a complex",
    )
    p.add_argument("--glossa", required=True)
    p.add_argument("--a")
    p.add_argument("--b")
    p.add_argument("--targets", help="inline JSON list of target vectors")
    p.add_argument("--eta", type=float, default=0.0)
    p.add_argument("--complex", help="complex JSON file (representability mode)")
    p.add_argument("--collection", help="collection JSON file (representability mode)")
    p.add_argument("--config", help="union config JSON file (representability mode)")
    p.add_argument("--union-scope", choices=["pairwise", "total"], default="pairwise")
    p.set_defaults(func=cmd_check_convex)

    p = sub.add_parser("verify", help="run the randomized law checker")
    p.add_argument("--seed", type=int, default=7)
    p.add_argument("--trials", type=int, default=1000)
    p.add_argument("--suite", default="all", help="suite name or 'all'")
    p.set_defaults(func=cmd_verify)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except EmptyRegionError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_EMPTY_REGION
    except ImageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except (SchemaError, GlossaError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
