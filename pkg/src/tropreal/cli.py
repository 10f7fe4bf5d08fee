"""Command-line front end.

Exit codes: 0 for a positive answer, 1 for a decidable "no" (empty set,
unequal series, failed verification), 2 for errors such as syntax
problems or dimension-cap violations.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import List, Optional, Sequence, Tuple

from . import expr as ex
from .equality import equality_set
from .normalform import (
    canonicalize,
    format_ugm,
    to_star_height_one,
    to_transient_form,
)
from .qmax import QMax, QMaxError, format_scalar
from .realization import (
    DEFAULT_DIM_CAP,
    DimensionCapError,
    Realization,
    format_realization,
    minimal_realization,
    parse_realization,
    realization_names,
    realization_set,
    universal_series,
    verify,
)
from .semipoly import render_sps, sps_contains, sps_is_empty, sps_prune, sps_to_json, sps_witness
from .sympoly import ArityMismatch


class CliError(Exception):
    pass


def _load_template(path: str) -> Tuple[ex.RatExpr, List[str]]:
    with open(path, "r", encoding="utf-8") as fh:
        lines = [ln for ln in fh.read().splitlines() if ln.strip()]
    if not lines:
        raise CliError(f"template file {path} is empty")
    names = lines[0].replace(",", " ").split()
    body = " ".join(lines[1:])
    if not body:
        raise CliError(f"template file {path} has no expression")
    return ex.parse(body, names), names


def _load_point(path: str) -> Realization:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_realization(fh.read())


def _parse_concrete(text: str) -> ex.RatExpr:
    return ex.parse(text, ())


def _cmd_normalize(args) -> int:
    e = _parse_concrete(args.expr)
    form = canonicalize(to_transient_form(to_star_height_one(e)))
    print(format_ugm(form))
    return 0


def _cmd_coeffs(args) -> int:
    e = _parse_concrete(args.expr)
    values = ex.coefficients(e, args.count)
    print(" ".join(format_scalar(v) for v in values))
    return 0


def _cmd_equal(args) -> int:
    from .normalform import series_equal

    same = series_equal(_parse_concrete(args.first), _parse_concrete(args.second))
    print("true" if same else "false")
    return 0 if same else 1


def _realization_problem(args) -> Tuple[object, List[str], Optional[ex.RatExpr]]:
    target = _parse_concrete(args.series)
    if getattr(args, "template", None):
        template, names = _load_template(args.template)
        result = realization_set(target, 0, template=template)
        return result, names, template
    n = args.dim
    if n is None:
        raise CliError("either -n or --template is required")
    result = realization_set(target, n, cap=args.cap)
    return result, realization_names(n), None


def _cmd_realize(args) -> int:
    result, names, _ = _realization_problem(args)
    pruned = sps_prune(result, containment=True)
    if args.json:
        print(json.dumps(sps_to_json(pruned, names)))
    else:
        print(render_sps(pruned, names))
    return 0 if pruned.parts else 1


def _cmd_member(args) -> int:
    target = _parse_concrete(args.series)
    r = _load_point(args.point)
    if r.dim != args.dim:
        raise CliError(f"point has dimension {r.dim}, expected {args.dim}")
    result = realization_set(target, args.dim, cap=args.cap)
    inside = sps_contains(result, r.flatten())
    print("true" if inside else "false")
    return 0 if inside else 1


def _cmd_witness(args) -> int:
    result, names, template = _realization_problem(args)
    point = sps_witness(result)
    if point is None:
        print("empty")
        return 1
    if template is not None:
        for name, value in zip(names, point):
            print(f"{name} = {format_scalar(value)}")
    else:
        print(format_realization(Realization.unflatten(args.dim, point)))
    return 0


def _cmd_minimal(args) -> int:
    target = _parse_concrete(args.series)
    found = minimal_realization(target, args.max_dim, cap=args.cap)
    if found is None:
        print("none")
        return 1
    n, r = found
    print(format_realization(r))
    return 0


def _cmd_verify(args) -> int:
    target = _parse_concrete(args.series)
    r = _load_point(args.point)
    ok = verify(r, target, cap=args.cap)
    print("true" if ok else "false")
    return 0 if ok else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tropreal",
        description="Max-plus rational series and their realization sets",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("normalize", help="print the canonical form of a series")
    p.add_argument("-e", "--expr", required=True)
    p.set_defaults(fn=_cmd_normalize)

    p = sub.add_parser("coeffs", help="print coefficients 0..K")
    p.add_argument("-e", "--expr", required=True)
    p.add_argument("-k", "--count", type=int, required=True)
    p.set_defaults(fn=_cmd_coeffs)

    p = sub.add_parser("equal", help="decide exact equality of two series")
    p.add_argument("-a", "--first", required=True)
    p.add_argument("-b", "--second", required=True)
    p.set_defaults(fn=_cmd_equal)

    def add_common(p, dim_required: bool = False):
        p.add_argument("-s", "--series", required=True)
        p.add_argument("-n", "--dim", type=int, required=dim_required)
        p.add_argument("--cap", type=int, default=DEFAULT_DIM_CAP)

    p = sub.add_parser("realize", help="compute the realization set")
    add_common(p)
    p.add_argument("--template", help="structured template file")
    p.add_argument("--json", action="store_true")
    p.set_defaults(fn=_cmd_realize)

    p = sub.add_parser("member", help="test a realization against the set")
    add_common(p, dim_required=True)
    p.add_argument("--point", required=True, help="realization file")
    p.set_defaults(fn=_cmd_member)

    p = sub.add_parser("witness", help="extract one realization if any")
    add_common(p)
    p.add_argument("--template", help="structured template file")
    p.set_defaults(fn=_cmd_witness)

    p = sub.add_parser("minimal", help="search for a minimal realization")
    p.add_argument("-s", "--series", required=True)
    p.add_argument("--max", dest="max_dim", type=int, required=True)
    p.add_argument("--cap", type=int, default=DEFAULT_DIM_CAP)
    p.set_defaults(fn=_cmd_minimal)

    p = sub.add_parser("verify", help="check that a realization recognizes a series")
    p.add_argument("-s", "--series", required=True)
    p.add_argument("--point", required=True, help="realization file")
    p.add_argument("--cap", type=int, default=DEFAULT_DIM_CAP)
    p.set_defaults(fn=_cmd_verify)

    return parser


def run(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except DimensionCapError as exc:
        print(f"error: {exc}; raise --cap to allow larger dimensions", file=sys.stderr)
        return 2
    except (ex.ExprError, QMaxError, ArityMismatch, CliError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run())
