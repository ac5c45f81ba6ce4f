"""Command-line front end: analyze documents, emit reports and DOT diagrams.

Exit codes: 0 success, 2 malformed input, 3 realization not reduced and
--reduce not given, 4 trajectory malformed or not in the behavior.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from .abelian import GroupElement
from .documents import DocumentError, build_analysis_report, load_document
from .errors import MalformedElementError, NotATrajectoryError
from .factorize import controller_canonical, decompose, is_homomorphic
from .fragments import hasse_dot
from .granules import build_granule_table
from .render import canonical_dot, trellis_dot
from .trellis import Realization, compute_behavior, is_reduced, reduce_realization

EXIT_OK = 0
EXIT_MALFORMED = 2
EXIT_NOT_REDUCED = 3
EXIT_NOT_TRAJECTORY = 4


def _emit(text: str, dot_out: str | None) -> None:
    if dot_out:
        with open(dot_out, "w", encoding="utf-8") as handle:
            handle.write(text)
    else:
        sys.stdout.write(text)


def _load_reduced(path: str, apply_reduce: bool):
    """Load a document and return (realization, bundle, reduced_applied); may exit."""
    try:
        doc = load_document(path)
        r = doc.to_realization()
    except DocumentError as exc:
        print(f"error: {exc}", file=sys.stderr)
        raise SystemExit(EXIT_MALFORMED)
    bundle = compute_behavior(r)
    if is_reduced(r, bundle):
        return r, bundle, False
    if not apply_reduce:
        print(
            "error: realization is not reduced; rerun with --reduce",
            file=sys.stderr,
        )
        raise SystemExit(EXIT_NOT_REDUCED)
    r = reduce_realization(r, bundle)
    return r, compute_behavior(r), True


def cmd_analyze(args: argparse.Namespace) -> int:
    r, bundle, reduced_applied = _load_reduced(args.path, args.reduce)
    table = build_granule_table(bundle)
    report = build_analysis_report(r, bundle, table, reduced_applied)
    print(json.dumps(report, indent=2))
    return EXIT_OK


def cmd_check(args: argparse.Namespace) -> int:
    try:
        doc = load_document(args.path)
        r = doc.to_realization()
    except DocumentError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_MALFORMED
    bundle = compute_behavior(r)
    summary = {
        "valid": True,
        "length": r.n,
        "reduced": is_reduced(r, bundle),
        "behavior_order": bundle.behavior.order,
        "universe_order": bundle.universe_order,
    }
    print(json.dumps(summary, indent=2))
    return EXIT_OK


def cmd_hasse(args: argparse.Namespace) -> int:
    _emit(hasse_dot(args.n), args.dot_out)
    return EXIT_OK


def cmd_trellis(args: argparse.Namespace) -> int:
    r, _, _ = _load_reduced(args.path, args.reduce)
    _emit(trellis_dot(r), args.dot_out)
    return EXIT_OK


def cmd_canonical(args: argparse.Namespace) -> int:
    r, bundle, _ = _load_reduced(args.path, args.reduce)
    table = build_granule_table(bundle)
    ct = controller_canonical(table)
    if args.json:
        summary = {
            "atoms": [
                {
                    "fragment": rec.fragment.label,
                    "level": rec.fragment.level,
                    "order": rec.granule.order,
                    "invariant_factors": rec.granule.invariant_factors(),
                }
                for rec in ct.atoms
            ],
            "state_sizes": list(ct.state_sizes),
            "trajectories_match": ct.trajectory_set == bundle.behavior.member_set,
            "is_homomorphic": is_homomorphic(ct),
        }
        print(json.dumps(summary, indent=2))
    else:
        _emit(canonical_dot(ct), args.dot_out)
    return EXIT_OK


def _parse_trajectory(raw: str, r: Realization) -> GroupElement:
    try:
        residues = [int(part) for part in raw.replace(",", " ").split()]
    except ValueError as exc:
        raise NotATrajectoryError(f"cannot parse trajectory {raw!r}") from exc
    try:
        return r.trajectory_group.element(residues)
    except MalformedElementError as exc:
        raise NotATrajectoryError(str(exc)) from exc


def cmd_decompose(args: argparse.Namespace) -> int:
    r, bundle, _ = _load_reduced(args.path, args.reduce)
    table = build_granule_table(bundle)
    try:
        t = _parse_trajectory(args.trajectory, r)
        result = decompose(table, t)
    except NotATrajectoryError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NOT_TRAJECTORY
    payload = {
        "trajectory": list(t.residues),
        "parts": [
            {"fragment": f.label, "level": f.level, "value": list(v.residues)}
            for f, v in result.parts
        ],
        "nonzero_parts": len(result.nonzero_parts),
        "reconstruction_ok": result.total() == t,
    }
    print(json.dumps(payload, indent=2))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tbtrellis",
        description="Exact analysis of tail-biting trellis realizations.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    analyze = sub.add_parser("analyze", help="Full analysis report as JSON.")
    analyze.add_argument("path", help="Realization document (JSON).")
    analyze.add_argument("--reduce", action="store_true", help="Reduce before analyzing.")
    analyze.add_argument("--json", action="store_true", help="JSON output (the default).")
    analyze.set_defaults(func=cmd_analyze)

    check = sub.add_parser("check", help="Validate a document and print a summary.")
    check.add_argument("path")
    check.set_defaults(func=cmd_check)

    hasse = sub.add_parser("hasse", help="Hasse diagram of the fragment poset as DOT.")
    hasse.add_argument("n", type=int)
    hasse.add_argument("--dot-out", default=None)
    hasse.set_defaults(func=cmd_hasse)

    trellis = sub.add_parser("trellis", help="Trellis diagram as DOT.")
    trellis.add_argument("path")
    trellis.add_argument("--reduce", action="store_true")
    trellis.add_argument("--dot-out", default=None)
    trellis.set_defaults(func=cmd_trellis)

    canonical = sub.add_parser("canonical", help="Controller canonical realization as DOT.")
    canonical.add_argument("path")
    canonical.add_argument("--reduce", action="store_true")
    canonical.add_argument("--dot-out", default=None)
    canonical.add_argument("--json", action="store_true", help="Summary JSON instead of DOT.")
    canonical.set_defaults(func=cmd_canonical)

    decompose_p = sub.add_parser("decompose", help="Split a trajectory into granule parts.")
    decompose_p.add_argument("path")
    decompose_p.add_argument(
        "trajectory", help="Residues in trajectory layout, comma or space separated."
    )
    decompose_p.add_argument("--reduce", action="store_true")
    decompose_p.set_defaults(func=cmd_decompose)

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    raise SystemExit(main())
