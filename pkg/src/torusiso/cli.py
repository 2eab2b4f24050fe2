"""Command line surface: manifold spec JSON in, CSV/JSON tables out.

Exit codes are part of the interface: 0 success, 1 parse failure (spec
file, curve file or grid syntax), 2 guard/domain violation, 3 solver or
verification failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys

import numpy as np

from . import bounds as bounds_mod
from . import oracle
from .criticals import CriticalReport, full_report
from .errors import (
    ConsistencyError,
    ConvergenceError,
    CurveParseError,
    DomainError,
    GuardError,
    SpecFileError,
)
from .mensuration import TorusProductSpec
from .profiles import envelope_profile

EXIT_OK = 0
EXIT_PARSE = 1
EXIT_GUARD = 2
EXIT_SOLVER = 3

# Solver tolerances tighter than this are meaningless in double precision
# and looser ones violate the root-solver contract, so file values are capped.
_MAX_SOLVER_TOLERANCE = 1e-6
_DEFAULT_TOLERANCE = 1e-12

# Dimension range each circle count supports across the CLI commands.
_PIPELINE_RANGES = {1: (2, 7), 2: (2, 5), 3: (2, 4)}


def _fmt(x: float) -> str:
    return format(float(x), ".17g")


def load_spec_file(path: str) -> tuple[TorusProductSpec, float]:
    """Read a manifold spec JSON file; returns the spec and the solver tolerance."""
    try:
        with open(path, "r", encoding="utf-8") as handle:
            data = json.load(handle)
    except OSError as exc:
        raise SpecFileError(f"cannot read spec file {path!r}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise SpecFileError(f"invalid JSON in {path!r}: {exc}") from exc
    if not isinstance(data, dict):
        raise SpecFileError("spec file must contain a JSON object")
    radii = data.get("radii")
    if not isinstance(radii, list) or not radii:
        raise SpecFileError("spec field 'radii' must be a non-empty list of numbers")
    for r in radii:
        if isinstance(r, bool) or not isinstance(r, (int, float)):
            raise SpecFileError(f"spec field 'radii' must contain numbers, got {r!r}")
    euclid_dim = data.get("euclid_dim")
    if isinstance(euclid_dim, bool) or not isinstance(euclid_dim, int):
        raise SpecFileError("spec field 'euclid_dim' must be an integer")
    tolerance = data.get("tolerance", _DEFAULT_TOLERANCE)
    if isinstance(tolerance, bool) or not isinstance(tolerance, (int, float)):
        raise SpecFileError("spec field 'tolerance' must be a number")
    if not 0.0 < float(tolerance) < 1.0:
        raise SpecFileError(f"spec field 'tolerance' must be in (0, 1), got {tolerance}")
    ranges = _PIPELINE_RANGES.get(len(radii))
    if ranges is not None:
        lo, hi = ranges
        if not lo <= euclid_dim <= hi:
            raise GuardError(
                f"a {len(radii)}-circle spec requires {lo} <= euclid_dim <= {hi}, "
                f"got {euclid_dim}"
            )
    spec = TorusProductSpec(tuple(float(r) for r in radii), euclid_dim)
    return spec, min(float(tolerance), _MAX_SOLVER_TOLERANCE)


def parse_grid(text: str) -> list[float]:
    """Parse 'lo:hi:count[,log|lin]' into a sorted volume grid."""
    body, _, mode = text.partition(",")
    mode = mode or "log"
    if mode not in ("log", "lin"):
        raise SpecFileError(f"grid mode must be 'log' or 'lin', got {mode!r}")
    parts = body.split(":")
    if len(parts) != 3:
        raise SpecFileError(f"grid must look like lo:hi:count, got {body!r}")
    try:
        lo, hi = float(parts[0]), float(parts[1])
        count = int(parts[2])
    except ValueError:
        raise SpecFileError(f"could not parse grid numbers from {body!r}") from None
    if count < 1:
        raise SpecFileError(f"grid count must be at least 1, got {count}")
    if not (0.0 < lo <= hi) or not math.isfinite(hi):
        raise SpecFileError(f"grid range must satisfy 0 < lo <= hi, got ({lo}, {hi})")
    if count == 1:
        return [lo]
    points = np.geomspace(lo, hi, count) if mode == "log" else np.linspace(lo, hi, count)
    return [float(v) for v in points]


def cmd_profile(args) -> int:
    spec, _ = load_spec_file(args.spec)
    grid = [args.v] if args.v is not None else parse_grid(args.grid)
    out = sys.stdout
    out.write("v,area,regime\n")
    for v in grid:
        value = envelope_profile(spec, v)
        out.write(f"{_fmt(v)},{_fmt(value.area)},{value.regime}\n")
    return EXIT_OK


def _report_payload(report: CriticalReport) -> dict:
    payload = {
        "radii": list(report.spec.radii),
        "euclid_dim": report.spec.euclid_dim,
        "kind": report.kind,
        "constants": {
            name: {
                "value": record.value,
                "residual": record.residual,
                "equation": record.equation,
                "regime": record.regime,
            }
            for name, record in report.constants.items()
        },
    }
    if report.sub_reports:
        payload["sub_reports"] = {
            key: _report_payload(sub) for key, sub in report.sub_reports.items()
        }
    return payload


def _report_csv(report: CriticalReport, prefix: str = "") -> list[list[str]]:
    rows = []
    for name, record in report.constants.items():
        rows.append(
            [
                prefix + name,
                _fmt(record.value),
                _fmt(record.residual),
                record.equation,
                record.regime or "",
            ]
        )
    for key, sub in report.sub_reports.items():
        rows.extend(_report_csv(sub, prefix=f"{prefix}{key}."))
    return rows


def cmd_critical(args) -> int:
    spec, tolerance = load_spec_file(args.spec)
    report = full_report(spec, tolerance=tolerance)
    if args.format == "json":
        sys.stdout.write(json.dumps(_report_payload(report), indent=2))
        sys.stdout.write("\n")
    else:
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(["name", "value", "residual", "equation", "regime"])
        writer.writerows(_report_csv(report))
        sys.stdout.write(buffer.getvalue())
    return EXIT_OK


def cmd_bounds(args) -> int:
    spec, tolerance = load_spec_file(args.spec)
    grid = parse_grid(args.grid)
    curves = [bounds_mod.read_curve(path) for path in args.curve]
    result = bounds_mod.band(spec, grid, curves, tolerance=tolerance)
    out = sys.stdout
    out.write("v,upper,lower,upper_regime,lower_source\n")
    for row in result.rows:
        out.write(
            f"{_fmt(row.v)},{_fmt(row.upper)},{_fmt(row.lower)},"
            f"{row.upper_regime},{row.lower_source}\n"
        )
    return EXIT_OK


def cmd_verify(args) -> int:
    spec, _ = load_spec_file(args.spec)
    checks = oracle.verify_spec(spec)
    first_failure = None
    for check in checks:
        status = "PASS" if check.ok else "FAIL"
        sys.stdout.write(f"{status} {check.name}\n")
        if not check.ok and first_failure is None:
            first_failure = check
    if first_failure is not None:
        sys.stderr.write(
            f"verification failed at {first_failure.name}: {first_failure.detail}\n"
        )
        return EXIT_SOLVER
    sys.stdout.write(f"all {len(checks)} checks passed\n")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="torusiso",
        description=(
            "Isoperimetric profiles, critical volumes and bound bands for "
            "products of flat circle factors with Euclidean space."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("profile", help="evaluate the candidate envelope profile")
    p.add_argument("spec", help="manifold spec JSON file")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--v", type=float, help="single volume to evaluate")
    group.add_argument("--grid", help="volume grid lo:hi:count[,log|lin]")
    p.set_defaults(func=cmd_profile)

    c = sub.add_parser("critical", help="emit the critical-volume report")
    c.add_argument("spec", help="manifold spec JSON file")
    c.add_argument("--format", choices=("json", "csv"), default="json")
    c.set_defaults(func=cmd_critical)

    b = sub.add_parser("bounds", help="emit the lower/upper bound band")
    b.add_argument("spec", help="manifold spec JSON file")
    b.add_argument("--grid", required=True, help="volume grid lo:hi:count[,log|lin]")
    b.add_argument(
        "--curve",
        action="append",
        default=[],
        help="certified lower-bound curve CSV (repeatable)",
    )
    b.set_defaults(func=cmd_bounds)

    v = sub.add_parser("verify", help="run the oracle suite against the spec")
    v.add_argument("spec", help="manifold spec JSON file")
    v.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (SpecFileError, CurveParseError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_PARSE
    except (GuardError, DomainError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_GUARD
    except (ConvergenceError, ConsistencyError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_SOLVER


if __name__ == "__main__":
    sys.exit(main())
