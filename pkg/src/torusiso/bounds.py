"""Rigorous lower/upper bound envelopes between the certified thresholds.

Outside [v_star, v_dstar] the candidate envelope is the exact profile, so
the band collapses there. Inside, the profile is only known to be concave
(the products have nonnegative Ricci curvature), which makes two kinds of
lower bound valid:

  * the chord between the two exactly-known endpoint values,
  * any line from an exactly-known anchor point to a point on a certified
    lower-bound curve on the other side of the evaluation volume.

A third candidate, the circle-product profile shifted down by twice its
breakpoint volume, comes out of the mixed-slice case analysis; it is kept
as a separately tagged source and only enters the default band where it
does not exceed the upper envelope.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from .criticals import (
    T2Criticals,
    T3Criticals,
    three_torus_criticals,
    two_torus_criticals,
)
from .errors import CurveParseError, DomainError, GuardError
from .mensuration import TorusProductSpec
from .profiles import beta, circle_profile, envelope_profile
from .roots import DEFAULT_TOLERANCE


@dataclass(frozen=True)
class TabulatedCurve:
    """A certified comparison curve ingested as (volume, area) samples.

    The tool never verifies that the curve really lower-bounds the true
    profile; the file format forces the user to declare it.
    """

    points: tuple[tuple[float, float], ...]
    label: str = ""

    def __post_init__(self):
        pts = tuple((float(v), float(a)) for v, a in self.points)
        if len(pts) < 2:
            raise DomainError("a tabulated curve needs at least 2 points")
        for v, a in pts:
            if not (a > 0.0):
                raise DomainError(f"curve areas must be positive, got {a!r}")
        for (v1, _), (v2, _) in zip(pts, pts[1:]):
            if not v1 < v2:
                raise DomainError("curve volumes must be strictly increasing")
        object.__setattr__(self, "points", pts)


@dataclass(frozen=True)
class BandRow:
    v: float
    upper: float
    lower: float
    upper_regime: str
    lower_source: str


@dataclass(frozen=True)
class BoundBand:
    """Per-volume bound rows; lower <= upper holds on every row."""

    rows: tuple[BandRow, ...]

    def __post_init__(self):
        for row in self.rows:
            if row.lower > row.upper:
                raise DomainError(
                    f"invalid band row at v={row.v}: lower {row.lower} > upper {row.upper}"
                )


def read_curve(path) -> TabulatedCurve:
    """Parse a tabulated-curve CSV; failures carry the offending line number.

    Expected layout: comment lines ``# label: <text>`` and
    ``# certified_lower_bound: yes``, then the header ``v,area``, then the
    strictly-increasing data rows.
    """
    label = ""
    certified = False
    header_seen = False
    points: list[tuple[float, float]] = []
    with open(path, "r", encoding="utf-8") as handle:
        for line_no, raw in enumerate(handle, start=1):
            line = raw.strip()
            if not line:
                continue
            if line.startswith("#"):
                body = line[1:].strip()
                if body.startswith("label:"):
                    label = body.partition(":")[2].strip()
                elif body.startswith("certified_lower_bound:"):
                    flag = body.partition(":")[2].strip().lower()
                    if flag != "yes":
                        raise CurveParseError(
                            f"line {line_no}: certified_lower_bound must be 'yes'",
                            line_no,
                        )
                    certified = True
                continue
            if not header_seen:
                if line.replace(" ", "") != "v,area":
                    raise CurveParseError(
                        f"line {line_no}: expected header 'v,area', got {line!r}", line_no
                    )
                header_seen = True
                continue
            parts = line.split(",")
            if len(parts) != 2:
                raise CurveParseError(
                    f"line {line_no}: expected two comma-separated values", line_no
                )
            try:
                v, a = float(parts[0]), float(parts[1])
            except ValueError:
                raise CurveParseError(
                    f"line {line_no}: could not parse numbers from {line!r}", line_no
                ) from None
            if points and v <= points[-1][0]:
                raise CurveParseError(
                    f"line {line_no}: volumes must be strictly increasing", line_no
                )
            if not a > 0.0:
                raise CurveParseError(f"line {line_no}: area must be positive", line_no)
            points.append((v, a))
    if not certified:
        raise CurveParseError(
            "missing '# certified_lower_bound: yes' declaration", None
        )
    if not header_seen:
        raise CurveParseError("missing 'v,area' header", None)
    try:
        return TabulatedCurve(tuple(points), label)
    except DomainError as exc:
        raise CurveParseError(str(exc), None) from exc


def _thresholds(report: T2Criticals | T3Criticals) -> tuple[float, float]:
    if isinstance(report, T2Criticals):
        return report.v_star, report.v_dstar
    return report.u_star, report.u_dstar


def chord_bound(report: T2Criticals | T3Criticals, spec: TorusProductSpec, v: float) -> float:
    """Chord between the two exactly-known threshold points; valid by concavity."""
    v_lo, v_hi = _thresholds(report)
    if not v_lo <= v <= v_hi:
        raise DomainError(f"chord bound is defined on [{v_lo}, {v_hi}], got v={v}")
    y_lo = envelope_profile(spec, v_lo).area
    y_hi = envelope_profile(spec, v_hi).area
    t = (v - v_lo) / (v_hi - v_lo)
    return y_lo + t * (y_hi - y_lo)


def tangent_bound(anchor: tuple[float, float], curve: TabulatedCurve, v: float) -> float:
    """Best line from an exact anchor through the curve, evaluated at v.

    Admissible curve samples sit on the far side of v from the anchor, so v
    lies between the sample and the anchor; concavity of the true profile
    then makes the line a valid lower bound at v.
    """
    v0, a0 = anchor
    v = float(v)
    if not (v > 0.0):
        raise DomainError(f"volume must be positive, got {v!r}")
    if v == v0:
        return a0
    if v < v0:
        admissible = [(w, c) for w, c in curve.points if w <= v]
    else:
        admissible = [(w, c) for w, c in curve.points if w >= v]
    if not admissible:
        raise DomainError(
            f"no curve samples on the far side of v={v} from the anchor at {v0}"
        )
    best = -math.inf
    for w, c in admissible:
        value = c + (a0 - c) * (v - w) / (v0 - w)
        if value > best:
            best = value
    return best


def cylinder_offset_bound(spec: TorusProductSpec, v: float) -> float:
    """Circle-product profiles shifted down by twice their breakpoint volumes.

    max over both circle factors, clamped at zero. Comes from the
    mixed-slice case analysis, so the band reports it as its own source and
    drops it wherever it would exceed the upper envelope.
    """
    if spec.circle_count != 2:
        raise GuardError(
            f"the offset bound needs exactly 2 circle factors, got {spec.circle_count}"
        )
    n = spec.euclid_dim
    best = 0.0
    for r in spec.radii:
        value = circle_profile(n + 1, r, v).area - 2.0 * beta(n, r)
        if value > best:
            best = value
    return best


def band(
    spec: TorusProductSpec,
    grid: Sequence[float],
    curves: Sequence[TabulatedCurve] | TabulatedCurve | None = None,
    *,
    report: T2Criticals | T3Criticals | None = None,
    tolerance: float = DEFAULT_TOLERANCE,
) -> BoundBand:
    """Bound band over a sorted positive volume grid.

    Upper is the candidate envelope (exact outside the open threshold
    interval). Lower is the best of chord, tangent-to-curve and offset
    sources inside the interval, and equals the upper value outside it.
    """
    if isinstance(curves, TabulatedCurve):
        curves = (curves,)
    curves = tuple(curves or ())
    grid = [float(v) for v in grid]
    for v in grid:
        if not (v > 0.0) or not math.isfinite(v):
            raise DomainError(f"grid volumes must be positive, got {v!r}")
    if any(b < a for a, b in zip(grid, grid[1:])):
        raise DomainError("grid volumes must be sorted ascending")
    if report is None:
        if spec.circle_count == 2:
            report = two_torus_criticals(spec, tolerance=tolerance)
        elif spec.circle_count == 3:
            report = three_torus_criticals(spec, tolerance=tolerance)
        else:
            raise GuardError(
                f"bound bands need 2 or 3 circle factors, got {spec.circle_count}"
            )
    v_lo, v_hi = _thresholds(report)
    lo_anchor = (v_lo, envelope_profile(spec, v_lo).area)
    hi_anchor = (v_hi, envelope_profile(spec, v_hi).area)

    rows = []
    for v in grid:
        top = envelope_profile(spec, v)
        if v <= v_lo or v >= v_hi:
            rows.append(BandRow(v, top.area, top.area, top.regime, "exact"))
            continue
        lower = chord_bound(report, spec, v)
        source = "chord"
        for curve in curves:
            for anchor, tag in ((lo_anchor, "tangent-left"), (hi_anchor, "tangent-right")):
                try:
                    value = tangent_bound(anchor, curve, v)
                except DomainError:
                    continue
                if value > top.area:
                    if value > top.area * (1.0 + 1e-9):
                        # A genuine lower-bound curve can never push the band
                        # above the candidate envelope.
                        label = curve.label or "unlabeled"
                        raise DomainError(
                            f"curve {label!r} yields lower bound {value} above "
                            f"the envelope {top.area} at v={v}; it cannot be a "
                            "valid lower bound for this manifold"
                        )
                    value = top.area  # envelope touch, within rounding
                if value > lower:
                    lower, source = value, tag
        if spec.circle_count == 2:
            offset = cylinder_offset_bound(spec, v)
            if lower < offset <= top.area:
                lower, source = offset, "cylinder-offset"
        rows.append(BandRow(v, top.area, lower, top.regime, source))
    return BoundBand(tuple(rows))
