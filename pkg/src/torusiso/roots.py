"""Deterministic scalar solvers for the two equation shapes the profiles generate.

Both shapes are solved by plain bisection on a monotone bracket: convergence
is guaranteed, the cost is irrelevant at this scale, and reruns are
bit-identical. The shapes are

  * strictly increasing expressions, e.g.  a * x^p + x = b  with 0 < p < 1,
  * power-law gaps  c1 * x^p1 - c2 * x^p2 = b  with p1 > p2 > 0 and b >= 0,
    which dip below zero, bottom out at an analytic stationary point and
    then increase through the unique admissible root.

Residuals are checked against a conditioning-aware scale: for a gap
equation the two power terms can dwarf the target (b may even be 0), so the
achievable residual is relative to the term magnitude, not to b alone.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

from .errors import ConsistencyError, ConvergenceError, DomainError
from .profiles import PiecewiseProfile

DEFAULT_TOLERANCE = 1e-12
DEFAULT_MAX_ITER = 200
_MAX_DOUBLINGS = 60


@dataclass(frozen=True)
class RootResult:
    """One solved root with the evidence needed to audit it.

    ``residual`` is lhs(root) - target; ``scale`` is the magnitude the
    residual is measured against (at least max(1, |target|), plus the size
    of any cancelling terms). ``iterations`` counts function evaluations.
    """

    root: float
    residual: float
    iterations: int
    bracket: tuple[float, float]
    tolerance: float = DEFAULT_TOLERANCE
    scale: float = 1.0

    def __post_init__(self):
        lo, hi = self.bracket
        if not lo <= self.root <= hi:
            raise ConsistencyError(
                f"root {self.root} escaped its bracket [{lo}, {hi}]"
            )
        if not abs(self.residual) <= self.tolerance * self.scale:
            raise ConsistencyError(
                f"residual {self.residual} exceeds {self.tolerance} * {self.scale}"
            )


def _validate_request(tolerance: float, max_iter: int) -> None:
    if not 0.0 < tolerance <= 1e-6:
        raise DomainError(f"tolerance must be in (0, 1e-6], got {tolerance!r}")
    if max_iter < 1:
        raise DomainError(f"max_iter must be at least 1, got {max_iter!r}")


def _bisect(
    f: Callable[[float], float],
    target: float,
    lo: float,
    hi: float,
    tolerance: float,
    max_iter: int,
    scale_at: Callable[[float], float],
    iterations: int,
) -> RootResult:
    """Bisect f(x) = target on [lo, hi] given f(lo) <= target <= f(hi).

    Stops once the bracket is relatively tight and the residual meets the
    scale-aware bound; keeps halving down to one ulp when the bound needs
    more than the bracket criterion alone.
    """
    while iterations < max_iter:
        mid = 0.5 * (lo + hi)
        if not lo < mid < hi:
            break  # bracket exhausted at machine resolution
        iterations += 1
        if f(mid) <= target:
            lo = mid
        else:
            hi = mid
        root = 0.5 * (lo + hi)
        if hi - lo <= tolerance * max(abs(root), 1e-300):
            iterations += 1
            residual = f(root) - target
            scale = max(1.0, abs(target), scale_at(root))
            if abs(residual) <= tolerance * scale:
                return RootResult(root, residual, iterations, (lo, hi), tolerance, scale)
    root = 0.5 * (lo + hi)
    residual = f(root) - target
    scale = max(1.0, abs(target), scale_at(root))
    if abs(residual) <= tolerance * scale and lo <= root <= hi:
        return RootResult(root, residual, iterations, (lo, hi), tolerance, scale)
    raise ConvergenceError(
        f"bisection did not converge within {max_iter} evaluations", bracket=(lo, hi)
    )


def solve_increasing(
    f: Callable[[float], float],
    target: float,
    *,
    tolerance: float = DEFAULT_TOLERANCE,
    max_iter: int = DEFAULT_MAX_ITER,
    bracket_hint: tuple[float, float] | None = None,
) -> RootResult:
    """Unique root of a strictly increasing, unbounded expression on (0, inf).

    Brackets by doubling (or halving) from 1, then bisects. Raises
    DomainError when the target sits below the expression's infimum and
    ConvergenceError when bracketing or bisection runs out of budget.
    """
    _validate_request(tolerance, max_iter)
    iterations = 0
    if bracket_hint is not None:
        lo, hi = bracket_hint
        if not 0.0 < lo <= hi:
            raise DomainError(f"bad bracket hint {bracket_hint!r}")
        iterations = 2
        if not (f(lo) <= target <= f(hi)):
            raise DomainError(f"bracket hint {bracket_hint!r} does not straddle the target")
    else:
        x = 1.0
        fx = f(x)
        iterations = 1
        if fx <= target:
            lo = hi = x
            for _ in range(_MAX_DOUBLINGS):
                hi *= 2.0
                iterations += 1
                if f(hi) >= target:
                    break
                lo = hi
            else:
                raise ConvergenceError(
                    "no upper bracket found while doubling", bracket=(lo, hi)
                )
        else:
            lo = hi = x
            for _ in range(_MAX_DOUBLINGS):
                lo *= 0.5
                iterations += 1
                if f(lo) <= target:
                    break
                hi = lo
            else:
                raise DomainError(
                    f"target {target} lies below the expression's infimum"
                )
    return _bisect(f, target, lo, hi, tolerance, max_iter, lambda x: 0.0, iterations)


def power_gap_stationary_point(c1: float, p1: float, c2: float, p2: float) -> float:
    """Analytic minimizer of c1 x^p1 - c2 x^p2 for p1 > p2 > 0."""
    return ((c2 * p2) / (c1 * p1)) ** (1.0 / (p1 - p2))


def solve_power_gap(
    c1: float,
    p1: float,
    c2: float,
    p2: float,
    target: float,
    *,
    tolerance: float = DEFAULT_TOLERANCE,
    max_iter: int = DEFAULT_MAX_ITER,
) -> RootResult:
    """Terminal root of phi(x) = c1 x^p1 - c2 x^p2 = target, p1 > p2 > 0.

    phi decreases from 0 to its analytic minimum and increases without
    bound afterwards, so for target >= 0 there is exactly one root on the
    increasing side; bracketing starts just right of the stationary point.
    """
    _validate_request(tolerance, max_iter)
    for name, c in (("c1", c1), ("c2", c2)):
        if not (c > 0.0) or not math.isfinite(c):
            raise DomainError(f"{name} must be a positive finite real, got {c!r}")
    if not p1 > p2 > 0.0:
        raise DomainError(f"exponents must satisfy p1 > p2 > 0, got {p1}, {p2}")
    if target < 0.0:
        raise DomainError(f"target must be nonnegative, got {target}")

    def phi(x: float) -> float:
        return c1 * x**p1 - c2 * x**p2

    x_min = power_gap_stationary_point(c1, p1, c2, p2)
    lo = x_min
    hi = max(1.0, 2.0 * x_min)
    iterations = 1
    for _ in range(_MAX_DOUBLINGS):
        if phi(hi) >= target:
            break
        lo = hi
        hi *= 2.0
        iterations += 1
    else:
        raise ConvergenceError("no upper bracket found while doubling", bracket=(lo, hi))
    return _bisect(
        phi, target, lo, hi, tolerance, max_iter, lambda x: c2 * x**p2, iterations
    )


def _closed_form_result(root: float, residual: float, scale: float, tolerance: float) -> RootResult:
    return RootResult(root, residual, 0, (root, root), tolerance, max(1.0, scale))


def solve_piecewise_gap(
    upper: PiecewiseProfile,
    lower: PiecewiseProfile,
    target: float,
    *,
    tolerance: float = DEFAULT_TOLERANCE,
    max_iter: int = DEFAULT_MAX_ITER,
) -> RootResult:
    """Terminal root of upper(v) - lower(v) = target over piecewise profiles.

    Solves the gap per overlapping segment pair, keeps the roots that land
    inside their own segment window, and returns the largest one. The gap
    must stay above the target past that root (checked at twice the root);
    a failure there, or a gap that is identically zero, signals that the
    structural assumptions behind the pipeline were violated.
    """
    _validate_request(tolerance, max_iter)
    if target < 0.0:
        raise DomainError(f"target must be nonnegative, got {target}")
    admissible: list[RootResult] = []
    for sa in upper.segments:
        for sb in lower.segments:
            lo = max(sa.v_lo, sb.v_lo)
            hi = min(sa.v_hi, sb.v_hi)
            if hi <= lo:
                continue
            if sa.exponent == sb.exponent:
                if sa.coeff == sb.coeff:
                    if target == 0.0:
                        raise ConsistencyError(
                            "gap is identically zero on part of the domain"
                        )
                    continue
                if target == 0.0 or sa.coeff < sb.coeff or sa.exponent == 0.0:
                    continue
                root = (target / (sa.coeff - sb.coeff)) ** (1.0 / sa.exponent)
                if lo <= root < hi:
                    residual = (sa.value(root) - sb.value(root)) - target
                    admissible.append(
                        _closed_form_result(
                            root, residual, max(abs(target), sb.value(root)), tolerance
                        )
                    )
                continue
            if sa.exponent < sb.exponent:
                # The terminal crossing cannot sit on a pair whose gap is
                # eventually decreasing; those pairs never host it here.
                continue
            result = solve_power_gap(
                sa.coeff,
                sa.exponent,
                sb.coeff,
                sb.exponent,
                target,
                tolerance=tolerance,
                max_iter=max_iter,
            )
            if lo <= result.root < hi:
                admissible.append(result)
    if not admissible:
        raise DomainError("the gap never meets the target inside any segment window")
    best = max(admissible, key=lambda res: res.root)
    probe = 2.0 * best.root
    if upper(probe) - lower(probe) <= target:
        raise ConsistencyError(
            f"gap does not stay above the target past the root {best.root}"
        )
    return best
