"""Critical-volume threshold pipelines for two- and three-circle products.

For a two-circle product T x R^n (2 <= n <= 5) the report certifies two
thresholds: below ``v_star`` the true isoperimetric profile equals the
smallest-circle product profile (balls, then round cylinders); above
``v_dstar`` it equals the slab profile. The constants in between:

  theta_star, sigma_star  volumes balancing a half-circumference times the
                          Euclidean ball area against the breakpoint volume
                          of the other circle factor,
  K_star                  the area floor forced on any region whose slice
                          volumes straddle both breakpoints; any such mixed
                          region has boundary area at least K_star,
  c_n                     volume where the circle-product profile reaches
                          K_star,
  v_s                     largest volume at which the circle-product
                          minimizers still embed in the torus product,
  v0_1, v0_2              crossing volumes of each circle-product profile
                          with the slab profile,
  a_n, b_n                volumes where each circle-product profile exceeds
                          the slab profile by twice the matching breakpoint
                          volume.

Then v_star = min(v_s, c_n, v0_1) and v_dstar = max(a_n, b_n).

The three-circle pipeline replays the same construction one dimension up,
bootstrapping from the two-circle reports at n and n+1; its thresholds are
``u_star`` and ``u_dstar``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .errors import ConsistencyError, GuardError
from .mensuration import TWO_PI, TorusProductSpec, unit_ball_volume
from .profiles import (
    SCP_DIM_RANGE,
    THREE_TORUS_DIM_RANGE,
    PiecewiseProfile,
    beta,
    circle_piecewise,
    euclidean_profile,
    slab2_piecewise,
    slab3_piecewise,
)
from .roots import (
    DEFAULT_TOLERANCE,
    RootResult,
    solve_increasing,
    solve_piecewise_gap,
    solve_power_gap,
)

_IDENTITY_RTOL = 1e-9


@dataclass(frozen=True)
class SmallVolumeThresholds:
    """Small-volume side of a two-circle report."""

    theta_star: float
    sigma_star: float
    K_star: float
    c_n: float
    v_s: float
    v0_1: float
    v_star: float


@dataclass(frozen=True)
class LargeVolumeThresholds:
    """Large-volume side of a two-circle report."""

    a_n: float
    b_n: float
    v_dstar: float


@dataclass(frozen=True)
class T2Criticals:
    """Every named constant of a two-circle threshold report."""

    theta_star: float
    sigma_star: float
    K_star: float
    c_n: float
    v_s: float
    v0_1: float
    v0_2: float
    v_star: float
    a_n: float
    b_n: float
    v_dstar: float


@dataclass(frozen=True)
class T3Criticals:
    """Every named constant of a three-circle threshold report."""

    w_star: float
    eta_star: float
    C_star: float
    u0: float
    u_star: float
    u_dstar: float


@dataclass(frozen=True)
class ConstantRecord:
    """Provenance of one reported constant: defining relation and residual."""

    value: float
    equation: str
    residual: float
    regime: str | None = None


@dataclass(frozen=True)
class CriticalReport:
    """A criticals bundle plus the provenance of every constant."""

    spec: TorusProductSpec
    kind: str  # "two-torus" | "three-torus"
    criticals: T2Criticals | T3Criticals
    constants: dict[str, ConstantRecord]
    sub_reports: dict[str, "CriticalReport"] = field(default_factory=dict)


def _require_two_torus(spec: TorusProductSpec) -> None:
    if spec.circle_count != 2:
        raise GuardError(
            f"the two-circle pipeline needs exactly 2 circle factors, got {spec.circle_count}"
        )
    lo, hi = SCP_DIM_RANGE
    if not lo <= spec.euclid_dim <= hi:
        raise GuardError(
            f"the two-circle pipeline requires {lo} <= euclid_dim <= {hi}, "
            f"got {spec.euclid_dim}"
        )


def _require_three_torus(spec: TorusProductSpec) -> None:
    if spec.circle_count != 3:
        raise GuardError(
            f"the three-circle pipeline needs exactly 3 circle factors, got {spec.circle_count}"
        )
    lo, hi = THREE_TORUS_DIM_RANGE
    if not lo <= spec.euclid_dim <= hi:
        raise GuardError(
            f"the three-circle pipeline requires {lo} <= euclid_dim <= {hi}, "
            f"got {spec.euclid_dim}"
        )


def _euclid_area(m: int, v: float) -> float:
    return euclidean_profile(m, v).area


def _balance_equation(radius: float, m: int):
    """x -> pi * radius * (area of the m-ball of volume x) + x."""

    def f(x: float) -> float:
        return math.pi * radius * _euclid_area(m, x) + x

    return f


@dataclass(frozen=True)
class _T2Details:
    """Internal: values plus solver evidence for one two-circle pipeline run."""

    criticals: T2Criticals
    beta_1: float
    beta_2: float
    theta: RootResult
    sigma: RootResult
    k_gap: float
    c_residual: float
    c_regime: str
    v0_1: RootResult
    v0_2: RootResult
    a_n: RootResult
    b_n: RootResult
    circle_1: PiecewiseProfile
    circle_2: PiecewiseProfile
    slab: PiecewiseProfile


def _t2_pipeline(spec: TorusProductSpec, tolerance: float) -> _T2Details:
    _require_two_torus(spec)
    r1, r2 = spec.radii
    n = spec.euclid_dim
    beta_1 = beta(n, r1)
    beta_2 = beta(n, r2)

    # The shorter circumference is balanced against the larger factor's
    # breakpoint volume, and vice versa; for equal radii both coincide.
    theta = solve_increasing(_balance_equation(r1, n + 1), beta_2, tolerance=tolerance)
    sigma = solve_increasing(_balance_equation(r2, n + 1), beta_1, tolerance=tolerance)

    k_from_theta = TWO_PI * r1 * _euclid_area(n + 1, theta.root)
    k_from_sigma = TWO_PI * r2 * _euclid_area(n + 1, sigma.root)
    k_star = max(k_from_theta, k_from_sigma)
    k_alt = max(2.0 * (beta_2 - theta.root), 2.0 * (beta_1 - sigma.root))
    k_gap = abs(k_star - k_alt)
    if k_gap > _IDENTITY_RTOL * k_star:
        raise ConsistencyError(
            f"the two K_star computations disagree: {k_star} vs {k_alt}"
        )

    v_s = min(
        TWO_PI * r1 * unit_ball_volume(n + 1) * (math.pi * r2) ** (n + 1),
        unit_ball_volume(n + 2) * (math.pi * r1) ** (n + 2),
    )

    circle_1 = circle_piecewise(n + 1, r1)
    circle_2 = circle_piecewise(n + 1, r2)
    slab = slab2_piecewise(spec)

    c_n = circle_1.solve_value(k_star)
    c_residual = circle_1(c_n) - k_star
    c_regime = circle_1.segment_at(c_n).regime

    v0_1 = solve_piecewise_gap(circle_1, slab, 0.0, tolerance=tolerance)
    v0_2 = solve_piecewise_gap(circle_2, slab, 0.0, tolerance=tolerance)
    a_n = solve_piecewise_gap(circle_1, slab, 2.0 * beta_1, tolerance=tolerance)
    b_n = solve_piecewise_gap(circle_2, slab, 2.0 * beta_2, tolerance=tolerance)

    v_star = min(v_s, c_n, v0_1.root)
    v_dstar = max(a_n.root, b_n.root)
    criticals = T2Criticals(
        theta_star=theta.root,
        sigma_star=sigma.root,
        K_star=k_star,
        c_n=c_n,
        v_s=v_s,
        v0_1=v0_1.root,
        v0_2=v0_2.root,
        v_star=v_star,
        a_n=a_n.root,
        b_n=b_n.root,
        v_dstar=v_dstar,
    )
    _check_t2_invariants(criticals, beta_1, beta_2)
    return _T2Details(
        criticals,
        beta_1,
        beta_2,
        theta,
        sigma,
        k_gap,
        c_residual,
        c_regime,
        v0_1,
        v0_2,
        a_n,
        b_n,
        circle_1,
        circle_2,
        slab,
    )


def _check_t2_invariants(c: T2Criticals, beta_1: float, beta_2: float) -> None:
    checks = [
        (c.K_star > 0.0, "K_star must be positive"),
        (0.0 < c.theta_star < beta_2, "theta_star must lie inside (0, beta(n, r2))"),
        (0.0 < c.sigma_star < beta_1, "sigma_star must lie inside (0, beta(n, r1))"),
        (c.v_star <= c.v0_1 < c.v_dstar, "expected v_star <= v0_1 < v_dstar"),
        (c.v0_1 < c.a_n, "expected v0_1 < a_n"),
        (c.v0_2 < c.b_n, "expected v0_2 < b_n"),
        (c.v_star < c.v_dstar, "expected v_star < v_dstar"),
    ]
    for ok, message in checks:
        if not ok:
            raise ConsistencyError(message)


def small_volume_thresholds(
    spec: TorusProductSpec, *, tolerance: float = DEFAULT_TOLERANCE
) -> SmallVolumeThresholds:
    """Small-volume constants of the two-circle pipeline."""
    d = _t2_pipeline(spec, tolerance)
    c = d.criticals
    return SmallVolumeThresholds(
        c.theta_star, c.sigma_star, c.K_star, c.c_n, c.v_s, c.v0_1, c.v_star
    )


def large_volume_thresholds(
    spec: TorusProductSpec, *, tolerance: float = DEFAULT_TOLERANCE
) -> LargeVolumeThresholds:
    """Large-volume constants of the two-circle pipeline."""
    d = _t2_pipeline(spec, tolerance)
    c = d.criticals
    return LargeVolumeThresholds(c.a_n, c.b_n, c.v_dstar)


def two_torus_criticals(
    spec: TorusProductSpec, *, tolerance: float = DEFAULT_TOLERANCE
) -> T2Criticals:
    """Full two-circle report for T^2 x R^n, 2 <= n <= 5."""
    return _t2_pipeline(spec, tolerance).criticals


def sphere_cylinder_crossing(
    spec: TorusProductSpec, *, tolerance: float = DEFAULT_TOLERANCE
) -> float:
    """Volume where spheres hand over to round cylinders in T^2 x R^1.

    The crossing of the Euclidean 3-ball area law with the area law of the
    smallest-circle-cross-disk family; for the square torus of area 4 pi
    this is 32 pi^(5/2) / 81.
    """
    if spec.circle_count != 2 or spec.euclid_dim != 1:
        raise GuardError(
            "the sphere/cylinder crossing is defined for 2 circle factors "
            f"with euclid_dim = 1, got k={spec.circle_count}, n={spec.euclid_dim}"
        )
    r1 = spec.radii[0]
    sphere_coeff = 3.0 * unit_ball_volume(3) ** (1.0 / 3.0)
    cyl_coeff = 2.0 * (TWO_PI * r1 * unit_ball_volume(2)) ** 0.5
    result = solve_power_gap(sphere_coeff, 2.0 / 3.0, cyl_coeff, 0.5, 0.0, tolerance=tolerance)
    return result.root


@dataclass(frozen=True)
class _T3Details:
    criticals: T3Criticals
    eta: RootResult
    c_gap: float
    u0_residual: float
    u0_regime: str
    slab_gap: RootResult
    realizable: float
    sub_n: _T2Details
    sub_up: _T2Details


def _t3_pipeline(spec: TorusProductSpec, tolerance: float) -> _T3Details:
    _require_three_torus(spec)
    r1, r2, r3 = spec.radii
    n = spec.euclid_dim
    sub_n = _t2_pipeline(TorusProductSpec((r1, r2), n), tolerance)
    sub_up = _t2_pipeline(TorusProductSpec((r1, r2), n + 1), tolerance)

    w_star = min(sub_n.criticals.v_star, beta(n + 1, r1))
    eta = solve_increasing(_balance_equation(r3, n + 2), w_star, tolerance=tolerance)
    c_star = 2.0 * (w_star - eta.root)
    c_alt = TWO_PI * r3 * _euclid_area(n + 2, eta.root)
    c_gap = abs(c_star - c_alt)
    if c_gap > _IDENTITY_RTOL * c_star:
        raise ConsistencyError(f"the two C_star computations disagree: {c_star} vs {c_alt}")

    circle_1 = circle_piecewise(n + 2, r1)
    u0 = circle_1.solve_value(c_star)
    u0_residual = circle_1(u0) - c_star
    u0_regime = circle_1.segment_at(u0).regime

    # Largest volume at which the one-circle minimizers embed: the ball
    # factor must fit within half the second circumference, radius pi * r2.
    realizable = TWO_PI * r1 * unit_ball_volume(n + 2) * (math.pi * r2) ** (n + 2)
    u_star = min(u0, sub_up.criticals.v_star, realizable)

    slab_gap = solve_piecewise_gap(
        slab2_piecewise(TorusProductSpec((r1, r2), n + 1)),
        slab3_piecewise(spec),
        2.0 * sub_n.criticals.v_dstar,
        tolerance=tolerance,
    )
    u_dstar = max(sub_up.criticals.v_dstar, slab_gap.root)

    criticals = T3Criticals(w_star, eta.root, c_star, u0, u_star, u_dstar)
    checks = [
        (criticals.w_star <= sub_n.criticals.v_star, "expected w_star <= v_star"),
        (criticals.C_star > 0.0, "C_star must be positive"),
        (criticals.u_star <= criticals.u0, "expected u_star <= u0"),
        (criticals.u_star <= criticals.u_dstar, "expected u_star <= u_dstar"),
    ]
    for ok, message in checks:
        if not ok:
            raise ConsistencyError(message)
    return _T3Details(
        criticals, eta, c_gap, u0_residual, u0_regime, slab_gap, realizable, sub_n, sub_up
    )


def three_torus_criticals(
    spec: TorusProductSpec, *, tolerance: float = DEFAULT_TOLERANCE
) -> T3Criticals:
    """Full three-circle report for T^3 x R^n, 2 <= n <= 4."""
    return _t3_pipeline(spec, tolerance).criticals


def _t2_records(d: _T2Details) -> dict[str, ConstantRecord]:
    c = d.criticals
    at_dstar = d.circle_1.segment_at(c.v_dstar).regime
    return {
        "theta_star": ConstantRecord(
            c.theta_star,
            "pi*r1 * ball_area(n+1, x) + x = beta(n, r2)",
            d.theta.residual,
        ),
        "sigma_star": ConstantRecord(
            c.sigma_star,
            "pi*r2 * ball_area(n+1, x) + x = beta(n, r1)",
            d.sigma.residual,
        ),
        "K_star": ConstantRecord(
            c.K_star,
            "max(2*pi*r1 * ball_area(n+1, theta_star), 2*pi*r2 * ball_area(n+1, sigma_star))",
            d.k_gap,
        ),
        "c_n": ConstantRecord(
            c.c_n, "circle_area(n+1, r1, x) = K_star", d.c_residual, d.c_regime
        ),
        "v_s": ConstantRecord(
            c.v_s,
            "min(volume(circle r1 x ball(n+1, pi*r2)), volume(ball(n+2, pi*r1)))",
            0.0,
        ),
        "v0_1": ConstantRecord(
            c.v0_1,
            "circle_area(n+1, r1, x) = slab_area(x)",
            d.v0_1.residual,
            d.circle_1.segment_at(c.v0_1).regime,
        ),
        "v0_2": ConstantRecord(
            c.v0_2,
            "circle_area(n+1, r2, x) = slab_area(x)",
            d.v0_2.residual,
            d.circle_2.segment_at(c.v0_2).regime,
        ),
        "v_star": ConstantRecord(c.v_star, "min(v_s, c_n, v0_1)", 0.0),
        "a_n": ConstantRecord(
            c.a_n,
            "circle_area(n+1, r1, x) - slab_area(x) = 2*beta(n, r1)",
            d.a_n.residual,
            d.circle_1.segment_at(c.a_n).regime,
        ),
        "b_n": ConstantRecord(
            c.b_n,
            "circle_area(n+1, r2, x) - slab_area(x) = 2*beta(n, r2)",
            d.b_n.residual,
            d.circle_2.segment_at(c.b_n).regime,
        ),
        "v_dstar": ConstantRecord(c.v_dstar, "max(a_n, b_n)", 0.0, at_dstar),
    }


def full_report(
    spec: TorusProductSpec, *, tolerance: float = DEFAULT_TOLERANCE
) -> CriticalReport:
    """Aggregate report for a two- or three-circle spec, with provenance.

    Each constant carries its defining relation, the solver or identity
    residual at the reported value, and the active profile branch where one
    is meaningful.
    """
    if spec.circle_count == 2:
        d = _t2_pipeline(spec, tolerance)
        return CriticalReport(spec, "two-torus", d.criticals, _t2_records(d))
    if spec.circle_count == 3:
        d = _t3_pipeline(spec, tolerance)
        c = d.criticals
        records = {
            "w_star": ConstantRecord(
                c.w_star, "min(v_star(r1, r2; n), beta(n+1, r1))", 0.0
            ),
            "eta_star": ConstantRecord(
                c.eta_star,
                "pi*r3 * ball_area(n+2, x) + x = w_star",
                d.eta.residual,
            ),
            "C_star": ConstantRecord(c.C_star, "2*(w_star - eta_star)", d.c_gap),
            "u0": ConstantRecord(
                c.u0, "circle_area(n+2, r1, x) = C_star", d.u0_residual, d.u0_regime
            ),
            "u_star": ConstantRecord(
                c.u_star,
                "min(u0, v_star(r1, r2; n+1), 2*pi*r1 * volume(ball(n+2, pi*r2)))",
                0.0,
            ),
            "u_slab_crossing": ConstantRecord(
                d.slab_gap.root,
                "two_circle_slab_area(n+1, x) - three_circle_slab_area(n, x) "
                "= 2*v_dstar(r1, r2; n)",
                d.slab_gap.residual,
            ),
            "u_dstar": ConstantRecord(
                c.u_dstar, "max(v_dstar(r1, r2; n+1), u_slab_crossing)", 0.0
            ),
        }
        subs = {
            "n": CriticalReport(
                TorusProductSpec(spec.radii[:2], spec.euclid_dim),
                "two-torus",
                d.sub_n.criticals,
                _t2_records(d.sub_n),
            ),
            "n_plus_1": CriticalReport(
                TorusProductSpec(spec.radii[:2], spec.euclid_dim + 1),
                "two-torus",
                d.sub_up.criticals,
                _t2_records(d.sub_up),
            ),
        }
        return CriticalReport(spec, "three-torus", c, records, subs)
    raise GuardError(
        f"critical reports are defined for 2 or 3 circle factors, got {spec.circle_count}"
    )
