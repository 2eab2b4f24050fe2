"""Exact dimensional constants and mensuration of circle-product regions.

Every gamma evaluation needed here happens at a half-integer argument, so
the values are computed from the exact closed forms (integer factorials and
a single sqrt(pi) factor) instead of a general-purpose approximation. All
results are deterministic and bit-identical across runs and platforms.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import DomainError, GuardError

TWO_PI = 2.0 * math.pi

# Validity caps for the product manifolds handled by the pipelines.
MAX_CIRCLE_FACTORS = 3
MAX_EUCLID_DIM = 7


def _gamma_half(twice_x: int) -> float:
    """Gamma(twice_x / 2) for a positive integer twice_x, in closed form.

    Integer arguments reduce to a factorial; half-integer arguments use
    Gamma(k + 1/2) = (2k)! / (4^k k!) * sqrt(pi), evaluated with exact
    integer arithmetic before the final float conversion.
    """
    if twice_x <= 0:
        raise DomainError(f"gamma argument must be positive, got {twice_x}/2")
    if twice_x % 2 == 0:
        return float(math.factorial(twice_x // 2 - 1))
    k = (twice_x - 1) // 2
    return math.factorial(2 * k) / (4**k * math.factorial(k)) * math.sqrt(math.pi)


def unit_sphere_area(n: int) -> float:
    """Surface measure of the unit n-sphere: 2 pi^((n+1)/2) / Gamma((n+1)/2)."""
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise DomainError(f"sphere dimension must be a positive integer, got {n!r}")
    return 2.0 * math.pi ** ((n + 1) / 2.0) / _gamma_half(n + 1)


def unit_ball_volume(m: int) -> float:
    """Volume of the unit m-ball: pi^(m/2) / Gamma(m/2 + 1).

    Satisfies unit_ball_volume(m) == unit_sphere_area(m - 1) / m.
    """
    if not isinstance(m, int) or isinstance(m, bool) or m < 1:
        raise DomainError(f"ball dimension must be a positive integer, got {m!r}")
    return math.pi ** (m / 2.0) / _gamma_half(m + 2)


@dataclass(frozen=True)
class TorusProductSpec:
    """A Riemannian product of circle factors with a Euclidean factor.

    ``radii`` are the circle radii, stored sorted ascending (a circle of
    radius r has circumference 2 pi r); ``euclid_dim`` is the dimension of
    the Euclidean factor. At most three circles and euclid_dim <= 7 are
    accepted: outside those ranges the downstream formulas are unvalidated,
    so construction fails loudly instead.
    """

    radii: tuple[float, ...]
    euclid_dim: int

    def __post_init__(self):
        radii = tuple(float(r) for r in self.radii)
        if len(radii) > MAX_CIRCLE_FACTORS:
            raise GuardError(
                f"at most {MAX_CIRCLE_FACTORS} circle factors are supported, "
                f"got {len(radii)}"
            )
        for r in radii:
            if not (r > 0.0) or not math.isfinite(r):
                raise DomainError(f"circle radii must be positive finite reals, got {r!r}")
        n = self.euclid_dim
        if not isinstance(n, int) or isinstance(n, bool):
            raise DomainError(f"euclid_dim must be an integer, got {n!r}")
        if not 1 <= n <= MAX_EUCLID_DIM:
            raise GuardError(f"euclid_dim must be in [1, {MAX_EUCLID_DIM}], got {n}")
        object.__setattr__(self, "radii", tuple(sorted(radii)))

    @property
    def circle_count(self) -> int:
        return len(self.radii)

    @property
    def dimension(self) -> int:
        """Dimension of the product manifold."""
        return self.circle_count + self.euclid_dim

    def torus_measure(self, indices: Iterable[int] | None = None) -> float:
        """Product of circumferences over the chosen circle factors.

        With no indices, all circle factors are used; the empty selection
        yields 1.0 (no circle factor contributes).
        """
        chosen = self.radii if indices is None else [self.radii[i] for i in indices]
        measure = 1.0
        for r in chosen:
            measure *= TWO_PI * r
        return measure


@dataclass(frozen=True)
class CandidateRegion:
    """Some of a spec's circle factors crossed with a ball filling the rest.

    ``circle_indices`` index into the spec's sorted radii. ``ball_dim`` must
    equal (circle_count - len(circle_indices)) + euclid_dim: the ball fills
    every dimension not taken up by a chosen circle.
    """

    circle_indices: tuple[int, ...]
    ball_dim: int
    ball_radius: float

    @classmethod
    def for_spec(
        cls, spec: TorusProductSpec, circle_indices: Sequence[int], ball_radius: float
    ) -> "CandidateRegion":
        """Build a region for ``spec`` with the ball dimension filled in."""
        indices = tuple(circle_indices)
        ball_dim = spec.circle_count - len(indices) + spec.euclid_dim
        return cls(indices, ball_dim, ball_radius)


def candidate_regime(n_circles: int, total_circles: int) -> str:
    """Conventional tag for a candidate by how many circle factors it uses.

    0 -> "ball", 1 -> "cylinder", all -> "slab"; the only remaining case
    (two circles out of three) is tagged "slab2".
    """
    if n_circles == 0:
        return "ball"
    if n_circles == 1:
        return "cylinder"
    if n_circles == total_circles:
        return "slab"
    return f"slab{n_circles}"


def _check_region(spec: TorusProductSpec, region: CandidateRegion) -> None:
    indices = region.circle_indices
    if len(set(indices)) != len(indices):
        raise DomainError(f"duplicate circle indices in region: {indices}")
    for i in indices:
        if not 0 <= i < spec.circle_count:
            raise DomainError(
                f"circle index {i} out of range for {spec.circle_count} factors"
            )
    expected = spec.circle_count - len(indices) + spec.euclid_dim
    if region.ball_dim != expected:
        raise DomainError(
            f"inconsistent ball dimension {region.ball_dim}: the ball must fill "
            f"the remaining {expected} dimensions"
        )
    if not (region.ball_radius > 0.0) or not math.isfinite(region.ball_radius):
        raise DomainError(f"ball radius must be positive, got {region.ball_radius!r}")


def region_volume(spec: TorusProductSpec, region: CandidateRegion) -> float:
    """Volume of the region: (product of circumferences) * b_m * R^m."""
    _check_region(spec, region)
    m = region.ball_dim
    return (
        spec.torus_measure(region.circle_indices)
        * unit_ball_volume(m)
        * region.ball_radius**m
    )


def region_boundary_area(spec: TorusProductSpec, region: CandidateRegion) -> float:
    """Boundary area of the region: (product of circumferences) * m * b_m * R^(m-1).

    Equals the derivative of region_volume with respect to the ball radius.
    """
    _check_region(spec, region)
    m = region.ball_dim
    if m < 1:
        raise DomainError("region has no ball factor, so no boundary to measure")
    return (
        spec.torus_measure(region.circle_indices)
        * m
        * unit_ball_volume(m)
        * region.ball_radius ** (m - 1)
    )
