import math

import pytest

from torusiso import (
    CandidateRegion,
    DomainError,
    GuardError,
    TorusProductSpec,
    candidate_regime,
    region_boundary_area,
    region_volume,
    unit_ball_volume,
    unit_sphere_area,
)


def rel(a, b):
    return abs(a - b) / max(abs(a), abs(b))


def test_unit_sphere_areas():
    assert math.isclose(unit_sphere_area(1), 2 * math.pi, rel_tol=1e-14)
    assert math.isclose(unit_sphere_area(2), 4 * math.pi, rel_tol=1e-14)
    assert math.isclose(unit_sphere_area(3), 2 * math.pi**2, rel_tol=1e-14)


def test_unit_ball_volumes():
    assert math.isclose(unit_ball_volume(2), math.pi, rel_tol=1e-14)
    assert math.isclose(unit_ball_volume(3), 4 * math.pi / 3, rel_tol=1e-14)
    assert math.isclose(unit_ball_volume(4), math.pi**2 / 2, rel_tol=1e-14)
    assert math.isclose(unit_ball_volume(4), unit_sphere_area(3) / 4, rel_tol=1e-14)


def test_ball_sphere_identity_up_to_dim_12():
    # m = 1 would need the 0-sphere, which the area function rejects by
    # contract; its ball volume is checked directly instead.
    assert unit_ball_volume(1) == pytest.approx(2.0, rel=1e-14)
    for m in range(2, 13):
        assert rel(unit_ball_volume(m), unit_sphere_area(m - 1) / m) < 1e-14


@pytest.mark.parametrize("bad", [0, -1, -7])
def test_dimension_domain_errors(bad):
    with pytest.raises(DomainError):
        unit_sphere_area(bad)
    with pytest.raises(DomainError):
        unit_ball_volume(bad)


def test_non_integer_dimensions_rejected():
    with pytest.raises(DomainError):
        unit_sphere_area(2.0)
    with pytest.raises(DomainError):
        unit_ball_volume(True)


def test_region_volume_examples(example_spec):
    both = CandidateRegion.for_spec(example_spec, (0, 1), 1.0)
    assert math.isclose(region_volume(example_spec, both), 4 * math.pi**2, rel_tol=1e-12)

    ball = CandidateRegion.for_spec(TorusProductSpec((1.0,), 2), (), 2.0)
    assert math.isclose(region_volume(TorusProductSpec((1.0,), 2), ball),
                        (4 * math.pi / 3) * 8, rel_tol=1e-12)

    spec3 = TorusProductSpec((1.0, 1.0, 1.0), 2)
    slab = CandidateRegion.for_spec(spec3, (0, 1, 2), 1.0)
    assert math.isclose(region_volume(spec3, slab), (2 * math.pi) ** 3 * math.pi,
                        rel_tol=1e-12)


def test_region_boundary_area_examples(example_spec):
    both = CandidateRegion.for_spec(example_spec, (0, 1), 1.0)
    assert math.isclose(region_boundary_area(example_spec, both), 8 * math.pi**2,
                        rel_tol=1e-12)

    spec13 = TorusProductSpec((1.0,), 3)
    cyl = CandidateRegion.for_spec(spec13, (0,), 1.0)
    assert math.isclose(region_boundary_area(spec13, cyl), 8 * math.pi**2, rel_tol=1e-12)

    # Ball of volume 4*pi/3 in R^3 has area 4*pi.
    spec12 = TorusProductSpec((1.0,), 2)
    radius = ((4 * math.pi / 3) / unit_ball_volume(3)) ** (1 / 3)
    ball = CandidateRegion.for_spec(spec12, (), radius)
    assert math.isclose(region_boundary_area(spec12, ball), 4 * math.pi, rel_tol=1e-12)


def test_boundary_area_is_volume_derivative():
    spec = TorusProductSpec((0.7, 1.3, 2.1), 3)
    for indices in [(), (0,), (0, 2), (0, 1, 2)]:
        radius = 1.37
        region = CandidateRegion.for_spec(spec, indices, radius)
        h = 1e-6 * radius
        up = region_volume(spec, CandidateRegion.for_spec(spec, indices, radius + h))
        down = region_volume(spec, CandidateRegion.for_spec(spec, indices, radius - h))
        finite_diff = (up - down) / (2 * h)
        assert rel(finite_diff, region_boundary_area(spec, region)) < 1e-6


@pytest.mark.parametrize("lam", [0.5, 2.0, math.pi])
def test_scaling_laws(lam):
    spec = TorusProductSpec((1.0, 2.0), 4)
    base = CandidateRegion.for_spec(spec, (0,), 0.9)
    scaled = CandidateRegion.for_spec(spec, (0,), lam * 0.9)
    m = base.ball_dim
    assert rel(region_volume(spec, scaled), lam**m * region_volume(spec, base)) < 1e-12
    assert rel(
        region_boundary_area(spec, scaled),
        lam ** (m - 1) * region_boundary_area(spec, base),
    ) < 1e-12


def test_spec_sorts_radii():
    spec = TorusProductSpec((2.0, 0.5, 1.0), 2)
    assert spec.radii == (0.5, 1.0, 2.0)
    assert spec.circle_count == 3
    assert spec.dimension == 5


def test_spec_guards():
    with pytest.raises(GuardError):
        TorusProductSpec((1.0, 1.0, 1.0, 1.0), 2)
    with pytest.raises(GuardError):
        TorusProductSpec((1.0,), 8)
    with pytest.raises(GuardError):
        TorusProductSpec((1.0,), 0)
    with pytest.raises(DomainError):
        TorusProductSpec((-1.0,), 2)
    with pytest.raises(DomainError):
        TorusProductSpec((0.0, 1.0), 2)
    with pytest.raises(DomainError):
        TorusProductSpec((1.0,), 2.0)


def test_torus_measure():
    spec = TorusProductSpec((0.5, 2.0), 3)
    assert math.isclose(spec.torus_measure(), (math.pi) * (4 * math.pi), rel_tol=1e-14)
    assert math.isclose(spec.torus_measure((0,)), math.pi, rel_tol=1e-14)
    assert spec.torus_measure(()) == 1.0


def test_region_consistency_errors(example_spec):
    with pytest.raises(DomainError):
        region_volume(example_spec, CandidateRegion((0, 0), 2, 1.0))
    with pytest.raises(DomainError):
        region_volume(example_spec, CandidateRegion((5,), 3, 1.0))
    with pytest.raises(DomainError):
        region_volume(example_spec, CandidateRegion((0,), 2, 1.0))  # wrong ball_dim
    with pytest.raises(DomainError):
        region_volume(example_spec, CandidateRegion((0,), 3, -2.0))


def test_candidate_regime_tags():
    assert candidate_regime(0, 2) == "ball"
    assert candidate_regime(1, 2) == "cylinder"
    assert candidate_regime(2, 2) == "slab"
    assert candidate_regime(2, 3) == "slab2"
    assert candidate_regime(3, 3) == "slab"
