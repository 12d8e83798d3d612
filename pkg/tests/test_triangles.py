import math

import pytest

from blockgeo import (BASE, MU, MU1, ConstructionError, InputError,
                      TriangleSpec, curvature_probe, distance,
                      sigma_pointwise_gap, synthesize, synthesize_family)
from blockgeo.triangles import VERTEX_ORDER

HALF_LOG3 = 0.5493061443340548
RIGHT_TARGETS = (math.pi / 2, math.pi / 3, math.pi / 4)
T0_HALF = 0.2679491924311227
SIGMA_APEX_HALF = 1.3544380888143643


def test_spec_validation():
    with pytest.raises(InputError):
        TriangleSpec(l=0.0, thetas=RIGHT_TARGETS).validate()
    with pytest.raises(InputError):
        TriangleSpec(l=-1.0, thetas=RIGHT_TARGETS).validate()
    with pytest.raises(InputError):
        TriangleSpec(l=1.0, thetas=(1.0, 2.0)).validate()
    with pytest.raises(InputError):
        TriangleSpec(l=1.0, thetas=(1.0, 2.0, 3.5)).validate()
    with pytest.raises(InputError):
        TriangleSpec(l=1.0, thetas=(-0.1, 1.0, 1.0)).validate()
    spec = TriangleSpec(l=HALF_LOG3, thetas=RIGHT_TARGETS)
    assert abs(spec.k - 0.5) < 1e-15


def test_synthesize_right_triangle():
    spec = TriangleSpec(l=HALF_LOG3, thetas=RIGHT_TARGETS)
    rep = synthesize(spec)
    assert rep.vertices == {"base": BASE, "mu": MU, "mu1": MU1}
    for length in rep.side_lengths:
        assert abs(length - spec.l) <= 1e-12
    for name, target in zip(VERTEX_ORDER, RIGHT_TARGETS):
        va = rep.angles[name]
        assert va.numeric.verdict == "exists"
        assert va.target == target
        assert abs(va.closed - target) < 1e-15
        assert va.deviation <= 1e-3
    assert abs(rep.angle_sum_numeric - 13 * math.pi / 12) <= 3e-3
    assert abs(rep.angle_sum_closed - 13 * math.pi / 12) < 1e-12
    assert rep.family_index is None


def test_synthesized_sides_meet_at_vertices():
    spec = TriangleSpec(l=HALF_LOG3, thetas=RIGHT_TARGETS)
    rep = synthesize(spec)
    alpha, beta, gamma = (rep.sides[n] for n in ("alpha", "beta", "gamma"))
    assert (alpha.start, alpha.end) == (BASE, MU)
    assert (beta.start, beta.end) == (MU, MU1)
    assert (gamma.start, gamma.end) == (BASE, MU1)
    k = rep.k
    # the dihedral data lives on honest curves: interior points stay at the
    # right distances from both endpoints of their side
    for seg in (alpha, beta, gamma):
        mid = seg.midpoint()
        assert abs(distance(seg.start, mid, k) - spec.l / 2) < 1e-12
        assert abs(distance(seg.end, mid, k) - spec.l / 2) < 1e-12


def test_equilateral_all_standard():
    spec = TriangleSpec(l=HALF_LOG3, thetas=(math.pi / 3,) * 3)
    rep = synthesize(spec)
    assert rep.max_angle_deviation <= 1e-3
    # the sigma side of the equilateral triangle is flat (up to the last
    # bit of sin(pi/6), which is not exactly one half in floating point)
    assert abs(rep.sides["beta"].sigma.d0) <= 1e-15
    assert abs(rep.sides["beta"].sigma.dk) <= 1e-15


def test_degenerate_angle_targets():
    spec0 = TriangleSpec(l=HALF_LOG3, thetas=(0.0, 0.0, 0.0))
    rep0 = synthesize(spec0)
    assert rep0.angle_sum_numeric <= 0.06
    spec_pi = TriangleSpec(l=HALF_LOG3, thetas=(math.pi,) * 3)
    rep_pi = synthesize(spec_pi)
    assert rep_pi.angle_sum_numeric >= 3 * math.pi - 0.06


def test_family_distinct_with_identical_measurements():
    spec = TriangleSpec(l=HALF_LOG3, thetas=RIGHT_TARGETS, family_seed=42)
    family = synthesize_family(spec, 5)
    assert [rep.family_index for rep in family] == [0, 1, 2, 3, 4]
    for i in range(5):
        for j in range(i + 1, 5):
            gap = sigma_pointwise_gap(family[i].sides["beta"].sigma,
                                      family[j].sides["beta"].sigma)
            assert gap > 1e-6
    for rep in family:
        for length in rep.side_lengths:
            assert abs(length - spec.l) <= 1e-12
        assert rep.max_angle_deviation <= 1e-3


def test_family_seed_changes_members():
    spec_a = TriangleSpec(l=HALF_LOG3, thetas=RIGHT_TARGETS, family_seed=1)
    spec_b = TriangleSpec(l=HALF_LOG3, thetas=RIGHT_TARGETS, family_seed=2)
    fam_a = synthesize_family(spec_a, 2)
    fam_b = synthesize_family(spec_b, 2)
    # member 0 is the plain one; the knotted member carries the seed
    knots_a = fam_a[1].sides["beta"].sigma.params["knots"]
    knots_b = fam_b[1].sides["beta"].sigma.params["knots"]
    assert knots_a and knots_b and knots_a != knots_b


def test_family_gap_enforcement():
    spec = TriangleSpec(l=HALF_LOG3, thetas=RIGHT_TARGETS)
    with pytest.raises(ConstructionError) as err:
        synthesize_family(spec, 3, min_gap=1.0)
    assert err.value.suggestion


def test_family_size_guard():
    spec = TriangleSpec(l=HALF_LOG3, thetas=RIGHT_TARGETS)
    with pytest.raises(InputError):
        synthesize_family(spec, 0)


def test_curvature_probe_across_moduli():
    for i in range(1, 10):
        k = round(0.1 * i, 1)
        probe = curvature_probe(k)
        assert abs(probe.m - probe.l) <= 1e-9
        assert abs(probe.base - probe.l) <= 1e-12
        for arc in probe.midpoint_arclengths:
            assert abs(arc - probe.l / 2) <= 1e-10
        assert probe.negative_curvature_violated
        assert abs(probe.ratio_base_over_m - 1.0) <= 1e-9
        assert abs(probe.ratio_base_over_2m - 0.5) <= 1e-9


def test_curvature_probe_frozen_values():
    probe = curvature_probe(0.5)
    assert abs(probe.t_apex - T0_HALF) < 1e-15
    assert abs(probe.sigma_at_apex - SIGMA_APEX_HALF) < 1e-14
    assert abs(probe.l - HALF_LOG3) < 1e-15
    assert abs(probe.midpoint_alpha[0] - 2 * T0_HALF) < 1e-15
    # the apex value solves both ceiling branches at once; check the
    # defining identity rather than a printed decimal
    k = 0.5
    L = math.atanh(k)
    assert abs(math.atanh(k * probe.sigma_at_apex) - 1.5 * L) <= 1e-12
