import math
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from blockgeo import (BASE, MU, MU1, MU2, InputError, allowable_chart,
                      distance, h_functional, validate_point,
                      variation_slope)

import oracles


def random_point(rng, k, margin=0.995):
    lim = margin / k
    return (rng.uniform(-lim, lim), rng.uniform(-lim, lim))


def test_distance_matches_sup_oracle():
    rng = random.Random(7)
    worst = 0.0
    for _ in range(5000):
        k = rng.uniform(0.05, 0.95)
        p, q = random_point(rng, k), random_point(rng, k)
        worst = max(worst, abs(distance(p, q, k) - oracles.sup_distance(p, q, k)))
    assert worst < 5e-12


def test_distance_metric_properties():
    rng = random.Random(8)
    for _ in range(500):
        k = rng.uniform(0.1, 0.9)
        p, q, s = (random_point(rng, k, 0.9) for _ in range(3))
        assert distance(p, p, k) == 0.0
        assert abs(distance(p, q, k) - distance(q, p, k)) < 1e-14
        assert distance(p, s, k) <= distance(p, q, k) + distance(q, s, k) + 1e-12


def test_named_points_distances():
    k = 0.5
    L = math.atanh(k)
    assert abs(distance(BASE, MU, k) - L) < 1e-16
    assert abs(distance(BASE, MU1, k) - L) < 1e-16
    assert abs(distance(MU, MU1, k) - L) < 1e-16
    assert abs(distance(MU1, MU2, k) - L) < 1e-16


def test_h_functional_values():
    assert h_functional((1.0, 1.0), 0.5) == 0.5
    assert abs(h_functional((0.0, 1.0 / 0.7), 0.7) - 1.0) < 1e-15
    assert h_functional((0.0, 0.0), 0.3) == 0.0
    assert h_functional((-2.0, 1.0), 0.25) == 0.5


def _away_from_underflow(x: float) -> float:
    return 0.0 if abs(x) < 1e-6 else x


@given(v1=st.floats(-16.0, 16.0).map(_away_from_underflow),
       v2=st.floats(-16.0, 16.0).map(_away_from_underflow),
       j=st.integers(-8, 8), sign=st.sampled_from((-1.0, 1.0)),
       k=st.floats(0.1, 0.9))
@settings(max_examples=200)
def test_h_homogeneity_exact_for_binary_scales(v1, v2, j, sign, k):
    # scaling a normal float by a signed power of two is exact, so the
    # homogeneity law holds with equality rather than to within a tolerance
    # (subnormals would lose bits to gradual underflow, hence the map)
    s = sign * 2.0 ** j
    assert h_functional((s * v1, s * v2), k) == abs(s) * h_functional((v1, v2), k)


@given(v1=st.floats(-8.0, 8.0), v2=st.floats(-8.0, 8.0),
       w1=st.floats(-8.0, 8.0), w2=st.floats(-8.0, 8.0), k=st.floats(0.1, 0.9))
@settings(max_examples=200)
def test_h_subadditive(v1, v2, w1, w2, k):
    lhs = h_functional((v1 + w1, v2 + w2), k)
    assert lhs <= h_functional((v1, v2), k) + h_functional((w1, w2), k) + 1e-12


def test_validate_point_guards():
    with pytest.raises(InputError):
        validate_point((2.1, 0.0), 0.5)
    with pytest.raises(InputError):
        validate_point((0.0, -2.0), 0.5)
    with pytest.raises(InputError):
        validate_point((float("nan"), 0.0), 0.5)
    with pytest.raises(InputError):
        validate_point((0.0,), 0.5)
    p = validate_point((1, 1), 0.5)
    assert p == (1.0, 1.0) and all(isinstance(x, float) for x in p)


def test_chart_involution_and_isometry():
    rng = random.Random(5)
    worst_inv = worst_iso = 0.0
    for _ in range(3000):
        k = rng.uniform(0.1, 0.9)
        p, q = random_point(rng, k, 0.95), random_point(rng, k, 0.95)
        pp = allowable_chart(allowable_chart(p, k), k)
        worst_inv = max(worst_inv, abs(pp[0] - p[0]), abs(pp[1] - p[1]))
        worst_iso = max(worst_iso, abs(distance(allowable_chart(p, k),
                                                allowable_chart(q, k), k)
                                       - distance(p, q, k)))
    assert worst_inv <= 1e-14
    assert worst_iso <= 1e-12


def test_chart_swaps_named_points():
    for k in oracles.K_GRID:
        assert allowable_chart(BASE, k) == MU
        assert allowable_chart(MU, k) == BASE
        assert allowable_chart(MU1, k) == MU2
        assert allowable_chart(MU2, k) == MU1


def test_chart_is_psi_point_reflection():
    rng = random.Random(6)
    worst = 0.0
    for _ in range(1000):
        k = rng.uniform(0.1, 0.9)
        p = random_point(rng, k, 0.9)
        im = oracles.psi(allowable_chart(p, k), k)
        ref = oracles.chart_psi(p, k)
        worst = max(worst, abs(im[0] - ref[0]), abs(im[1] - ref[1]))
    assert worst < 5e-13


def test_variation_slope_matches_h():
    rng = random.Random(99)
    for k in oracles.K_GRID:
        for _ in range(10):
            v = (rng.uniform(-2, 2), rng.uniform(-2, 2))
            w = (rng.uniform(-2, 2), rng.uniform(-2, 2))
            res = variation_slope(v, w, k)
            target = h_functional((v[0] - w[0], v[1] - w[1]), k)
            assert abs(res.limit - target) <= 1e-9
            ts = [t for t, _ in res.estimates]
            assert all(a > b for a, b in zip(ts, ts[1:]))


def test_variation_slope_schedule_guards():
    with pytest.raises(InputError):
        variation_slope((1, 0), (0, 1), 0.5, t_schedule=[])
    with pytest.raises(InputError):
        variation_slope((1, 0), (0, 1), 0.5, t_schedule=[1e-2, 1e-2])
    with pytest.raises(InputError):
        variation_slope((1, 0), (0, 1), 0.5, t_schedule=[-1e-2, -2e-2])
