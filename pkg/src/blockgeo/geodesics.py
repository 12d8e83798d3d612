"""Geodesic segment families and sigma-profile machinery.

Three segment constructors live here:

* standard_segment: the explicit blockwise curve joining any two admissible
  points, parametrized so that the distance from the start is artanh(t).
* sigma_segment: the one-parameter family of curves joining (1, 1) to (1, 0)
  driven by a profile sigma on [0, k]; blocks are (sigma(t), (k-t)/(k(1-kt))).
* pulled_back_segment: the chart transport of a sigma curve, joining the base
  point (0, 0) to (1, 0); blocks are (t/k, (1-s)/(1-k^2 s)) with s = sigma(t).

A profile is admissible when sigma(0) = sigma(k) = 1 and it stays inside the
corridor corridor_lower <= sigma <= corridor_upper pointwise. That much makes
every curve point lie metrically between the two endpoints. Pairwise
additivity along the curve (the full geodesic property) additionally needs
phi(r) = artanh(k*sigma(t)) - artanh(k), with r = artanh(t), to be
1-Lipschitz in r; validate_sigma reports that as a separate verdict because
admissible non-Lipschitz profiles (see sigma_oscillatory) are legitimate
inputs for the angle engine.
"""
import math
from dataclasses import dataclass

from scipy.interpolate import CubicHermiteSpline

from . import hyp
from .errors import (ConstructionError, DegenerateSegmentError, InputError,
                     InvalidSigmaError)
from .model import Point, validate_point

ENDPOINT_TOL = 1e-12
VALIDATE_SAMPLES = 10_000


# ---------------------------------------------------------------------------
# corridor bounds
# ---------------------------------------------------------------------------

def upper_bound_near_zero(t: float, k: float) -> float:
    """Ceiling branch active for small t: (k+t)/(k(1+kt))."""
    return (k + t) / (k * (1.0 + k * t))


def upper_bound_near_k(t: float, k: float) -> float:
    """Ceiling branch active near t = k: (2k-(1+k^2)t)/(k(1+k^2-2kt))."""
    return (2.0 * k - (1.0 + k * k) * t) / (k * (1.0 + k * k - 2.0 * k * t))


def lower_bound_near_zero(t: float, k: float) -> float:
    """Floor branch active for small t: (k-t)/(k(1-kt))."""
    return (k - t) / (k * (1.0 - k * t))


def lower_bound_near_k(t: float, k: float) -> float:
    """Floor branch active near t = k: t/k."""
    return t / k


def corridor_upper(t: float, k: float) -> float:
    return min(upper_bound_near_zero(t, k), upper_bound_near_k(t, k))


def corridor_lower(t: float, k: float) -> float:
    return max(lower_bound_near_zero(t, k), lower_bound_near_k(t, k))


def corridor_apex(k: float) -> float:
    """Parameter where the two ceiling branches cross: k/(1+sqrt(1-k^2)).

    Equals tanh(artanh(k)/2), i.e. the arclength midpoint of the family.
    """
    k = hyp.require_modulus(k)
    return k / (1.0 + math.sqrt(1.0 - k * k))


# ---------------------------------------------------------------------------
# sigma profiles
# ---------------------------------------------------------------------------

class SigmaProfile:
    """A continuous profile on [0, k] with optional declared end derivatives.

    ``fn`` is the evaluation map; ``d0`` and ``dk`` are the derivatives at 0
    and k when the family declares them (closed-form angle formulas consume
    the declarations, the numeric engine never does). ``params`` records
    construction inputs for serialization.
    """

    def __init__(self, fn, k: float, d0: float | None = None,
                 dk: float | None = None, family: str = "custom",
                 params: dict | None = None):
        self.k = hyp.require_modulus(k)
        self._fn = fn
        self.d0 = d0
        self.dk = dk
        self.family = family
        self.params = dict(params or {})

    def __call__(self, t: float) -> float:
        return self._fn(t)

    def __repr__(self):
        return (f"SigmaProfile(family={self.family!r}, k={self.k!r}, "
                f"d0={self.d0!r}, dk={self.dk!r})")


def max_slope_at_zero(k: float) -> float:
    """Largest admissible declared derivative at t = 0: (1-k^2)/k."""
    k = hyp.require_modulus(k)
    return (1.0 - k * k) / k


def max_slope_at_k(k: float) -> float:
    """Largest admissible |derivative| at t = k: 1/k."""
    k = hyp.require_modulus(k)
    return 1.0 / k


def sigma_constant_one(k: float) -> SigmaProfile:
    """The profile sigma == 1; its curve is the standard segment (1,1)-(1,0)."""
    k = hyp.require_modulus(k)
    return SigmaProfile(lambda t: 1.0, k, d0=0.0, dk=0.0, family="constant-one")


def sigma_midpoint_pinned(k: float) -> SigmaProfile:
    """The unique admissible 1-Lipschitz profile through the corridor apex.

    Pinning the value at corridor_apex(k) to the ceiling forces the profile
    to ride the full ceiling min of both upper branches everywhere, so the
    endpoint strictness flags of validate_sigma legitimately fail for it.
    """
    k = hyp.require_modulus(k)

    def fn(t: float) -> float:
        return corridor_upper(t, k)

    return SigmaProfile(fn, k, d0=max_slope_at_zero(k), dk=-max_slope_at_k(k),
                        family="midpoint-pinned")


def sigma_oscillatory(k: float) -> SigmaProfile:
    """An admissible profile whose difference quotient oscillates at t = 0.

    sigma(t) = 1 + ((1-k^2)/(2k)) * t * sin^2(1/t) near zero, cosine-ramped
    back to the constant 1 on [k/2, 3k/4]. It satisfies the corridor bounds
    everywhere (the ratio against the ceiling gap is (1+kt) sin^2(1/t)/2 < 1)
    but is not differentiable at 0, so the chord-ratio angle at (1, 1)
    against the diagonal segment does not exist. The derivative at 0 is
    deliberately undeclared; at k the profile is constant, so dk = 0.
    """
    k = hyp.require_modulus(k)
    lo, hi = 0.5 * k, 0.75 * k
    amp = (1.0 - k * k) / (2.0 * k)

    def fn(t: float) -> float:
        if t <= 0.0 or t >= hi:
            return 1.0
        ramp = 1.0 if t <= lo else 0.5 * (1.0 + math.cos(math.pi * (t - lo) / (hi - lo)))
        return 1.0 + amp * t * math.sin(1.0 / t) ** 2 * ramp

    return SigmaProfile(fn, k, d0=None, dk=0.0, family="oscillatory")


# ---------------------------------------------------------------------------
# validation
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SigmaValidation:
    """Verdicts from sampling a profile on a dense grid.

    ``ok`` is the admissibility gate (bounds and endpoint values). The
    Lipschitz verdict says whether the curve is additively parametrized
    (a true geodesic) and never gates construction. The strictness flags
    report whether the profile stays strictly below the relevant ceiling
    branch on punctured windows at each end; profiles that ride a ceiling
    branch (boundary germs, the midpoint-pinned family) honestly fail them.
    """
    ok: bool
    bounds_ok: bool
    endpoints_ok: bool
    lipschitz_ok: bool
    strict_near_zero: bool
    strict_near_k: bool
    max_upper_violation: float
    max_lower_violation: float
    worst_t: float | None
    max_phi_slope: float
    endpoint_gap: float
    samples: int


def validate_sigma(sigma: SigmaProfile, k: float | None = None,
                   samples: int = VALIDATE_SAMPLES, *,
                   bound_tol: float = 1e-12, slope_tol: float = 1e-9,
                   strict_margin: float = 1e-9,
                   strict_window: float = 0.08) -> SigmaValidation:
    """Sample a profile on a dense t-grid and report all verdicts.

    ``strict_window`` is the fraction of [0, k] adjacent to each endpoint on
    which strictness against the local ceiling branch is required.
    """
    if k is None:
        k = sigma.k
    k = hyp.require_modulus(k)
    if samples < 2:
        raise InputError(f"samples must be at least 2, got {samples!r}")
    L = math.atanh(k)
    up_viol = lo_viol = 0.0
    worst_t = None
    prev_r = prev_phi = None
    max_slope = 0.0
    strict0 = strictk = True
    win = strict_window * k
    for i in range(samples):
        t = k * i / (samples - 1)
        s = float(sigma(t))
        gap_up = s - corridor_upper(t, k)
        gap_lo = corridor_lower(t, k) - s
        if gap_up > up_viol:
            up_viol, worst_t = gap_up, t
        if gap_lo > lo_viol:
            lo_viol, worst_t = gap_lo, t
        if 0.0 < t <= win and not s < upper_bound_near_zero(t, k) - strict_margin:
            strict0 = False
        if k - win <= t < k and not s < upper_bound_near_k(t, k) - strict_margin:
            strictk = False
        ks = k * s
        if abs(ks) < 1.0 and t < 1.0:
            r, phi = math.atanh(t), math.atanh(ks) - L
            if prev_r is not None and r > prev_r:
                max_slope = max(max_slope, abs(phi - prev_phi) / (r - prev_r))
            prev_r, prev_phi = r, phi
    endpoint_gap = max(abs(float(sigma(0.0)) - 1.0), abs(float(sigma(k)) - 1.0))
    bounds_ok = up_viol <= bound_tol and lo_viol <= bound_tol
    endpoints_ok = endpoint_gap <= 1e-12
    lipschitz_ok = max_slope <= 1.0 + slope_tol
    return SigmaValidation(
        ok=bounds_ok and endpoints_ok,
        bounds_ok=bounds_ok,
        endpoints_ok=endpoints_ok,
        lipschitz_ok=lipschitz_ok,
        strict_near_zero=strict0,
        strict_near_k=strictk,
        max_upper_violation=up_viol,
        max_lower_violation=lo_viol,
        worst_t=worst_t,
        max_phi_slope=max_slope,
        endpoint_gap=endpoint_gap,
        samples=samples,
    )


# ---------------------------------------------------------------------------
# prescribed-derivative construction
# ---------------------------------------------------------------------------

def _germ_at_zero(d0: float, k: float):
    """Germ near t = 0 with derivative d0 there, and its derivative map.

    The extremal positive slope rides the ceiling to second order (a linear
    germ would overshoot it immediately); every other slope takes the
    straight line, which sits inside the corridor for small t.
    """
    mx = max_slope_at_zero(k)
    if abs(d0 - mx) <= 1e-12 * max(1.0, mx):
        return (lambda t: 1.0 + mx * t - (1.0 - k * k) * t * t,
                lambda t: mx - 2.0 * (1.0 - k * k) * t)
    return (lambda t: 1.0 + d0 * t, lambda t: d0)


def _germ_at_k(dk: float, k: float):
    """Germ near t = k with derivative dk there.

    The extremal negative slope hugs the ceiling branch to second order.
    The extremal positive slope's straight line is exactly the floor branch
    t/k, which is admissible as-is.
    """
    mx = max_slope_at_k(k)
    if abs(dk + mx) <= 1e-12 * max(1.0, mx):
        return (lambda t: 1.0 - (t - k) / k - 2.0 * (t - k) ** 2 / (1.0 - k * k),
                lambda t: -1.0 / k - 4.0 * (t - k) / (1.0 - k * k))
    return (lambda t: 1.0 + dk * (t - k), lambda t: dk)


def _phi_value(s: float, k: float, L: float) -> float:
    return math.atanh(k * s) - L


def _phi_slope(s: float, sprime: float, t: float, k: float) -> float:
    """d/dr of artanh(k*sigma(t)) with r = artanh(t)."""
    return k * sprime * (1.0 - t * t) / (1.0 - (k * s) ** 2)


def sigma_prescribed(d0: float, dk: float, k: float, *,
                     germ_frac: float = 0.25, knots=(),
                     samples: int = 2001,
                     max_attempts: int = 40) -> SigmaProfile:
    """Profile with prescribed end derivatives and a smooth interior.

    The germs near 0 and k follow _germ_at_zero/_germ_at_k on intervals of
    relative size ``germ_frac``; the interior is a cubic Hermite blend in
    phi-coordinates (where the admissibility corridor is |phi| <= min(r, L-r)
    and geodesy is a unit slope bound). ``knots`` is an optional sequence of
    (relative_position, phi_offset) control points used to generate distinct
    family members; their slopes are clamped away from the unit bound.

    Each candidate is validated on a dense grid for bounds, endpoint values,
    and the Lipschitz property; on failure the germ intervals and knot
    offsets are halved and the blend is rebuilt, so near-extremal slopes
    (whose straight germs break the unit slope bound at finite t) end up on
    suitably short germs. Raises ConstructionError when shrinking never
    produces a valid profile.
    """
    k = hyp.require_modulus(k)
    mx0, mxk = max_slope_at_zero(k), max_slope_at_k(k)
    for name, val, mx in (("d0", d0, mx0), ("dk", dk, mxk)):
        if not isinstance(val, (int, float)) or isinstance(val, bool) or not math.isfinite(float(val)):
            raise InputError(f"{name} must be a finite real, got {val!r}")
        if abs(val) > mx + 1e-12:
            raise InputError(f"{name}={val!r} exceeds the admissible range {mx!r} for k={k!r}")
    d0, dk = float(d0), float(dk)
    L = math.atanh(k)
    knots = tuple((float(p), float(o)) for p, o in knots)
    if any(not 0.0 < p < 1.0 for p, _ in knots):
        raise InputError("knot positions must lie strictly inside (0, 1)")

    frac = germ_frac
    amp = 1.0
    for attempt in range(max_attempts):
        a, b = frac * k, frac * k
        g0, g0p = _germ_at_zero(d0, k)
        gk, gkp = _germ_at_k(dk, k)
        ra, rb = math.atanh(a), math.atanh(k - b)
        pa = _phi_value(g0(a), k, L)
        sa = _phi_slope(g0(a), g0p(a), a, k)
        pb = _phi_value(gk(k - b), k, L)
        sb = _phi_slope(gk(k - b), gkp(k - b), k - b, k)
        base = CubicHermiteSpline([ra, rb], [pa, pb], [sa, sb])
        xs, ys, ds = [ra], [pa], [sa]
        for rel, off in sorted(knots):
            rp = ra + rel * (rb - ra)
            slope = max(-0.9, min(0.9, float(base(rp, 1))))
            xs.append(rp)
            ys.append(float(base(rp)) + off * amp)
            ds.append(slope)
        xs.append(rb)
        ys.append(pb)
        ds.append(sb)
        spline = CubicHermiteSpline(xs, ys, ds)

        def fn(t: float, a=a, b=b, g0=g0, gk=gk, spline=spline) -> float:
            if t <= a:
                return g0(t)
            if t >= k - b:
                return gk(t)
            return math.tanh(L + float(spline(math.atanh(t)))) / k

        sigma = SigmaProfile(
            fn, k, d0=d0, dk=dk, family="prescribed",
            params={"d0": d0, "dk": dk, "germ_frac": frac,
                    "knots": [list(kn) for kn in knots],
                    "knot_scale": amp, "attempts": attempt})
        report = validate_sigma(sigma, k, samples=samples)
        if report.ok and report.lipschitz_ok:
            return sigma
        frac *= 0.5
        amp *= 0.5
    raise ConstructionError(
        f"no valid profile for d0={d0!r}, dk={dk!r}, k={k!r} "
        f"after {max_attempts} shrink attempts",
        suggestion="shrink germ_frac or the knot offsets and retry")


# ---------------------------------------------------------------------------
# segments
# ---------------------------------------------------------------------------

class GeodesicSegment:
    """An arclength-addressable curve of model points.

    ``point_at`` maps the construction parameter t in [0, param_end] to a
    point; the distance from the start is artanh(t) for every family here,
    so arclength addressing is exact (no quadrature). ``arclength_from``
    inverts the parametrization from either endpoint.
    """

    def __init__(self, kind: str, fn, start: Point, end: Point, param_end: float,
                 k: float, sigma: SigmaProfile | None = None):
        self.kind = kind
        self._fn = fn
        self.start = start
        self.end = end
        self.param_end = param_end
        self.k = k
        self.total_length = math.atanh(param_end)
        self.sigma = sigma

    def __repr__(self):
        return (f"GeodesicSegment(kind={self.kind!r}, start={self.start!r}, "
                f"end={self.end!r}, length={self.total_length!r})")

    def point_at(self, t: float) -> Point:
        if not -1e-12 <= t <= self.param_end + 1e-12:
            raise InputError(
                f"parameter {t!r} outside [0, {self.param_end!r}] for {self.kind} segment")
        t = min(max(t, 0.0), self.param_end)
        return self._fn(t)

    def arclength_from(self, endpoint: Point, r: float) -> float:
        """Parameter of the point at distance r from the given endpoint."""
        if not 0.0 <= r <= self.total_length + 1e-12:
            raise InputError(
                f"arclength {r!r} outside [0, {self.total_length!r}]")
        if _close(endpoint, self.start):
            return math.tanh(min(r, self.total_length))
        if _close(endpoint, self.end):
            return math.tanh(max(self.total_length - r, 0.0))
        raise InputError(f"{endpoint!r} is not an endpoint of this segment")

    def point_at_arclength(self, endpoint: Point, r: float) -> Point:
        return self.point_at(self.arclength_from(endpoint, r))

    def midpoint(self) -> Point:
        return self.point_at_arclength(self.start, 0.5 * self.total_length)


def _close(p: Point, q: Point, tol: float = ENDPOINT_TOL) -> bool:
    return max(abs(p[0] - q[0]), abs(p[1] - q[1])) <= tol


def standard_segment(p: Point, q: Point, k: float) -> GeodesicSegment:
    """The explicit two-block curve joining p to q.

    Blockwise c_i(t) = [d*p_i*(1-k^2 p_i q_i) + t(q_i - p_i)] /
    [d*(1-k^2 p_i q_i) + t k^2 p_i (q_i - p_i)] on t in [0, d], where d is
    the larger blockwise Mobius difference of the scaled endpoints. The
    distance from p to the point at parameter t is artanh(t).
    """
    k = hyp.require_modulus(k)
    p = validate_point(p, k)
    q = validate_point(q, k)
    if p == q:
        raise DegenerateSegmentError(f"cannot join {p!r} to itself")
    delta = max(abs(hyp.mobius_diff(k * q[0], k * p[0])),
                abs(hyp.mobius_diff(k * q[1], k * p[1])))

    def fn(t: float) -> Point:
        out = []
        for i in (0, 1):
            d = 1.0 - k * k * p[i] * q[i]
            num = delta * p[i] * d + t * (q[i] - p[i])
            den = delta * d + t * k * k * p[i] * (q[i] - p[i])
            out.append(num / den)
        return (out[0], out[1])

    return GeodesicSegment("standard", fn, p, q, delta, k)


def _gate_sigma(sigma: SigmaProfile, k: float, samples: int) -> None:
    report = validate_sigma(sigma, k, samples=samples)
    if not report.ok:
        raise InvalidSigmaError(
            f"profile violates the corridor (upper by {report.max_upper_violation:.3e}, "
            f"lower by {report.max_lower_violation:.3e}, endpoint gap "
            f"{report.endpoint_gap:.3e}) near t={report.worst_t!r}",
            t=report.worst_t)


def sigma_segment(sigma: SigmaProfile, k: float | None = None, *,
                  samples: int = 2001) -> GeodesicSegment:
    """Curve (sigma(t), (k-t)/(k(1-kt))) from (1, 1) to (1, 0), t in [0, k].

    Arclength from the (1, 1) end is artanh(t), from the (1, 0) end
    artanh((k-t)/(1-kt)); the total length is artanh(k). Admissibility is
    gated on construction (corridor bounds and endpoint values); the
    Lipschitz verdict is not a gate, so oscillatory profiles construct.
    """
    if k is None:
        k = sigma.k
    k = hyp.require_modulus(k)
    if abs(k - sigma.k) > 1e-15:
        raise InputError(f"profile was built for k={sigma.k!r}, not {k!r}")
    _gate_sigma(sigma, k, samples)

    def fn(t: float) -> Point:
        return (float(sigma(t)), lower_bound_near_zero(t, k))

    return GeodesicSegment("sigma", fn, (1.0, 1.0), (1.0, 0.0), k, k, sigma=sigma)


def pulled_back_segment(sigma: SigmaProfile, k: float | None = None, *,
                        samples: int = 2001) -> GeodesicSegment:
    """Chart transport of a sigma curve: (t/k, (1-s)/(1-k^2 s)), s = sigma(t).

    Joins the base point (0, 0) to (1, 0); applying allowable_chart to its
    points reproduces ((k-t)/(k(1-kt)), sigma(t)). With sigma == 1 globally
    it is exactly the one-block segment (t/k, 0). Distance from the base
    point is artanh(t).
    """
    if k is None:
        k = sigma.k
    k = hyp.require_modulus(k)
    if abs(k - sigma.k) > 1e-15:
        raise InputError(f"profile was built for k={sigma.k!r}, not {k!r}")
    _gate_sigma(sigma, k, samples)

    def fn(t: float) -> Point:
        s = float(sigma(t))
        return (t / k, (1.0 - s) / (1.0 - k * k * s))

    return GeodesicSegment("pulled-back", fn, (0.0, 0.0), (1.0, 0.0), k, k,
                           sigma=sigma)


def chart_image(segment: GeodesicSegment) -> GeodesicSegment:
    """The pointwise chart image of a segment, as a segment.

    The chart is an isometry, so the image is again additively parametrized
    with the same lengths; for standard segments the image coincides with
    the standard segment joining the image endpoints.
    """
    from .model import allowable_chart

    k = segment.k

    def fn(t: float) -> Point:
        return allowable_chart(segment.point_at(t), k)

    return GeodesicSegment(segment.kind, fn,
                           allowable_chart(segment.start, k),
                           allowable_chart(segment.end, k),
                           segment.param_end, k, sigma=segment.sigma)


def sigma_pointwise_gap(s1: SigmaProfile, s2: SigmaProfile,
                        samples: int = 129) -> float:
    """Largest |s1(t) - s2(t)| over a shared parameter grid."""
    if abs(s1.k - s2.k) > 1e-15:
        raise InputError("profiles live on different parameter ranges")
    k = s1.k
    return max(abs(float(s1(k * i / (samples - 1))) - float(s2(k * i / (samples - 1))))
               for i in range(samples))
