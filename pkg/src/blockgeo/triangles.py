"""Triangle synthesis with prescribed angles and the curvature probe.

A synthesized triangle always has the three named vertices

    base = (0, 0),   mu = (1, 1),   mu1 = (1, 0)

and three sides of the common length l = artanh(k): the diagonal standard
segment base-mu, a sigma curve mu-mu1, and a pulled-back curve base-mu1.
The prescribed angles are hit by inverting the closed forms for the end
derivatives of the two profiles; the third side's terminal derivative is
pinned to the floor slope 1/k, which makes its curve meet the mu1 corner
tangentially to the sigma family's own floor and leaves the measured corner
angle entirely to the sigma curve's terminal derivative.

Every angle in the report is measured twice: by the closed form used for
synthesis and by the numeric chord-ratio engine on the constructed curves.

The curvature probe builds the midpoint-pinned configuration: the midpoints
of the two sides meeting at mu sit at distance l from each other, equal to
the full base rather than the base's half, so the comparison inequality
that negative curvature would impose fails by the largest possible margin.
"""
import math
import random
from dataclasses import dataclass

from . import hyp
from .angles import (AngleResult, AngleSchedule, AngleTolerances,
                     angle_numeric)
from .errors import ConstructionError, InputError
from .geodesics import (GeodesicSegment, SigmaProfile, corridor_apex,
                        lower_bound_near_zero, max_slope_at_k,
                        max_slope_at_zero, pulled_back_segment,
                        sigma_midpoint_pinned, sigma_pointwise_gap,
                        sigma_prescribed, sigma_segment, standard_segment)
from .model import BASE, MU, MU1, Point, distance

VERTEX_ORDER = ("base", "mu", "mu1")
VERTICES = {"base": BASE, "mu": MU, "mu1": MU1}


@dataclass(frozen=True)
class TriangleSpec:
    """Target data: common side length l and angles at (base, mu, mu1)."""
    l: float
    thetas: tuple[float, float, float]
    family_seed: int | str = 0

    def validate(self) -> "TriangleSpec":
        if not isinstance(self.l, (int, float)) or not 0.0 < float(self.l) < float("inf"):
            raise InputError(f"side length must be a positive real, got {self.l!r}")
        if len(self.thetas) != 3:
            raise InputError("exactly three target angles are required")
        for name, th in zip(VERTEX_ORDER, self.thetas):
            if not isinstance(th, (int, float)) or not 0.0 <= float(th) <= math.pi:
                raise InputError(
                    f"target angle at {name} must lie in [0, pi], got {th!r}")
        return self

    @property
    def k(self) -> float:
        return hyp.modulus_from_length(float(self.l))


@dataclass(frozen=True)
class VertexAngle:
    """Target, closed-form, and measured angle at one vertex."""
    vertex: Point
    target: float
    closed: float
    numeric: AngleResult

    @property
    def deviation(self) -> float | None:
        if self.numeric.theta is None:
            return None
        return abs(self.numeric.theta - self.target)


@dataclass
class TriangleReport:
    spec: TriangleSpec
    k: float
    vertices: dict[str, Point]
    sides: dict[str, GeodesicSegment]
    side_lengths: tuple[float, float, float]
    angles: dict[str, VertexAngle]
    family_index: int | None = None

    @property
    def angle_sum_numeric(self) -> float | None:
        thetas = [self.angles[v].numeric.theta for v in VERTEX_ORDER]
        if any(t is None for t in thetas):
            return None
        return sum(thetas)

    @property
    def angle_sum_closed(self) -> float:
        return sum(self.angles[v].closed for v in VERTEX_ORDER)

    @property
    def max_angle_deviation(self) -> float | None:
        devs = [self.angles[v].deviation for v in VERTEX_ORDER]
        if any(d is None for d in devs):
            return None
        return max(devs)


def _slope_at_zero_for(theta: float, k: float) -> float:
    """Invert 2*sin(theta/2) = 1 + k*d0/(1-k^2) for d0."""
    return max_slope_at_zero(k) * (2.0 * math.sin(0.5 * theta) - 1.0)


def _slope_at_k_for(theta: float, k: float) -> float:
    """Invert 2*sin(theta/2) = 1 - k*dk for dk (the non-saturating branch)."""
    return (1.0 - 2.0 * math.sin(0.5 * theta)) / k


def synthesize(spec: TriangleSpec, *, knots=(), family_index: int | None = None,
               schedule: AngleSchedule | None = None,
               tolerances: AngleTolerances | None = None) -> TriangleReport:
    """Build the triangle for a spec and measure all three corners.

    ``knots`` perturbs the sigma side's interior (used by synthesize_family
    to make members distinct without touching any measured quantity).
    """
    spec = spec.validate()
    k = spec.k
    th_base, th_mu, th_mu1 = (float(t) for t in spec.thetas)

    sig_beta = sigma_prescribed(_slope_at_zero_for(th_mu, k),
                                _slope_at_k_for(th_mu1, k), k, knots=knots)
    sig_gamma = sigma_prescribed(_slope_at_zero_for(th_base, k),
                                 max_slope_at_k(k), k)

    alpha = standard_segment(BASE, MU, k)
    beta = sigma_segment(sig_beta, k)
    gamma = pulled_back_segment(sig_gamma, k)
    sides = {"alpha": alpha, "beta": beta, "gamma": gamma}

    pairs = {"base": (alpha, gamma), "mu": (alpha, beta), "mu1": (beta, gamma)}
    closed = {"base": th_base, "mu": th_mu, "mu1": th_mu1}
    angles = {}
    for name in VERTEX_ORDER:
        a, b = pairs[name]
        res = angle_numeric(a, b, VERTICES[name], schedule=schedule,
                            tolerances=tolerances)
        angles[name] = VertexAngle(vertex=VERTICES[name],
                                   target=closed[name],
                                   closed=closed[name], numeric=res)

    lengths = tuple(distance(s.start, s.end, k)
                    for s in (alpha, beta, gamma))
    return TriangleReport(spec=spec, k=k, vertices=dict(VERTICES),
                          sides=sides, side_lengths=lengths, angles=angles,
                          family_index=family_index)


def synthesize_family(spec: TriangleSpec, n: int = 5, *,
                      min_gap: float = 1e-6,
                      schedule: AngleSchedule | None = None,
                      tolerances: AngleTolerances | None = None) -> list[TriangleReport]:
    """Build n distinct triangles with identical measured data.

    Members differ by a seeded interior knot on the sigma side (one member
    stays plain); pairwise profile separation below ``min_gap`` is treated
    as a construction failure rather than silently returning duplicates.
    """
    if n < 1:
        raise InputError(f"family size must be positive, got {n!r}")
    spec = spec.validate()
    reports = []
    for i in range(n):
        rng = random.Random(f"{spec.family_seed}:{i}")
        off = 0.01 * (i - (n - 1) / 2) + 0.0005 * rng.uniform(-1.0, 1.0)
        pos = 0.5 + 0.1 * rng.uniform(-1.0, 1.0)
        knots = ((pos, off),) if i != (n - 1) // 2 else ()
        reports.append(synthesize(spec, knots=knots, family_index=i,
                                  schedule=schedule, tolerances=tolerances))
    for i in range(n):
        for j in range(i + 1, n):
            gap = sigma_pointwise_gap(reports[i].sides["beta"].sigma,
                                      reports[j].sides["beta"].sigma)
            if gap <= min_gap:
                raise ConstructionError(
                    f"family members {i} and {j} are too close "
                    f"(sigma gap {gap:.3e} <= {min_gap:.1e})",
                    suggestion="use a different family_seed or fewer members")
    return reports


@dataclass(frozen=True)
class CurvatureProbe:
    """Midpoint comparison data for the pinned configuration at modulus k.

    ``m`` is the distance between the midpoints of the two sides meeting at
    (1, 1) and ``base`` the length of the opposite side. Negative curvature
    in the comparison sense would force m <= base/2; here m equals the full
    base, so the verdict is always a violation.
    """
    k: float
    l: float
    t_apex: float
    sigma_at_apex: float
    midpoint_beta: Point
    midpoint_alpha: Point
    midpoint_arclengths: tuple[float, float]
    m: float
    base: float
    ratio_base_over_m: float
    ratio_base_over_2m: float
    negative_curvature_violated: bool


def curvature_probe(k: float) -> CurvatureProbe:
    """Evaluate the midpoint comparison for the pinned sigma triangle."""
    k = hyp.require_modulus(k)
    l = hyp.length_from_modulus(k)
    t0 = corridor_apex(k)
    sigma = sigma_midpoint_pinned(k)
    s0 = float(sigma(t0))
    mid_beta = (s0, lower_bound_near_zero(t0, k))
    mid_alpha = (t0 / k, t0 / k)
    arcs = (distance(MU, mid_beta, k), distance(MU, mid_alpha, k))
    m = distance(mid_beta, mid_alpha, k)
    base = distance(BASE, MU1, k)
    return CurvatureProbe(
        k=k, l=l, t_apex=t0, sigma_at_apex=s0,
        midpoint_beta=mid_beta, midpoint_alpha=mid_alpha,
        midpoint_arclengths=arcs, m=m, base=base,
        ratio_base_over_m=base / m, ratio_base_over_2m=base / (2.0 * m),
        negative_curvature_violated=m > 0.5 * base + 1e-9)
