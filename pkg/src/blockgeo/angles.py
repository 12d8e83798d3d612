"""Chord-ratio angles between segments sharing a vertex.

The measured quantity is q(r) = tau(a(r), b(r)) / r where a(r), b(r) are the
points at arclength r from the shared vertex along each segment. When q(r)
converges as r -> 0 the comparison angle is theta = 2*arcsin(q*/2). The
engine samples a geometric schedule r_j = r0 * ratio^j and stops at the
first window of consecutive ratios whose spread is below the convergence
tolerance; stopping early matters because for very small r the ratio picks
up floating-point noise of order eps/r and a full 30-step schedule would
drown a genuine limit in it. Divergence is only declared when the schedule
is exhausted and the last two windows both oscillate beyond the coarser
tolerance; anything else is inconclusive.

Closed forms cover the named vertices: at (1, 1) against the diagonal
segment the limit is 1 + k*sigma'(0)/(1-k^2). At (1, 0) the natural
reference is the standard segment joining (1, 0) to (0, 1), whose second
block moves at unit rate like the sigma curve's; against it the limit is
|1 - k*sigma'(k)| on the whole admissible range. (Against the segment from
the base point to (1, 0) itself, whose second block is frozen at zero, the
measured ratio saturates at max(|1 - k*sigma'(k)|, 1); the numeric engine
reproduces that saturation honestly, so the closed form here names the
moving reference instead.)
"""
import math
from dataclasses import dataclass

from . import hyp
from .errors import ExistenceUnknownError, InputError
from .geodesics import ENDPOINT_TOL, GeodesicSegment, SigmaProfile, _close
from .model import Point, distance, h_functional


@dataclass(frozen=True)
class AngleSchedule:
    """Geometric radius schedule r_j = r0 * ratio^j, j = 0..steps-1."""
    r0: float = 1e-2
    ratio: float = 0.5
    steps: int = 30

    def validate(self) -> "AngleSchedule":
        if not 0.0 < self.r0 < 1.0:
            raise InputError(f"r0 must lie in (0, 1), got {self.r0!r}")
        if not 0.0 < self.ratio < 1.0:
            raise InputError(f"ratio must lie in (0, 1), got {self.ratio!r}")
        if self.steps < 2:
            raise InputError(f"steps must be at least 2, got {self.steps!r}")
        return self

    def radii(self):
        return [self.r0 * self.ratio ** j for j in range(self.steps)]


@dataclass(frozen=True)
class AngleTolerances:
    """Window verdict thresholds for the chord-ratio engine.

    A window of ``window`` consecutive ratios with spread at most
    ``convergence`` certifies a limit; two final windows with spread at
    least ``oscillation`` certify divergence.
    """
    convergence: float = 1e-5
    oscillation: float = 1e-2
    window: int = 5

    def validate(self, steps: int) -> "AngleTolerances":
        if self.convergence <= 0.0 or self.oscillation <= self.convergence:
            raise InputError(
                f"need 0 < convergence < oscillation, got "
                f"{self.convergence!r}, {self.oscillation!r}")
        if self.window < 2:
            raise InputError(f"window must be at least 2, got {self.window!r}")
        if steps < 2 * self.window:
            raise InputError(
                f"steps={steps!r} too short for two windows of {self.window!r}")
        return self


@dataclass(frozen=True)
class AngleResult:
    """Outcome of a chord-ratio measurement.

    ``diagnostics`` holds (r, ratio) pairs with strictly decreasing r, one
    per evaluated step. ``limit_value`` is the certified chord ratio when
    the verdict is "exists"; ``oscillation_band`` is the (min, max) of the
    final window when it is "does-not-exist". ``clamped`` flags a limit
    beyond the representable range 2*sin of anything, i.e. q/2 > 1.
    """
    verdict: str
    theta: float | None
    limit_value: float | None
    diagnostics: tuple[tuple[float, float], ...]
    oscillation_band: tuple[float, float] | None
    steps_used: int
    clamped: bool


def _theta_from_ratio(q: float) -> tuple[float, bool]:
    half = 0.5 * q
    clamped = half > 1.0 + 1e-9
    return 2.0 * math.asin(min(max(half, 0.0), 1.0)), clamped


def limit_of_ratios(values, radii, tolerances: AngleTolerances):
    """Window logic shared by the angle engine and the derivative probe.

    ``values`` are consumed lazily (a generator) so early convergence skips
    the noisy tail of the schedule entirely. Returns (verdict, certified
    value or None, band or None, diagnostics, steps_used).
    """
    w = tolerances.window
    qs, diag = [], []
    for r, q in zip(radii, values):
        qs.append(q)
        diag.append((r, q))
        if len(qs) >= w:
            win = qs[-w:]
            if max(win) - min(win) <= tolerances.convergence:
                return "exists", win[-1], None, tuple(diag), len(qs)
    last = qs[-w:]
    prev = qs[-2 * w:-w]
    sp_last = max(last) - min(last)
    sp_prev = max(prev) - min(prev)
    if sp_last >= tolerances.oscillation and sp_prev >= tolerances.oscillation:
        return ("does-not-exist", None, (min(last), max(last)),
                tuple(diag), len(qs))
    return "inconclusive", None, None, tuple(diag), len(qs)


def _shared_vertex(a: GeodesicSegment, b: GeodesicSegment) -> Point:
    hits = []
    for pa in (a.start, a.end):
        for pb in (b.start, b.end):
            if _close(pa, pb) and not any(_close(pa, h) for h in hits):
                hits.append(pa)
    if not hits:
        raise InputError("segments share no endpoint; pass the vertex explicitly")
    if len(hits) > 1:
        raise InputError(
            f"segments share several endpoints {hits!r}; pass the vertex explicitly")
    return hits[0]


def angle_numeric(seg_a: GeodesicSegment, seg_b: GeodesicSegment,
                  vertex: Point | None = None, *,
                  schedule: AngleSchedule | None = None,
                  tolerances: AngleTolerances | None = None) -> AngleResult:
    """Measure the chord-ratio angle between two segments at a shared vertex.

    With ``vertex`` omitted the unique shared endpoint is used. The whole
    schedule must fit inside both segments, so r0 has to be smaller than
    either length.
    """
    schedule = (schedule or AngleSchedule()).validate()
    tolerances = (tolerances or AngleTolerances()).validate(schedule.steps)
    if abs(seg_a.k - seg_b.k) > 1e-15:
        raise InputError(
            f"segments live at different moduli {seg_a.k!r} and {seg_b.k!r}")
    k = seg_a.k
    if vertex is None:
        vertex = _shared_vertex(seg_a, seg_b)
    else:
        vertex = (float(vertex[0]), float(vertex[1]))
        for seg, name in ((seg_a, "first"), (seg_b, "second")):
            if not (_close(vertex, seg.start) or _close(vertex, seg.end)):
                raise InputError(
                    f"{vertex!r} is not an endpoint of the {name} segment "
                    f"(tolerance {ENDPOINT_TOL})")
    shortest = min(seg_a.total_length, seg_b.total_length)
    if schedule.r0 >= shortest:
        raise InputError(
            f"r0={schedule.r0!r} does not fit inside both segments "
            f"(shortest length {shortest!r}); pass a smaller schedule")
    radii = schedule.radii()

    def ratios():
        for r in radii:
            pa = seg_a.point_at_arclength(vertex, r)
            pb = seg_b.point_at_arclength(vertex, r)
            yield distance(pa, pb, k) / r

    verdict, q, band, diag, used = limit_of_ratios(ratios(), radii, tolerances)
    theta, clamped = (None, False) if q is None else _theta_from_ratio(q)
    return AngleResult(verdict=verdict, theta=theta, limit_value=q,
                       diagnostics=diag, oscillation_band=band,
                       steps_used=used, clamped=clamped)


def angle_at_mu_closed(sigma: SigmaProfile) -> float:
    """Closed-form angle at (1, 1) between a sigma curve and the diagonal
    segment from the base point: 2*sin(theta/2) = 1 + k*sigma'(0)/(1-k^2)."""
    if sigma.d0 is None:
        raise ExistenceUnknownError(
            "profile declares no derivative at 0; the closed form needs one "
            "(use angle_numeric to probe for oscillation)")
    k = sigma.k
    q = 1.0 + k * sigma.d0 / (1.0 - k * k)
    return _theta_from_ratio(q)[0]


def angle_at_mu1_closed(sigma: SigmaProfile) -> float:
    """Closed-form angle at (1, 0) between a sigma curve and the standard
    segment to (0, 1): 2*sin(theta/2) = |1 - k*sigma'(k)|.

    The reference segment's second block moves at the same unit rate as the
    sigma curve's, which is what makes the formula exact on the whole
    admissible range of sigma'(k); see the module docstring for why the
    segment to the base point is not the reference here.
    """
    if sigma.dk is None:
        raise ExistenceUnknownError(
            "profile declares no derivative at k; the closed form needs one "
            "(use angle_numeric to probe for oscillation)")
    q = abs(1.0 - sigma.k * sigma.dk)
    return _theta_from_ratio(q)[0]


def angle_base_standard(v: Point, w: Point, k: float) -> float:
    """Angle at a common start between standard segments with directions v, w.

    Directions are normalized by the sup functional h; the chord-ratio limit
    is then h(v/h(v) - w/h(w)), exactly.
    """
    k = hyp.require_modulus(k)
    hv, hw = h_functional(v, k), h_functional(w, k)
    if hv == 0.0 or hw == 0.0:
        raise InputError("directions must be nonzero")
    q = h_functional((v[0] / hv - w[0] / hw, v[1] / hv - w[1] / hw), k)
    return _theta_from_ratio(q)[0]


@dataclass(frozen=True)
class DerivativeProbe:
    """One-sided difference-quotient verdict at an endpoint of a profile."""
    verdict: str
    estimate: float | None
    declared: float | None
    diagnostics: tuple[tuple[float, float], ...]
    oscillation_band: tuple[float, float] | None
    steps_used: int


def derivative_probe(sigma: SigmaProfile, endpoint: float, *,
                     schedule: AngleSchedule | None = None,
                     tolerances: AngleTolerances | None = None) -> DerivativeProbe:
    """Probe sigma'(0) or sigma'(k) by one-sided difference quotients.

    ``endpoint`` is 0 or k (within 1e-12). The same window logic as the
    angle engine applies, so an oscillatory profile earns a does-not-exist
    verdict rather than a spurious estimate.
    """
    schedule = (schedule or AngleSchedule()).validate()
    tolerances = (tolerances or AngleTolerances()).validate(schedule.steps)
    k = sigma.k
    if abs(endpoint) <= 1e-12:
        at_zero, declared = True, sigma.d0
    elif abs(endpoint - k) <= 1e-12:
        at_zero, declared = False, sigma.dk
    else:
        raise InputError(f"endpoint must be 0 or {k!r}, got {endpoint!r}")
    if schedule.r0 >= k:
        raise InputError(
            f"r0={schedule.r0!r} does not fit inside [0, {k!r}]")
    radii = schedule.radii()

    def quotients():
        for h in radii:
            if at_zero:
                yield (float(sigma(h)) - 1.0) / h
            else:
                yield (float(sigma(k - h)) - 1.0) / (-h)

    verdict, est, band, diag, used = limit_of_ratios(quotients(), radii, tolerances)
    return DerivativeProbe(verdict=verdict, estimate=est, declared=declared,
                           diagnostics=diag, oscillation_band=band,
                           steps_used=used)
