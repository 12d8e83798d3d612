"""The two-block coefficient model and its exact distance.

A point is a pair (c1, c2) of real block coefficients relative to a fixed
modulus k in (0, 1); it is admissible while |c_i|*k < 1. The distance takes
the hyperbolic distance between k*p_i and k*q_i in each block and keeps the
larger one. Extremality of two-block compositions is an axiom of the model,
so this value is exact rather than an infimum to be searched.

Useful marked points: the base point (0, 0), the reference point (1, 1) at
distance artanh(k) from it, and the one-block points (1, 0) and (0, 1).
"""
import math
from dataclasses import dataclass

from . import hyp
from .errors import InputError
from .extrapolate import limit_at_zero

Point = tuple[float, float]

BASE: Point = (0.0, 0.0)
MU: Point = (1.0, 1.0)
MU1: Point = (1.0, 0.0)
MU2: Point = (0.0, 1.0)


def validate_point(p, k: float) -> Point:
    """Check the admissibility invariant |c_i|*k < 1 and return p as a tuple."""
    k = hyp.require_modulus(k)
    try:
        c1, c2 = p
    except (TypeError, ValueError):
        raise InputError(f"a point must be a pair of reals, got {p!r}") from None
    out = []
    for name, c in (("c1", c1), ("c2", c2)):
        if not isinstance(c, (int, float)) or isinstance(c, bool):
            raise InputError(f"{name} must be a real number, got {c!r}")
        c = float(c)
        if not math.isfinite(c) or abs(c) * k >= 1.0 - hyp.EDGE:
            raise InputError(
                f"{name}={c!r} breaks the invariant |c|*k < 1 for k={k!r}")
        out.append(c)
    return (out[0], out[1])


def distance(p: Point, q: Point, k: float) -> float:
    """Exact distance between two model points under modulus k.

    Per block this is artanh of the Mobius difference of k*p_i and k*q_i;
    the blockwise maximum realizes the metric.
    """
    p = validate_point(p, k)
    q = validate_point(q, k)
    m = max(abs(hyp.mobius_diff(k * p[0], k * q[0])),
            abs(hyp.mobius_diff(k * p[1], k * q[1])))
    return math.atanh(m)


def h_functional(v, k: float) -> float:
    """Norm of a tangent direction: k * max(|v1|, |v2|).

    Positively homogeneous of degree one; this is the infinitesimal form of
    the distance (see variation_slope).
    """
    k = hyp.require_modulus(k)
    try:
        v1, v2 = v
    except (TypeError, ValueError):
        raise InputError(f"a direction must be a pair of reals, got {v!r}") from None
    for name, c in (("v1", v1), ("v2", v2)):
        if not isinstance(c, (int, float)) or isinstance(c, bool) or not math.isfinite(float(c)):
            raise InputError(f"{name} must be a finite real, got {c!r}")
    return k * max(abs(float(v1)), abs(float(v2)))


def allowable_chart(p: Point, k: float) -> Point:
    """Coordinates of the same point in the chart based at (1, 1).

    Blockwise x -> (1 - x) / (1 - k^2 x). The map is an involution and an
    isometry for distance; it sends (1, 1) to the base point and back.
    Negative coefficients in the image are legal.
    """
    p = validate_point(p, k)
    return ((1.0 - p[0]) / (1.0 - k * k * p[0]),
            (1.0 - p[1]) / (1.0 - k * k * p[1]))


@dataclass(frozen=True)
class VariationSlope:
    """Finite-difference slope estimates of t -> distance(t*v, t*w)/t and
    their extrapolated limit at t = 0."""
    estimates: tuple[tuple[float, float], ...]
    limit: float


def variation_slope(v, w, k: float, t_schedule=None) -> VariationSlope:
    """First-order variation of the distance along two scaled directions.

    Evaluates distance((t*v1, t*v2), (t*w1, t*w2))/t over a decreasing
    schedule and extrapolates to zero assuming an even error expansion.
    The limit equals h_functional(v - w, k).
    """
    k = hyp.require_modulus(k)
    if t_schedule is None:
        t_schedule = [1e-2 * 0.5 ** j for j in range(6)]
    ts = [float(t) for t in t_schedule]
    if not ts or any(not math.isfinite(t) or t <= 0 for t in ts):
        raise InputError(f"t_schedule must be nonempty positive reals, got {t_schedule!r}")
    if any(b >= a for a, b in zip(ts, ts[1:])):
        raise InputError("t_schedule must be strictly decreasing")
    quotients = []
    for t in ts:
        p = (t * v[0], t * v[1])
        q = (t * w[0], t * w[1])
        quotients.append(distance(p, q, k) / t)
    limit = quotients[0] if len(ts) == 1 else limit_at_zero(ts, quotients, power=2)
    return VariationSlope(tuple(zip(ts, quotients)), limit)
