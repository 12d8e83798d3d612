"""Scalar hyperbolic calculus on the open interval (-1, 1).

Mobius differences, the hyperbolic distance they induce, and the
modulus/length and parameter/arclength conversions used everywhere else.
All quantities are double precision; inputs with |x| >= 1 - 1e-12 are
rejected rather than clamped so parametrization bugs surface early.
"""
import math

from .errors import InputError

# How close to the unit circle an input may get before we refuse it.
EDGE = 1e-12


def _require_interval(x: float, name: str) -> float:
    if not isinstance(x, (int, float)) or isinstance(x, bool):
        raise InputError(f"{name} must be a real number, got {x!r}")
    x = float(x)
    if not math.isfinite(x) or abs(x) >= 1.0 - EDGE:
        raise InputError(f"{name} must lie in (-1, 1) away from the boundary, got {x!r}")
    return x


def mobius_diff(a: float, b: float) -> float:
    """Mobius difference (a - b) / (1 - a*b) of two points of (-1, 1).

    This is the kernel whose absolute value feeds artanh to give the
    hyperbolic distance; it is antisymmetric and vanishes iff a == b.
    """
    a = _require_interval(a, "a")
    b = _require_interval(b, "b")
    return (a - b) / (1.0 - a * b)


def hyp_dist(a: float, b: float) -> float:
    """Hyperbolic distance artanh(|mobius_diff(a, b)|) on (-1, 1)."""
    return math.atanh(abs(mobius_diff(a, b)))


def modulus_from_length(l: float) -> float:
    """Modulus k in (0, 1) whose base separation is the given length l > 0.

    Inverse of length_from_modulus; k = tanh(l).
    """
    if not isinstance(l, (int, float)) or isinstance(l, bool):
        raise InputError(f"length must be a real number, got {l!r}")
    l = float(l)
    if not math.isfinite(l) or l <= 0.0:
        raise InputError(f"length must be a finite positive real, got {l!r}")
    k = math.tanh(l)
    if k >= 1.0 - EDGE:
        raise InputError(f"length {l!r} is too large: modulus would round to 1")
    return k


def length_from_modulus(k: float) -> float:
    """Separation length artanh(k) attached to a modulus k in (0, 1)."""
    k = _require_interval(k, "k")
    if k <= 0.0:
        raise InputError(f"modulus must be positive, got {k!r}")
    return math.atanh(k)


def require_modulus(k: float) -> float:
    """Validate and return a modulus k with 0 < k < 1."""
    k = _require_interval(k, "k")
    if k <= 0.0:
        raise InputError(f"modulus must lie in (0, 1), got {k!r}")
    return k


def param_from_arclength(r: float) -> float:
    """Curve parameter t = tanh(r) reaching distance r >= 0 from an endpoint."""
    if not isinstance(r, (int, float)) or isinstance(r, bool):
        raise InputError(f"arclength must be a real number, got {r!r}")
    r = float(r)
    if not math.isfinite(r) or r < 0.0:
        raise InputError(f"arclength must be a finite nonnegative real, got {r!r}")
    return math.tanh(r)


def arclength_from_param(t: float) -> float:
    """Distance artanh(t) from the endpoint at parameter t in [0, 1)."""
    if not 0.0 <= t < 1.0:
        raise InputError(f"parameter must lie in [0, 1), got {t!r}")
    return math.atanh(t)
