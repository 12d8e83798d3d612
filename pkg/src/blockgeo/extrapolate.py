"""Limit extrapolation for sequences sampled on a decreasing schedule."""
from .errors import InputError


def limit_at_zero(ts, fs, power: int = 2) -> float:
    """Polynomial extrapolation of f(t) to t = 0.

    Assumes f(t) = c0 + c1*t^power + c2*t^(2*power) + ... and runs Neville's
    scheme in the variable x = t^power. For a geometric schedule this is
    classical Richardson extrapolation with error-order steps of ``power``.
    """
    if len(ts) != len(fs):
        raise InputError("ts and fs must have equal length")
    if len(ts) < 2:
        raise InputError("need at least two samples to extrapolate")
    xs = [t ** power for t in ts]
    if len(set(xs)) != len(xs):
        raise InputError("schedule values must be distinct")
    table = list(fs)
    n = len(table)
    for m in range(1, n):
        nxt = []
        for i in range(n - m):
            num = xs[i + m] * table[i] - xs[i] * table[i + 1]
            nxt.append(num / (xs[i + m] - xs[i]))
        table = nxt
    return table[0]
