"""Independent reference computations for the test suite.

Everything here goes through the coordinate map psi_i = artanh(k * c_i),
under which the model is plainly a planar region with the sup metric: no
Mobius arithmetic, no package code. Frozen constants were produced by these
maps at high precision and are pinned as literals in the tests.
"""
import math

K_GRID = (0.3, 0.5, 0.7)
FRACTIONS = (-1.0, -0.5, 0.0, 0.5, 1.0)


def psi(p, k):
    return (math.atanh(k * p[0]), math.atanh(k * p[1]))


def point_from_psi(a, k):
    return (math.tanh(a[0]) / k, math.tanh(a[1]) / k)


def sup_distance(p, q, k):
    a, b = psi(p, k), psi(q, k)
    return max(abs(a[0] - b[0]), abs(a[1] - b[1]))


def chart_psi(p, k):
    """The allowable chart is the point reflection through (L/2, L/2)."""
    L = math.atanh(k)
    a = psi(p, k)
    return (L - a[0], L - a[1])


def segment_psi_offsets(p, q, k):
    """Blockwise rates w_i of a standard segment in psi coordinates.

    The segment from p at parameter t sits at psi_i(p) + artanh(w_i * t),
    with w_i the blockwise Mobius difference of the scaled endpoints over
    the larger of the two.
    """
    def mob(a, b):
        return (a - b) / (1.0 - a * b)

    m1 = mob(k * q[0], k * p[0])
    m2 = mob(k * q[1], k * p[1])
    delta = max(abs(m1), abs(m2))
    return delta, (m1 / delta, m2 / delta)
