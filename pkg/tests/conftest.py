import pytest

from blockgeo import max_slope_at_k, max_slope_at_zero, sigma_prescribed

from oracles import FRACTIONS, K_GRID


@pytest.fixture(scope="session")
def prescribed_grid():
    """All prescribed profiles with end slopes on the 5 x 5 fraction grid,
    for every modulus in the standard grid; built once per session."""
    grid = {}
    for k in K_GRID:
        mx0, mxk = max_slope_at_zero(k), max_slope_at_k(k)
        for f0 in FRACTIONS:
            for fk in FRACTIONS:
                grid[(k, f0, fk)] = sigma_prescribed(f0 * mx0, fk * mxk, k)
    return grid
