"""Initial data on the grid."""

from __future__ import annotations

import numpy as np

from .grid import GridFunction, nodes


def indicator(a: float, b: float, M: int) -> GridFunction:
    """chi_[a, b], closed at both ends (node values at a and b are 1)."""
    if not 0.0 <= a < b <= np.pi:
        raise ValueError(f"indicator bounds must satisfy 0 <= a < b <= pi, got {a}, {b}")
    x = nodes(M)
    eps = 1e-12
    return GridFunction(((x >= a - eps) & (x <= b + eps)).astype(float))


def sine(j: int, M: int) -> GridFunction:
    """sin(jx) (not normalised)."""
    return GridFunction(np.sin(j * nodes(M)))


def poly(M: int) -> GridFunction:
    """x (pi - x)."""
    x = nodes(M)
    return GridFunction(x * (np.pi - x))


def from_csv(path, M: int) -> GridFunction:
    """Rows ``x,re,im`` interpolated linearly onto the grid."""
    data = np.loadtxt(path, delimiter=",", ndmin=2, comments="#")
    if data.shape[1] != 3:
        raise ValueError(f"{path}: expected three columns x,re,im")
    x = nodes(M)
    xs = data[:, 0]
    if xs[0] > 1e-12 or xs[-1] < np.pi - 1e-12:
        raise ValueError(f"{path}: samples must cover [0, pi]")
    return GridFunction(np.interp(x, xs, data[:, 1]) + 1j * np.interp(x, xs, data[:, 2]))


def step_datum(M: int) -> GridFunction:
    """chi_[3 pi / 8, 5 pi / 8], the datum of the Mathieu experiments."""
    return indicator(3 * np.pi / 8, 5 * np.pi / 8, M)
