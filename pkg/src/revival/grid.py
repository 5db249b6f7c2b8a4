"""Uniform grids on [0, pi], grid functions and quadrature."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np


class GridMismatchError(ValueError):
    """Two grid functions live on grids with different node counts."""


def nodes(M: int) -> np.ndarray:
    """The M + 1 uniform nodes i*pi/M."""
    return np.linspace(0.0, np.pi, M + 1)


@lru_cache(maxsize=32)
def _simpson_weights(M: int) -> np.ndarray:
    if M < 2 or M % 2:
        raise ValueError(f"Simpson quadrature needs an even number of intervals, got {M}")
    w = np.full(M + 1, 2.0)
    w[1::2] = 4.0
    w[0] = w[-1] = 1.0
    w *= np.pi / M / 3.0
    w.setflags(write=False)
    return w


def simpson_weights(M: int) -> np.ndarray:
    return _simpson_weights(int(M))


def trapezoid_weights(M: int) -> np.ndarray:
    w = np.full(M + 1, np.pi / M)
    w[0] = w[-1] = 0.5 * np.pi / M
    return w


@dataclass(frozen=True, eq=False)
class GridFunction:
    """Complex samples of a function at the nodes i*pi/M, i = 0..M."""

    values: np.ndarray

    def __post_init__(self):
        v = np.asarray(self.values, dtype=complex)
        if v.ndim != 1 or v.size < 2:
            raise ValueError("GridFunction needs a 1-d array of at least two samples")
        object.__setattr__(self, "values", v)

    @classmethod
    def from_callable(cls, func, M: int) -> "GridFunction":
        return cls(np.asarray(func(nodes(M)), dtype=complex))

    @property
    def M(self) -> int:
        return self.values.size - 1

    @property
    def nodes(self) -> int:
        return self.values.size

    @property
    def x(self) -> np.ndarray:
        return nodes(self.M)

    def _check(self, other: "GridFunction") -> None:
        if other.values.size != self.values.size:
            raise GridMismatchError(
                f"grid functions have {self.values.size} and {other.values.size} nodes"
            )

    def __add__(self, other):
        if isinstance(other, GridFunction):
            self._check(other)
            return GridFunction(self.values + other.values)
        return GridFunction(self.values + other)

    def __sub__(self, other):
        if isinstance(other, GridFunction):
            self._check(other)
            return GridFunction(self.values - other.values)
        return GridFunction(self.values - other)

    def __mul__(self, other):
        if isinstance(other, GridFunction):
            self._check(other)
            return GridFunction(self.values * other.values)
        return GridFunction(self.values * other)

    __radd__ = __add__
    __rmul__ = __mul__

    def __neg__(self):
        return GridFunction(-self.values)

    def conj(self) -> "GridFunction":
        return GridFunction(np.conj(self.values))

    def sup(self) -> float:
        return float(np.max(np.abs(self.values)))

    def l2(self) -> float:
        return l2_norm(self)


def _values(f) -> np.ndarray:
    return f.values if isinstance(f, GridFunction) else np.asarray(f, dtype=complex)


def inner(f, g) -> complex:
    """<f, g> = int_0^pi f conj(g) dx by composite Simpson."""
    fv, gv = _values(f), _values(g)
    if fv.size != gv.size:
        raise GridMismatchError(f"grid functions have {fv.size} and {gv.size} nodes")
    return complex(np.sum(simpson_weights(fv.size - 1) * fv * np.conj(gv)))


def l2_norm(f) -> float:
    fv = _values(f)
    return float(np.sqrt(np.sum(simpson_weights(fv.size - 1) * np.abs(fv) ** 2)))


def sine_mode(j: int, M: int) -> GridFunction:
    """The orthonormal Dirichlet mode d_j = sqrt(2/pi) sin(jx)."""
    return GridFunction(np.sqrt(2.0 / np.pi) * np.sin(j * nodes(M)))
