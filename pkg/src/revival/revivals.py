"""The finite Gauss-sum superposition of shifted copies of the initial datum.

At t = 2 pi p / q the free Dirichlet evolution of f is

    (1/q) sum_{k,m=0}^{q-1} exp(2 pi i (m k - m^2 p) / q) f_odd(x - 2 pi k / q),

where f_odd is the odd 2 pi-periodic extension of f.  With a potential of mean
<V> the whole sum picks up the factor exp(-2 pi i <V> p / q).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .grid import GridFunction

_EXACT = {Fraction(0): 1.0 + 0j, Fraction(1, 4): 1j, Fraction(1, 2): -1.0 + 0j, Fraction(3, 4): -1j}


@dataclass(frozen=True)
class RationalTime:
    """t = 2 pi p / q, stored in lowest terms."""

    p: int
    q: int

    def __post_init__(self):
        p, q = int(self.p), int(self.q)
        if p < 1 or q < 1:
            raise ValueError("rational times need positive p and q")
        g = math.gcd(p, q)
        object.__setattr__(self, "p", p // g)
        object.__setattr__(self, "q", q // g)

    @property
    def value(self) -> float:
        return 2.0 * math.pi * self.p / self.q

    def __float__(self) -> float:
        return self.value

    def __str__(self) -> str:
        return f"2pi*{self.p}/{self.q}"


@lru_cache(maxsize=256)
def _roots(q: int) -> np.ndarray:
    r = np.exp(2j * np.pi * np.arange(q) / q)
    for frac, value in _EXACT.items():
        if (frac * q).denominator == 1:
            r[int(frac * q)] = value
    r.setflags(write=False)
    return r


def root_of_unity(num: int, den: int) -> complex:
    """exp(2 pi i num / den), with num reduced mod den before exponentiating."""
    return complex(_roots(den)[num % den])


def gauss_sum(m: int, j: int, q: int) -> complex:
    """sum_{k=0}^{q-1} exp(2 pi i (m - j) k / q), evaluated numerically."""
    if q < 1:
        raise ValueError("q must be positive")
    k = np.arange(q)
    return complex(_roots(q)[((m - j) * k) % q].sum())


def gauss_indicator(m: int, j: int, q: int) -> int:
    """q when j = m (mod q), else 0; the rounded value of ``gauss_sum``."""
    return int(round(gauss_sum(m, j, q).real))


def shift_coefficients(t: RationalTime) -> np.ndarray:
    """a_k = (1/q) sum_m exp(2 pi i (m k - m^2 p) / q) for k = 0..q-1."""
    p, q = t.p, t.q
    m = np.arange(q)
    expo = (np.multiply.outer(np.arange(q), m) - m * m * p) % q
    return _roots(q)[expo].sum(axis=1) / q


def _reduce(x) -> np.ndarray:
    # representative in (-pi, pi]
    return np.pi - np.mod(np.pi - np.asarray(x, dtype=float), 2.0 * np.pi)


def odd_periodic_extension(f: GridFunction, x):
    """f_odd(x) for the odd 2 pi-periodic extension of the grid function f.

    Node values are returned exactly; between nodes f is interpolated linearly.
    The point x = pi (mod 2 pi) takes the value f(pi).
    """
    xs = _reduce(x)
    scalar = xs.ndim == 0
    xs = np.atleast_1d(xs)
    M = f.M
    u = np.abs(xs) * M / np.pi
    iu = np.rint(u)
    on_node = np.abs(u - iu) < 1e-9
    vals = np.empty(xs.shape, dtype=complex)
    vals[on_node] = f.values[iu[on_node].astype(int)]
    off = ~on_node
    if np.any(off):
        grid = f.x
        a = np.abs(xs[off])
        vals[off] = np.interp(a, grid, f.values.real) + 1j * np.interp(a, grid, f.values.imag)
    vals = np.where(xs < 0, -vals, vals)
    return complex(vals[0]) if scalar else vals


def _extended(f: GridFunction) -> np.ndarray:
    """f_odd on the 2M nodes i pi / M, i = 0..2M-1 (index M is x = pi)."""
    v = f.values
    return np.concatenate([v, -v[-2:0:-1]])


def revival_superposition(f: GridFunction, t: RationalTime, mean_potential: complex = 0.0) -> GridFunction:
    """The Gauss-sum revival field at every grid node.

    When q divides 2M every shift 2 pi k / q is a whole number of cells and the
    result uses node values only; otherwise shifted copies are interpolated.
    """
    coeffs = shift_coefficients(t)
    M, q = f.M, t.q
    if (2 * M) % q == 0:
        ext = _extended(f)
        idx = np.arange(M + 1)
        step = 2 * M // q
        total = np.zeros(M + 1, dtype=complex)
        for k, a in enumerate(coeffs):
            if a != 0:
                total += a * ext[(idx - k * step) % (2 * M)]
    else:
        x = f.x
        total = np.zeros(M + 1, dtype=complex)
        for k, a in enumerate(coeffs):
            if a != 0:
                total += a * odd_periodic_extension(f, x - 2.0 * np.pi * k / q)
    phase = np.exp(-2j * np.pi * complex(mean_potential) * t.p / t.q)
    return GridFunction(phase * total)
