"""Time evolution by eigenfunction expansion and the revival decomposition.

``evolve`` sums c_j exp(-i lam_j t) phi_j over the bi-orthogonal system;
``free_evolution`` is the V = 0 sine series with integer-square phases.
At a rational time the solution splits into the Gauss-sum revival field and
a correction ``w`` defined as the plain difference.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np
import scipy.fft

from .biortho import BiorthogonalSystem, expand
from .grid import GridFunction, GridMismatchError, simpson_weights
from .potential import Potential
from .revivals import RationalTime, revival_superposition
from .spectral import EigenPair

GROWTH_LIMIT = 50.0


class GrowthOverflowError(OverflowError):
    """exp(-i lam_j t) would grow beyond exp(50) for some mode."""


def _check_pairs(system: BiorthogonalSystem, pairs: list[EigenPair]) -> np.ndarray:
    if [p.index for p in pairs] != list(system.indices):
        raise ValueError("eigenpairs and bi-orthogonal system carry different indices")
    if pairs and pairs[0].eigenfunction.M != system.M:
        raise GridMismatchError("eigenpairs and bi-orthogonal system use different grids")
    return np.array([p.lam for p in pairs], dtype=complex)


def evolve(system: BiorthogonalSystem, pairs: list[EigenPair], f: GridFunction, t: float) -> GridFunction:
    """u(., t) = sum_j <f, phi*_j> exp(-i lam_j t) phi_j."""
    t = float(t)
    if t < 0:
        raise ValueError("evolution runs forward in time only")
    lam = _check_pairs(system, pairs)
    growth = t * lam.imag
    if np.any(growth > GROWTH_LIMIT):
        j = int(system.indices[np.argmax(growth)])
        raise GrowthOverflowError(f"mode j={j} grows like exp({growth.max():.3g}) by t={t:.6g}")
    c = expand(system, f)
    return GridFunction((c * np.exp(-1j * lam * t)) @ system.phi)


SNAP_DENOMINATOR = 1000


def as_rational_time(t: float) -> RationalTime | None:
    """The RationalTime whose float value is within 4 ulps of t, if q <= 1000."""
    if t <= 0:
        return None
    frac = Fraction(t / (2.0 * math.pi)).limit_denominator(SNAP_DENOMINATOR)
    if frac.numerator == 0:
        return None
    r = RationalTime(frac.numerator, frac.denominator)
    return r if abs(r.value - t) <= 4 * math.ulp(t) else None


def _phases(N: int, t) -> np.ndarray:
    j = np.arange(1, N + 1)
    if not isinstance(t, RationalTime):
        # a float that is 2 pi p/q up to rounding gets exact phases; j^2 would
        # otherwise amplify the rounding of 2 pi past 1e-12 for j in the hundreds
        t = as_rational_time(float(t)) or t
    if isinstance(t, RationalTime):
        r = (j * j * t.p) % t.q
        return np.exp(-2j * np.pi * r / t.q)
    t = float(t)
    if t < 0:
        raise ValueError("evolution runs forward in time only")
    return np.exp(-1j * np.mod(j.astype(float) ** 2 * t, 2.0 * np.pi))


def sine_coefficients(f: GridFunction, N: int) -> np.ndarray:
    """<f, d_j> for j = 1..N by Simpson quadrature (a DST-I of the weighted samples)."""
    M = f.M
    if N > M - 1:
        raise ValueError(f"{N} modes cannot be resolved on a grid of {M} cells")
    g = simpson_weights(M) * f.values
    coeffs = scipy.fft.dst(g[1:-1], type=1) * (0.5 * np.sqrt(2.0 / np.pi))
    return coeffs[:N]


def sine_synthesis(coeffs, M: int) -> GridFunction:
    """sum_j coeffs[j-1] d_j at the grid nodes."""
    coeffs = np.asarray(coeffs, dtype=complex)
    if coeffs.size > M - 1:
        raise ValueError(f"{coeffs.size} modes cannot be resolved on a grid of {M} cells")
    padded = np.zeros(M - 1, dtype=complex)
    padded[: coeffs.size] = coeffs
    inner = scipy.fft.dst(padded, type=1) * (0.5 * np.sqrt(2.0 / np.pi))
    return GridFunction(np.concatenate([[0j], inner, [0j]]))


def truncate(f: GridFunction, N: int) -> GridFunction:
    """The N-mode sine truncation f_N."""
    return sine_synthesis(sine_coefficients(f, N), f.M)


def free_evolution(f: GridFunction, t, N: int) -> GridFunction:
    """N-mode free Dirichlet evolution; ``t`` may be a float or a RationalTime."""
    return sine_synthesis(sine_coefficients(f, N) * _phases(N, t), f.M)


@dataclass(frozen=True, eq=False)
class RevivalDecomposition:
    time: RationalTime
    solution: GridFunction
    revival_part: GridFunction
    correction: GridFunction
    modes: int
    initial: GridFunction
    free_part: GridFunction | None = None

    @property
    def x(self) -> np.ndarray:
        return self.solution.x


def decompose_at_rational_time(
    V: Potential,
    system: BiorthogonalSystem,
    pairs: list[EigenPair],
    f: GridFunction,
    t: RationalTime,
) -> RevivalDecomposition:
    """Split u(., 2 pi p/q) into the revival field and the correction w."""
    u = evolve(system, pairs, f, t.value)
    revival = revival_superposition(f, t, V.mean)
    N = system.N
    free = free_evolution(f, t, N) * np.exp(-2j * np.pi * V.mean * t.p / t.q)
    return RevivalDecomposition(
        time=t,
        solution=u,
        revival_part=revival,
        correction=u - revival,
        modes=N,
        initial=f,
        free_part=free,
    )
