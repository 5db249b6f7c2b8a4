"""Dirichlet eigenpairs of -d^2/dx^2 + V on (0, pi) by shooting and Newton.

Each eigenvalue is located individually: the initial value problem
y(0) = 0, y'(0) = sqrt(lam) is integrated with classical RK4 and the endpoint
y(pi; lam) is driven to zero by Newton's method.  The Newton derivative comes
from the variational equation integrated alongside, so every iteration is a
single pass over the mesh.  Indexing is anchored at j^2: the potential is
mean-centred before shooting and the Newton seed for index j is j^2.
"""

from __future__ import annotations

import math
import warnings
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import kernels
from .grid import GridFunction, nodes
from .potential import Potential

TOL_EIG = 1e-10
RK_TOL = 1e-10
MAX_NEWTON = 50
HYPOTHESIS_BOUND = 1.5


class SpectralError(RuntimeError):
    """Base class for eigenvalue solver failures; ``index`` is the mode number."""

    def __init__(self, message: str, index: int | None = None, last: complex | None = None):
        if index is not None:
            message = f"j={index}: {message}"
        super().__init__(message)
        self.index = index
        self.last = last


class ShootingOverflowError(SpectralError):
    pass


class ConvergenceError(SpectralError):
    pass


class MisindexingError(SpectralError):
    pass


class HypothesisWarning(UserWarning):
    """The potential is outside the ||V||_inf < 3/2 regime where eigenvalues are
    guaranteed simple and near j^2."""


@dataclass(frozen=True, eq=False)
class EigenPair:
    index: int
    omega: complex
    lam: complex
    deviation: complex
    eigenfunction: GridFunction
    residual: float
    iterations: int = 0

    @property
    def centered_lam(self) -> complex:
        """lam - <V>, recovered from the deviation."""
        j = self.index
        return j * j + self.deviation / (j * j)


def substeps_per_cell(lam: complex, V: Potential, M: int, rk_tol: float = RK_TOL) -> int:
    """RK4 steps per output cell so the eigenvalue error stays near ``rk_tol``.

    For y'' = -w^2 y, RK4 with step h lags in phase by about (hw)^5/120 per
    step, which moves the computed eigenvalue by about w^2 (hw)^4 / 60.
    """
    w = math.sqrt(abs(lam) + V.sup_norm + 1.0)
    theta = min((60.0 * rk_tol / (w * w)) ** 0.25, 0.05)
    steps = math.ceil(math.pi * w / theta)
    return max(1, math.ceil(steps / M))


def _fine_potential(V: Potential, M: int, s: int) -> np.ndarray:
    return np.ascontiguousarray(V._raw(np.linspace(0.0, np.pi, 2 * M * s + 1)), dtype=complex)


def _slopes(lam: complex) -> tuple[complex, complex]:
    w = complex(np.sqrt(complex(lam)))
    if abs(w) < 1e-12:
        return 1.0 + 0j, 0j
    return w, 0.5 / w


def _integrate(vfine, lam, M, s, store=False):
    slope, dslope = _slopes(lam)
    out = np.empty(M + 1, dtype=complex) if store else None
    y, _, z, _, overflow = kernels.integrate(vfine, complex(lam), np.pi / (M * s), slope, dslope, s, out)
    if overflow:
        raise ShootingOverflowError(
            f"shooting overflowed at lam={lam:.6g}; increase M or rescale the shooting"
        )
    return y, z, out


def shoot(V: Potential, lam: complex, M: int = 4096, substeps: int | None = None):
    """Integrate -y'' + V y = lam y, y(0) = 0, y'(0) = sqrt(lam).

    Returns the trajectory on the M + 1 grid nodes and the endpoint y(pi).
    """
    if M < 64:
        raise ValueError("shooting needs M >= 64")
    s = substeps or substeps_per_cell(lam, V, M)
    _, _, traj = _integrate(_fine_potential(V, M, s), lam, M, s, store=True)
    return GridFunction(traj), complex(traj[-1])


def find_eigenvalue(
    V: Potential,
    j: int,
    M: int = 4096,
    tol: float = TOL_EIG,
    maxiter: int = MAX_NEWTON,
    rk_tol: float = RK_TOL,
) -> EigenPair:
    """The j-th Dirichlet eigenpair of -d^2/dx^2 + V."""
    if j < 1:
        raise ValueError("eigen-indices start at 1")
    if M < 64:
        raise ValueError("shooting needs M >= 64")
    Vc = V.centered()
    mean = V.mean
    lam = complex(j * j)
    s = substeps_per_cell(lam, Vc, M, rk_tol)
    vfine = _fine_potential(Vc, M, s)

    for it in range(1, maxiter + 1):
        F, dF, _ = _integrate(vfine, lam, M, s)
        if not np.isfinite(lam) or dF == 0:
            raise ConvergenceError("Newton derivative vanished", index=j, last=lam)
        if abs(F) < tol:
            break
        lam = lam - F / dF
    else:
        raise ConvergenceError(
            f"no convergence in {maxiter} Newton steps (|F|={abs(F):.3g})", index=j, last=lam
        )

    # one polishing step, kept only if it does not spoil the residual
    polished = lam - F / dF
    _, _, traj = _integrate(vfine, polished, M, s, store=True)
    if abs(traj[-1]) <= abs(F):
        lam = polished
    else:
        _, _, traj = _integrate(vfine, lam, M, s, store=True)

    candidates = [(j - 1) ** 2] if j > 1 else []
    candidates.append((j + 1) ** 2)
    if any(abs(lam - c) < abs(lam - j * j) for c in candidates):
        raise MisindexingError(
            f"converged to {lam:.6g}, closer to a neighbouring square than to {j * j}",
            index=j,
            last=lam,
        )

    full = lam + mean
    omega = complex(np.sqrt(full))
    slope, _ = _slopes(lam)
    eigenfunction = GridFunction(traj * (omega / slope))
    return EigenPair(
        index=j,
        omega=omega,
        lam=full,
        deviation=(lam - j * j) * j * j,
        eigenfunction=eigenfunction,
        residual=float(abs(traj[-1])),
        iterations=it,
    )


def eigen_sweep(V: Potential, N: int, M: int = 4096, jobs: int = 1, **kwargs) -> list[EigenPair]:
    """Eigenpairs for j = 1..N, assembled in index order."""
    if N < 1:
        raise ValueError("need at least one mode")
    if V.sup_norm >= HYPOTHESIS_BOUND:
        warnings.warn(
            f"||V||_inf = {V.sup_norm:.3g} >= 3/2: eigenvalues are not guaranteed to be "
            "simple or to stay near j^2",
            HypothesisWarning,
            stacklevel=2,
        )

    def one(j):
        return find_eigenvalue(V, j, M, **kwargs)

    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            pairs = list(pool.map(one, range(1, N + 1)))
    else:
        pairs = [one(j) for j in range(1, N + 1)]

    lams = np.array([p.lam for p in pairs])
    gaps = np.abs(np.subtract.outer(lams, lams))
    np.fill_diagonal(gaps, np.inf)
    if N > 1 and gaps.min() < 1e-8:
        a, b = np.unravel_index(np.argmin(gaps), gaps.shape)
        raise SpectralError(f"eigenvalues {a + 1} and {b + 1} coincide", index=int(b) + 1)
    return pairs


def asymptotic_eigenfunction(V: Potential, j: int, M: int = 4096) -> GridFunction:
    """sin(jx) - cos(jx) V1(x) / (2j) with V1 the antiderivative of V - <V>."""
    if j < 1:
        raise ValueError("eigen-indices start at 1")
    x = nodes(M)
    v1 = V.V1(x) - V.mean * x
    return GridFunction(np.sin(j * x) - np.cos(j * x) * v1 / (2.0 * j))


def omega_minus_index(pair: EigenPair) -> complex:
    """w_j - j for the mean-centred eigenvalue, without cancellation."""
    lam = pair.centered_lam
    j = pair.index
    return (lam - j * j) / (np.sqrt(lam) + j)
