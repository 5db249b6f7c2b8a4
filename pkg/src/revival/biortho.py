"""Bi-orthogonal eigenfunction systems for L = -d^2/dx^2 + V and its adjoint.

Eigenfunctions of L come from one shooting sweep on V, those of the adjoint
from an independent sweep on conj(V).  Both are scaled so that their inner
product with the sine mode d_j is one; the L-side functions then carry the
factor gamma_j that makes <phi_j, phi*_j> = 1.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .grid import GridFunction, GridMismatchError, nodes, simpson_weights
from .potential import Potential
from .spectral import EigenPair, eigen_sweep


class DegeneracyError(RuntimeError):
    """<y_j, y*_j> vanishes, so the pair cannot be bi-orthogonalised."""


@dataclass(frozen=True, eq=False)
class BiorthogonalSystem:
    phi: np.ndarray  # (N, M+1)
    phi_star: np.ndarray  # (N, M+1)
    gamma: np.ndarray  # (N,)
    indices: np.ndarray  # (N,)
    gram_defect: float

    @property
    def N(self) -> int:
        return self.indices.size

    @property
    def M(self) -> int:
        return self.phi.shape[1] - 1

    @property
    def pairs(self):
        """(phi_j, phi*_j, gamma_j, j) tuples."""
        return [
            (GridFunction(a), GridFunction(b), complex(g), int(j))
            for a, b, g, j in zip(self.phi, self.phi_star, self.gamma, self.indices)
        ]

    def gram(self) -> np.ndarray:
        """G[j, k] = <phi_j, phi*_k>."""
        w = simpson_weights(self.M)
        return (self.phi * w) @ np.conj(self.phi_star).T

    def reconstruct(self, coeffs) -> GridFunction:
        coeffs = np.asarray(coeffs, dtype=complex)
        return GridFunction(coeffs @ self.phi)


def _sine_rows(indices, M):
    return np.sqrt(2.0 / np.pi) * np.sin(np.multiply.outer(indices, nodes(M)))


def assemble(pairs: list[EigenPair], adjoint_pairs: list[EigenPair]) -> BiorthogonalSystem:
    """Pair eigenfunctions of L and L* by index and normalise them."""
    if [p.index for p in pairs] != [p.index for p in adjoint_pairs]:
        raise ValueError("eigenpairs of L and L* must carry the same indices")
    indices = np.array([p.index for p in pairs])
    Y = np.array([p.eigenfunction.values for p in pairs])
    Ys = np.array([p.eigenfunction.values for p in adjoint_pairs])
    if Y.shape != Ys.shape:
        raise GridMismatchError("L and L* eigenfunctions live on different grids")
    M = Y.shape[1] - 1
    w = simpson_weights(M)
    D = _sine_rows(indices, M)

    # <y, d_j> for each row; d_j is real
    Y = Y / np.sum(Y * w * D, axis=1)[:, None]
    Ys = Ys / np.sum(Ys * w * D, axis=1)[:, None]

    cross = np.sum(Y * w * np.conj(Ys), axis=1)
    scale = np.sqrt(np.sum(np.abs(Y) ** 2 * w, axis=1) * np.sum(np.abs(Ys) ** 2 * w, axis=1))
    bad = np.flatnonzero(np.abs(cross) < 1e-12 * scale)
    if bad.size:
        raise DegeneracyError(f"<y_j, y*_j> vanishes for j={int(indices[bad[0]])}")
    gamma = 1.0 / cross
    phi = Y * gamma[:, None]

    G = (phi * w) @ np.conj(Ys).T
    defect = float(np.max(np.abs(G - np.eye(len(indices)))))
    return BiorthogonalSystem(phi, Ys, gamma, indices, defect)


def solve(V: Potential, N: int, M: int = 4096, jobs: int = 1):
    """Eigenpairs of L and the bi-orthogonal system built from them."""
    pairs = eigen_sweep(V, N, M, jobs=jobs)
    return pairs, assemble(pairs, eigen_sweep(V.conj(), N, M, jobs=jobs))


def build_system(V: Potential, N: int, M: int = 4096, jobs: int = 1) -> BiorthogonalSystem:
    """Bi-orthogonal system from independent sweeps on V and conj(V)."""
    return solve(V, N, M, jobs)[1]


def expand(system: BiorthogonalSystem, f: GridFunction) -> np.ndarray:
    """c_j = <f, phi*_j> for j = 1..N."""
    if f.M != system.M:
        raise GridMismatchError(f"datum has {f.nodes} nodes, system has {system.M + 1}")
    w = simpson_weights(system.M)
    return np.conj(system.phi_star) @ (w * f.values)
