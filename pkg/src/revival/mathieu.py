"""Mathieu characteristic values b_j(q) and odd Mathieu functions se_j(x, q).

In the sine basis sin(kx), k = 1..K, the operator -d^2/dx^2 + 2q cos(2x) has
diagonal k^2, couples k to k +- 2 with weight q, and carries an extra -q on
the (1, 1) entry from sin(-x) = -sin(x).  Odd and even k decouple, giving two
tridiagonal blocks that are diagonalised independently.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg


class IndexCollisionError(RuntimeError):
    """Two eigenvalues compete for the same j^2."""


@dataclass(frozen=True, eq=False)
class MathieuSpectrum:
    qcoef: complex
    values: np.ndarray  # b_1..b_N
    truncation: int
    vectors: np.ndarray  # column j-1 holds the sine coefficients of se_j

    def __len__(self):
        return self.values.size


def default_truncation(N: int) -> int:
    return max(2 * N, 64)


def sine_matrix(q: complex, K: int) -> np.ndarray:
    """K x K matrix of -d^2/dx^2 + 2q cos(2x) acting on sine coefficients."""
    k = np.arange(1, K + 1)
    A = np.diag(k.astype(complex) ** 2)
    off = np.full(K - 2, complex(q))
    A += np.diag(off, 2) + np.diag(off, -2)
    A[0, 0] -= q
    return A


def _assign(vals: np.ndarray, targets: np.ndarray) -> np.ndarray:
    """For each target index j pick the eigenvalue nearest j^2."""
    chosen = np.empty(targets.size, dtype=int)
    for n, j in enumerate(targets):
        d = np.abs(vals - j * j)
        order = np.argsort(d)
        best = order[0]
        if d.size > 1 and np.isclose(d[order[1]], d[best], rtol=1e-12, atol=1e-14):
            raise IndexCollisionError(f"two eigenvalues are equidistant from {j * j}")
        chosen[n] = best
    if np.unique(chosen).size != chosen.size:
        raise IndexCollisionError("one eigenvalue is nearest to two different j^2")
    return chosen


def characteristic_values(q: complex, N: int, K: int | None = None) -> MathieuSpectrum:
    """b_j(q) for j = 1..N from the truncated sine-basis matrix."""
    K = default_truncation(N) if K is None else K
    if K < max(2 * N, 32):
        raise ValueError(f"truncation K={K} is too small for N={N}")
    A = sine_matrix(q, K)
    values = np.empty(N, dtype=complex)
    vectors = np.zeros((K, N), dtype=complex)
    for parity in (1, 2):
        idx = np.arange(parity - 1, K, 2)  # zero-based rows for k = parity, parity + 2, ...
        w, v = scipy.linalg.eig(A[np.ix_(idx, idx)])
        targets = np.arange(parity, N + 1, 2)
        if targets.size == 0:
            continue
        pick = _assign(w, targets)
        values[targets - 1] = w[pick]
        vectors[np.ix_(idx, targets - 1)] = v[:, pick]
    return MathieuSpectrum(complex(q), values, K, vectors)


def _normalise(v: np.ndarray) -> np.ndarray:
    # unit L2 norm of sum v_k sin(kx) on (0, pi), first significant coefficient real > 0
    v = v / np.sqrt(0.5 * np.pi * np.sum(np.abs(v) ** 2))
    first = np.flatnonzero(np.abs(v) > 1e-12 * np.max(np.abs(v)))[0]
    return v * (np.abs(v[first]) / v[first])


def se_coefficients(q: complex, j: int, K: int | None = None) -> np.ndarray:
    spec = characteristic_values(q, j, K if K is not None else default_truncation(j))
    return _normalise(spec.vectors[:, j - 1])


def se_function(q: complex, j: int, x, K: int | None = None):
    """se_j(x, q) with unit L2 norm on (0, pi)."""
    coeffs = se_coefficients(q, j, K)
    xs = np.asarray(x, dtype=float)
    k = np.arange(1, coeffs.size + 1)
    out = np.sin(np.multiply.outer(xs, k)) @ coeffs
    return complex(out) if xs.ndim == 0 else out


def perturbation_residual(q: float, j: int, K: int | None = None) -> float:
    """|b_j(q) - j^2 - q^2 / (2 (j^2 - 1))| for j >= 2."""
    if j < 2:
        raise ValueError("the second-order series is singular at j = 1")
    b = characteristic_values(q, j, K).values[j - 1]
    return float(abs(b - j * j - q * q / (2.0 * (j * j - 1))))
