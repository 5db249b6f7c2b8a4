"""Pure numpy fallback for the RK4 shooting kernel.

For a linear system one RK4 step is multiplication by a fixed 2x2 matrix, and
its lam-derivative is a second 2x2 matrix.  All step matrices are built at
once, folded per output interval, then combined with a log-depth prefix scan.
The arithmetic is the same RK4 scheme as the compiled kernel, only the
association order of the products differs.
"""

import numpy as np

_C = np.array([[0.0, 0.0], [-1.0, 0.0]], dtype=complex)  # d/dlam of [[0, 1], [V - lam, 0]]


def _system(a):
    m = np.zeros(a.shape + (2, 2), dtype=complex)
    m[..., 0, 1] = 1.0
    m[..., 1, 0] = a
    return m


def _step_matrices(vfine, lam, h):
    a0 = vfine[0:-1:2] - lam
    a1 = vfine[1::2] - lam
    a2 = vfine[2::2] - lam
    A0, A1, A2 = _system(a0), _system(a1), _system(a2)
    eye = np.eye(2, dtype=complex)

    K1, dK1 = A0, np.broadcast_to(_C, A0.shape)
    S = eye + 0.5 * h * K1
    K2 = A1 @ S
    dK2 = _C @ S + A1 @ (0.5 * h * dK1)
    S = eye + 0.5 * h * K2
    K3 = A1 @ S
    dK3 = _C @ S + A1 @ (0.5 * h * dK2)
    S = eye + h * K3
    K4 = A2 @ S
    dK4 = _C @ S + A2 @ (h * dK3)

    P = eye + (h / 6.0) * (K1 + 2.0 * K2 + 2.0 * K3 + K4)
    Q = (h / 6.0) * (dK1 + 2.0 * dK2 + 2.0 * dK3 + dK4)
    return P, Q


def _compose(P2, Q2, P1, Q1):
    """(P2, Q2) after (P1, Q1) for block lower-triangular [[P, 0], [Q, P]]."""
    return P2 @ P1, Q2 @ P1 + P2 @ Q1


def integrate(vfine, lam, h, slope, dslope, stride, out=None):
    """Same contract as the compiled ``revival._rk4.integrate``."""
    vfine = np.asarray(vfine, dtype=complex)
    n = (vfine.shape[0] - 1) // 2
    if n % stride:
        raise ValueError("stride must divide the number of steps")
    P, Q = _step_matrices(vfine, complex(lam), float(h))

    nout = n // stride
    P = P.reshape(nout, stride, 2, 2)
    Q = Q.reshape(nout, stride, 2, 2)
    TP, TQ = P[:, 0], Q[:, 0]
    for s in range(1, stride):
        TP, TQ = _compose(P[:, s], Q[:, s], TP, TQ)

    # inclusive prefix scan: after it, (TP[i], TQ[i]) maps x=0 to node i+1
    shift = 1
    while shift < nout:
        head_P, head_Q = _compose(TP[shift:], TQ[shift:], TP[:-shift], TQ[:-shift])
        TP = np.concatenate([TP[:shift], head_P])
        TQ = np.concatenate([TQ[:shift], head_Q])
        shift *= 2

    s0 = np.array([0.0, slope], dtype=complex)
    d0 = np.array([0.0, dslope], dtype=complex)
    states = TP @ s0
    dstates = TQ @ s0 + TP @ d0
    if out is not None:
        if out.shape[0] != nout + 1:
            raise ValueError("output buffer has the wrong length")
        out[0] = 0.0
        out[1:] = states[:, 0]

    y, p = states[-1]
    z, r = dstates[-1]
    overflow = not (np.all(np.isfinite(states)) and abs(y) < 1e200 and abs(z) < 1e200)
    return complex(y), complex(p), complex(z), complex(r), bool(overflow)
